#include "slopekit/newton.hpp"

#include "slopekit/util.hpp"

namespace slopekit::newton {

LPolynomial make_lpoly(uint32_t p, uint32_t s, uint64_t g, std::vector<mpz_class> coeffs) {
    if (p < 2 || s < 1) fail(Errc::invalid_argument, "L-polynomial needs p >= 2, s >= 1");
    if (coeffs.size() != 2 * g + 1)
        fail(Errc::invalid_argument, "L-polynomial of genus " + std::to_string(g) +
                                         " needs " + std::to_string(2 * g + 1) +
                                         " coefficients, got " + std::to_string(coeffs.size()));
    if (coeffs[0] != 1) fail(Errc::invalid_argument, "L-polynomial constant term must be 1");
    mpz_class lead;
    mpz_ui_pow_ui(lead.get_mpz_t(), p, s * g);
    if (coeffs[2 * g] != lead)
        fail(Errc::invalid_argument, "L-polynomial leading coefficient must be Q^g");
    return LPolynomial{p, s, g, std::move(coeffs)};
}

NewtonPolygon newton_polygon(const LPolynomial& L) {
    // Integer points (i, ord_p(c_i)); zero coefficients sit at +infinity and
    // are simply omitted.  The normalization by s happens when the hull is
    // reported, which does not change which points are vertices.
    struct Pt {
        int64_t x, y;
    };
    std::vector<Pt> pts;
    for (uint64_t i = 0; i < L.c.size(); ++i)
        if (L.c[i] != 0)
            pts.push_back({static_cast<int64_t>(i),
                           static_cast<int64_t>(ord_p(L.c[i], L.p))});

    // Monotone scan for the lower hull; a middle point survives only if the
    // turn is strictly convex, so collinear points are dropped.
    std::vector<Pt> hull;
    for (const Pt& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // pop b unless slope(a,b) < slope(b,pt)
            __int128 lhs = static_cast<__int128>(b.y - a.y) * (pt.x - b.x);
            __int128 rhs = static_cast<__int128>(pt.y - b.y) * (b.x - a.x);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }

    NewtonPolygon np;
    for (const Pt& v : hull) {
        mpq_class ord(v.y, L.s);
        ord.canonicalize();
        np.vertices.emplace_back(static_cast<uint64_t>(v.x), ord);
    }
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        mpq_class sl(hull[k + 1].y - hull[k].y,
                     static_cast<int64_t>(L.s) * (hull[k + 1].x - hull[k].x));
        sl.canonicalize();
        np.slopes.emplace_back(sl, static_cast<uint64_t>(hull[k + 1].x - hull[k].x));
    }
    return np;
}

std::vector<mpq_class> slopes_expanded(const NewtonPolygon& np) {
    std::vector<mpq_class> out;
    for (const auto& [sl, mult] : np.slopes)
        for (uint64_t i = 0; i < mult; ++i) out.push_back(sl);
    return out;
}

mpq_class first_slope(const NewtonPolygon& np) {
    if (np.slopes.empty())
        fail(Errc::invalid_argument, "polygon has no segments (genus 0)");
    return np.slopes.front().first;
}

bool is_supersingular(const LPolynomial& L) {
    for (uint64_t i = 1; i < L.c.size(); ++i) {
        if (L.c[i] == 0) continue;
        if (2 * ord_p(L.c[i], L.p) < i * L.s) return false;
    }
    return true;
}

bool coeff_divisibility_ok(const LPolynomial& L, uint64_t sigma) {
    if (sigma == 0) fail(Errc::invalid_argument, "sigma must be positive");
    for (uint64_t i = 1; i < L.c.size(); ++i) {
        if (L.c[i] == 0) continue;
        if (ord_p(L.c[i], L.p) < ceil_div_u64(L.s * i, sigma)) return false;
    }
    return true;
}

bool p_rank_zero(const LPolynomial& L) {
    for (uint64_t i = 1; i < L.c.size(); ++i)
        if (mpz_fdiv_ui(L.c[i].get_mpz_t(), L.p) != 0) return false;
    return true;
}

}  // namespace slopekit::newton
