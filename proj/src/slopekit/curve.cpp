#include "slopekit/curve.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace slopekit::curve {

using field::FieldCtx;
using field::FieldCtxPtr;

uint64_t CurveSpec::q() const { return pow_u64_checked(p, u); }

CurveSpec make_curve(uint32_t p, uint32_t u, uint32_t s, std::vector<uint64_t> coeffs) {
    if (u < 1 || s < 1) fail(Errc::invalid_argument, "u and s must be at least 1");
    auto Fp = FieldCtx::prime_field(p);
    FieldCtxPtr Fq = s == 1 ? Fp : FieldCtx::extension(Fp, s);
    pow_u64_checked(p, u);   // q must be representable
    if (coeffs.size() < 2)
        fail(Errc::invalid_argument, "f must have degree at least 1");
    while (coeffs.size() > 2 && coeffs.back() == 0) coeffs.pop_back();
    uint32_t d = static_cast<uint32_t>(coeffs.size()) - 1;
    if (coeffs[d] == 0)
        fail(Errc::invalid_argument, "leading coefficient a_d must be nonzero");
    if (d % p == 0)
        fail(Errc::invalid_argument,
             "degree " + std::to_string(d) + " is divisible by the characteristic " +
                 std::to_string(p));
    for (uint64_t c : coeffs) Fq->check_code(c);
    return CurveSpec{p, u, s, std::move(Fq), std::move(coeffs)};
}

mpz_class genus(const CurveSpec& spec) {
    mpz_class q = pow_mpz(spec.p, spec.u);
    mpz_class num = (q - 1) * (spec.d() - 1);
    // (q-1)(d-1) is even: gcd(d, p) = 1 forces d odd when q is even
    return num / 2;
}

uint64_t genus_u64(const CurveSpec& spec) {
    mpz_class g = genus(spec);
    if (!g.fits_ulong_p())
        fail(Errc::invalid_argument, "genus too large: " + g.get_str());
    return g.get_ui();
}

std::vector<uint32_t> support(const CurveSpec& spec) {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < spec.a.size(); ++i)
        if (spec.a[i] != 0) out.push_back(i);
    return out;
}

uint64_t sigma(const CurveSpec& spec) {
    uint64_t best = 0;
    for (uint32_t i = 1; i < spec.a.size(); ++i)
        if (spec.a[i] != 0) best = std::max(best, digit_sum_p_u64(i, spec.p));
    return best;
}

// --- text form ---

namespace {

std::vector<uint32_t> parse_digit_list(const std::string& text, size_t base_pos) {
    std::vector<uint32_t> digits;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (piece.empty() || piece.size() > 9 ||
            piece.find_first_not_of("0123456789") != std::string::npos)
            fail(Errc::parse_error, "bad coefficient digit '" + piece + "' at position " +
                                        std::to_string(base_pos + pos));
        digits.push_back(static_cast<uint32_t>(std::stoul(piece)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return digits;
}

}  // namespace

CurveSpec parse_curve(const std::string& text) {
    uint64_t p = 0, u = 0, s = 0;
    std::string fstr;
    bool have_p = false, have_u = false, have_s = false, have_f = false;

    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        size_t end = text.find_first_of(" \t", i);
        if (end == std::string::npos) end = text.size();
        std::string tok = text.substr(i, end - i);
        size_t eq = tok.find('=');
        if (eq == std::string::npos)
            fail(Errc::parse_error, "expected key=value at position " + std::to_string(i) +
                                        ", got '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        auto parse_uint = [&](const std::string& v) -> uint64_t {
            if (v.empty() || v.size() > 18 ||
                v.find_first_not_of("0123456789") != std::string::npos)
                fail(Errc::parse_error, "bad integer '" + v + "' for key " + key +
                                            " at position " + std::to_string(i));
            return std::stoull(v);
        };
        if (key == "p" && !have_p) {
            p = parse_uint(val);
            have_p = true;
        } else if (key == "u" && !have_u) {
            u = parse_uint(val);
            have_u = true;
        } else if (key == "s" && !have_s) {
            s = parse_uint(val);
            have_s = true;
        } else if (key == "f" && !have_f) {
            fstr = val;
            have_f = true;
        } else {
            fail(Errc::parse_error, "unexpected or repeated key '" + key + "' at position " +
                                        std::to_string(i));
        }
        i = end;
    }
    if (!have_p || !have_u || !have_s || !have_f)
        fail(Errc::parse_error, "curve description needs p=, u=, s= and f=");
    if (p < 2 || p > field::kPrimeCap || u < 1 || u > 62 || s < 1 || s > 62)
        fail(Errc::parse_error, "parameters out of range");

    auto Fp = FieldCtx::prime_field(static_cast<uint32_t>(p));
    FieldCtxPtr Fq = s == 1 ? Fp : FieldCtx::extension(Fp, static_cast<uint32_t>(s));

    // terms are separated by '+'; each is [digits*]x^k, x^k, x, or digits
    std::vector<std::pair<uint32_t, uint64_t>> terms;   // (exponent, code)
    size_t pos = 0;
    size_t fbase = text.find("f=") + 2;
    while (pos <= fstr.size()) {
        size_t plus = fstr.find('+', pos);
        std::string term = fstr.substr(pos, plus == std::string::npos ? plus : plus - pos);
        size_t at = fbase + pos;
        if (term.empty())
            fail(Errc::parse_error, "empty term at position " + std::to_string(at));

        std::string coeff_part;
        uint32_t exponent = 0;
        size_t star = term.find('*');
        size_t xpos = term.find('x');
        if (xpos == std::string::npos) {
            coeff_part = term;   // constant term
        } else {
            if (star == std::string::npos && xpos != 0)
                fail(Errc::parse_error, "coefficient needs '*' before x in '" + term +
                                            "' at position " + std::to_string(at));
            if (star != std::string::npos && star > xpos)
                fail(Errc::parse_error, "malformed term '" + term + "' at position " +
                                            std::to_string(at));
            coeff_part = star == std::string::npos ? "1" : term.substr(0, star);
            std::string xpart = term.substr(star == std::string::npos ? xpos : star + 1);
            if (xpart == "x") {
                exponent = 1;
            } else if (xpart.rfind("x^", 0) == 0) {
                std::string e = xpart.substr(2);
                if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos)
                    fail(Errc::parse_error,
                         "bad exponent '" + e + "' at position " + std::to_string(at));
                unsigned long v = std::stoul(e);
                if (v > 1u << 20)
                    fail(Errc::parse_error, "exponent too large at position " + std::to_string(at));
                exponent = static_cast<uint32_t>(v);
            } else {
                fail(Errc::parse_error, "malformed term '" + term + "' at position " +
                                            std::to_string(at));
            }
        }
        auto digits = parse_digit_list(coeff_part, at);
        uint64_t code = Fq->from_p_digits(digits);
        for (const auto& [e, c] : terms)
            if (e == exponent)
                fail(Errc::parse_error, "exponent " + std::to_string(exponent) +
                                            " appears twice at position " + std::to_string(at));
        terms.emplace_back(exponent, code);
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }

    uint32_t dmax = 0;
    for (const auto& [e, c] : terms)
        if (c != 0) dmax = std::max(dmax, e);
    std::vector<uint64_t> coeffs(dmax + 1, 0);
    for (const auto& [e, c] : terms)
        if (e <= dmax) coeffs[e] = c;
    return make_curve(static_cast<uint32_t>(p), static_cast<uint32_t>(u),
                      static_cast<uint32_t>(s), std::move(coeffs));
}

std::string canonical_text(const CurveSpec& spec) {
    std::string out = "p=" + std::to_string(spec.p) + " u=" + std::to_string(spec.u) +
                      " s=" + std::to_string(spec.s) + " f=";
    bool first = true;
    for (uint32_t i = static_cast<uint32_t>(spec.a.size()); i-- > 0;) {
        if (spec.a[i] == 0) continue;
        if (!first) out += '+';
        first = false;
        out += field::Element{spec.Fq, spec.a[i]}.str();
        if (i > 0) out += "*x^" + std::to_string(i);
    }
    return out;
}

// --- point counting ---

namespace {

// f(x) by Horner; coefficient codes embed unchanged into the extension
// because a constant polynomial packs to the same integer.
inline uint64_t horner(const FieldCtx& F, const std::vector<uint64_t>& a, uint64_t x) {
    uint64_t acc = a.back();
    for (size_t i = a.size() - 1; i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

// The vanishing of Tr_{F/F_{p^g}} is F_p-linear, so precompute its matrix on
// the digit basis and row-reduce to g independent functionals.
struct TraceTest {
    uint32_t p = 0, m = 0;
    std::vector<std::vector<uint32_t>> rows;   // each of length m

    TraceTest(const FieldCtx& F, uint32_t g) : p(F.p()), m(F.abs_degree()) {
        std::vector<std::vector<uint32_t>> mat(m, std::vector<uint32_t>(m, 0));
        uint64_t ej = 1;   // code of the basis element with digit j set
        for (uint32_t j = 0; j < m; ++j) {
            auto dig = F.p_digits(F.trace_to_subfield(ej, g));
            for (uint32_t k = 0; k < m; ++k) mat[k][j] = dig[k];
            ej *= p;
        }
        // gaussian elimination over F_p
        uint32_t rank = 0;
        for (uint32_t col = 0; col < m && rank < m; ++col) {
            uint32_t piv = rank;
            while (piv < m && mat[piv][col] == 0) ++piv;
            if (piv == m) continue;
            std::swap(mat[rank], mat[piv]);
            uint64_t inv = 1;
            for (uint64_t t = 1; t < p; ++t)
                if (t * mat[rank][col] % p == 1) inv = t;
            for (uint32_t k = 0; k < m; ++k)
                mat[rank][k] = static_cast<uint32_t>(mat[rank][k] * inv % p);
            for (uint32_t r = 0; r < m; ++r) {
                if (r == rank || mat[r][col] == 0) continue;
                uint64_t c = mat[r][col];
                for (uint32_t k = 0; k < m; ++k)
                    mat[r][k] = static_cast<uint32_t>(
                        (mat[r][k] + (p - c % p) * mat[rank][k]) % p);
            }
            ++rank;
        }
        rows.assign(mat.begin(), mat.begin() + rank);
    }

    bool vanishes(uint64_t code) const {
        uint32_t dig[64];
        for (uint32_t j = 0; j < m; ++j) {
            dig[j] = static_cast<uint32_t>(code % p);
            code /= p;
        }
        for (const auto& row : rows) {
            uint64_t acc = 0;
            for (uint32_t j = 0; j < m; ++j)
                if (dig[j]) acc += static_cast<uint64_t>(row[j]) * dig[j];
            if (acc % p != 0) return false;
        }
        return true;
    }
};

FieldCtxPtr tower_extension(const CurveSpec& spec, uint32_t n) {
    return n == 1 ? spec.Fq : FieldCtx::extension(spec.Fq, n);
}

void check_weil(const CurveSpec& spec, uint32_t n, const mpz_class& Sn, const mpz_class& g) {
    // |S_n| <= 2g sqrt(Q^n), checked exactly as S_n^2 <= 4 g^2 Q^n
    mpz_class qn = pow_mpz(spec.p, static_cast<uint64_t>(spec.s) * n);
    if (Sn * Sn > 4 * g * g * qn)
        fail(Errc::inconsistency, "count at n=" + std::to_string(n) +
                                      " violates the Weil bound; S_n=" + Sn.get_str());
}

}  // namespace

mpz_class count_points_naive(const CurveSpec& spec, uint32_t n, uint64_t budget) {
    if (n < 1) fail(Errc::invalid_argument, "n must be at least 1");
    auto F = tower_extension(spec, n);
    uint64_t size = F->size();
    if (size > budget / size || size * size > budget)
        fail(Errc::budget_exceeded,
             "naive count over F_" + F->describe() + " needs " + std::to_string(size) + "^2 = " +
                 mpz_class(mpz_class(size) * size).get_str() + " pairs, budget is " +
                 std::to_string(budget));
    uint64_t q = spec.q();
    uint64_t affine = 0;
    for (uint64_t x = 0; x < size; ++x) {
        uint64_t fx = horner(*F, spec.a, x);
        for (uint64_t y = 0; y < size; ++y)
            if (F->sub(F->pow_u64(y, q), y) == fx) ++affine;
    }
    return mpz_class(affine) + 1;
}

mpz_class count_points_trace(const CurveSpec& spec, uint32_t n, uint64_t budget, int nthreads) {
    if (n < 1) fail(Errc::invalid_argument, "n must be at least 1");
    auto F = tower_extension(spec, n);
    uint64_t size = field::enumerate_size(*F, budget);
    uint32_t gn = static_cast<uint32_t>(std::gcd<uint64_t>(spec.u, uint64_t(spec.s) * n));
    TraceTest tt(*F, gn);

    auto count_range = [&](uint64_t lo, uint64_t hi) {
        uint64_t zeros = 0;
        for (uint64_t x = lo; x < hi; ++x)
            if (tt.vanishes(horner(*F, spec.a, x))) ++zeros;
        return zeros;
    };

    uint64_t zeros = 0;
    unsigned hw = std::thread::hardware_concurrency();
    unsigned want = nthreads > 0 ? static_cast<unsigned>(nthreads) : std::min(hw ? hw : 1u, 8u);
    if (want > 1 && size >= (uint64_t(1) << 16)) {
        std::vector<uint64_t> partial(want, 0);
        std::vector<std::thread> pool;
        uint64_t chunk = size / want + 1;
        for (unsigned t = 0; t < want; ++t)
            pool.emplace_back([&, t] {
                uint64_t lo = std::min<uint64_t>(t * chunk, size);
                uint64_t hi = std::min<uint64_t>(lo + chunk, size);
                partial[t] = count_range(lo, hi);
            });
        for (auto& th : pool) th.join();
        zeros = std::accumulate(partial.begin(), partial.end(), uint64_t(0));
    } else {
        zeros = count_range(0, size);
    }
    return 1 + pow_mpz(spec.p, gn) * zeros;
}

CountSeries point_counts(const CurveSpec& spec, uint32_t n_max, uint64_t budget, int nthreads) {
    CountSeries cs;
    mpz_class g = genus(spec);
    for (uint32_t n = 1; n <= n_max; ++n) {
        mpz_class cnt = count_points_trace(spec, n, budget, nthreads);
        mpz_class Sn = cnt - pow_mpz(spec.p, static_cast<uint64_t>(spec.s) * n) - 1;
        check_weil(spec, n, Sn, g);
        cs.counts.push_back(std::move(cnt));
        cs.S.push_back(std::move(Sn));
    }
    return cs;
}

newton::LPolynomial lpoly_from_counts(const CurveSpec& spec, const CountSeries& cs,
                                      bool verify_mode) {
    uint64_t g = genus_u64(spec);
    uint64_t need = verify_mode ? 2 * g : g;
    if (cs.S.size() < need)
        fail(Errc::invalid_argument, "need counts up to n=" + std::to_string(need));

    std::vector<mpz_class> c(2 * g + 1, 0);
    c[0] = 1;
    for (uint64_t n = 1; n <= g; ++n) {
        mpz_class acc = 0;
        for (uint64_t j = 1; j <= n; ++j) acc += cs.S[j - 1] * c[n - j];
        if (!mpz_divisible_ui_p(acc.get_mpz_t(), n))
            fail(Errc::inconsistency,
                 "counts are inconsistent: coefficient recursion fails at n=" +
                     std::to_string(n));
        c[n] = acc / static_cast<long>(n);
    }
    for (uint64_t i = 0; i < g; ++i)
        c[2 * g - i] = pow_mpz(spec.p, static_cast<uint64_t>(spec.s) * (g - i)) * c[i];

    if (verify_mode) {
        // the recursion pinned c_1..c_g; now insist the completed polynomial
        // predicts the independently counted S_{g+1}..S_{2g}
        for (uint64_t n = g + 1; n <= 2 * g; ++n) {
            mpz_class acc = 0;
            for (uint64_t j = 1; j < n; ++j) acc += cs.S[j - 1] * c[n - j];
            mpz_class predicted = static_cast<long>(n) * c[n] - acc;
            if (predicted != cs.S[n - 1])
                fail(Errc::inconsistency,
                     "verification failed at n=" + std::to_string(n) + ": polynomial predicts S=" +
                         predicted.get_str() + ", counted " + cs.S[n - 1].get_str());
        }
    }
    return newton::make_lpoly(spec.p, spec.s, g, std::move(c));
}

newton::LPolynomial lpoly(const CurveSpec& spec, bool verify_mode, uint64_t budget,
                          int nthreads) {
    uint64_t g = genus_u64(spec);
    uint64_t n_max = verify_mode ? 2 * g : g;
    if (g == 0) return newton::make_lpoly(spec.p, spec.s, 0, {mpz_class(1)});
    // the largest enumeration dominates; check it up front for a clean error
    unsigned __int128 top = 1;
    for (uint64_t i = 0; i < static_cast<uint64_t>(spec.s) * n_max; ++i) {
        top *= spec.p;
        if (top > budget)
            fail(Errc::budget_exceeded,
                 "L-polynomial needs counts over Q^" + std::to_string(n_max) + " = p^" +
                     std::to_string(static_cast<uint64_t>(spec.s) * n_max) +
                     " elements, budget is " + std::to_string(budget));
    }
    CountSeries cs = point_counts(spec, static_cast<uint32_t>(n_max), budget, nthreads);
    return lpoly_from_counts(spec, cs, verify_mode);
}

}  // namespace slopekit::curve
