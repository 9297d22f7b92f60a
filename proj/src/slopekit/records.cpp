#include "slopekit/records.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "slopekit/bounds.hpp"
#include "slopekit/newton.hpp"
#include "slopekit/series.hpp"
#include "slopekit/tiling.hpp"
#include "slopekit/util.hpp"

namespace slopekit::records {

namespace {

using nlohmann::ordered_json;

constexpr uint64_t kListCap = 50;   // cap on enumerations embedded in JSON

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json coeff_strings(const newton::LPolynomial& L) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : L.c) arr.push_back(c.get_str());
    return arr;
}

ordered_json header(const curve::CurveSpec& spec) {
    ordered_json j;
    j["curve"] = curve::canonical_text(spec);
    j["p"] = spec.p;
    j["u"] = spec.u;
    j["s"] = spec.s;
    j["d"] = spec.d();
    j["genus"] = curve::genus(spec).get_str();
    return j;
}

ordered_json newton_block(const newton::NewtonPolygon& np) {
    ordered_json j;
    ordered_json verts = ordered_json::array();
    for (const auto& [x, y] : np.vertices)
        verts.push_back(ordered_json::array({std::to_string(x), y.get_str()}));
    j["vertices"] = verts;
    ordered_json sl = ordered_json::array();
    for (const auto& [value, mult] : np.slopes) {
        ordered_json e;
        e["value"] = value.get_str();
        e["multiplicity"] = mult;
        sl.push_back(e);
    }
    j["slopes"] = sl;
    return j;
}

// Shared body of lpoly/check records; with_family adds the classification
// and its slope prediction to the verdict set.
uint64_t effective_budget(uint64_t budget) {
    return budget == 0 ? field::kDefaultBudget : budget;
}

ordered_json run_record(const curve::CurveSpec& spec, bool verify, uint64_t budget,
                        int nthreads, bool with_family) {
    const newton::LPolynomial L =
        curve::lpoly(spec, verify, effective_budget(budget), nthreads);
    const newton::NewtonPolygon np = newton::newton_polygon(L);
    const uint64_t sig = curve::sigma(spec);
    const uint64_t tv = bounds::tau(spec.d(), spec.p);

    ordered_json j = header(spec);
    j["verify_mode"] = verify;
    j["L"] = coeff_strings(L);
    ordered_json sl = ordered_json::array();
    for (const auto& v : newton::slopes_expanded(np)) sl.push_back(v.get_str());
    j["newton_slopes"] = sl;
    const bool has_slopes = !np.slopes.empty();
    j["first_slope"] = has_slopes ? ordered_json(newton::first_slope(np).get_str())
                                  : ordered_json(nullptr);
    j["supersingular"] = newton::is_supersingular(L);
    j["sigma"] = sig;
    j["tau"] = tv;

    bool ok = true;
    ordered_json verdicts;
    if (has_slopes) {
        const mpq_class fs = newton::first_slope(np);
        const bool vs = fs >= mpq_class(1, static_cast<unsigned long>(sig));
        verdicts["first_slope_ge_inv_sigma"] = vs;
        ok = ok && vs;
        if (tv > 0) {
            const bool vt = fs >= mpq_class(1, static_cast<unsigned long>(tv));
            verdicts["first_slope_ge_inv_tau"] = vt;
            ok = ok && vt;
        }
    }
    const bool pr = newton::p_rank_zero(L);
    const bool cd = newton::coeff_divisibility_ok(L, sig);
    verdicts["p_rank_zero"] = pr;
    verdicts["coefficient_divisibility"] = cd;
    ok = ok && pr && cd;

    if (with_family) {
        const bounds::FamilyClass fam = bounds::classify_family(spec);
        ordered_json fj;
        switch (fam.kind) {
            case bounds::Family::supersingular: {
                fj["kind"] = "supersingular";
                fj["predicted_first_slope"] = "1/2";
                const bool match = newton::is_supersingular(L);
                verdicts["family_slope_match"] = match;
                ok = ok && match;
                break;
            }
            case bounds::Family::non_supersingular: {
                fj["kind"] = "non-supersingular";
                fj["h"] = fam.h;
                fj["i"] = fam.i;
                const mpq_class want(1, static_cast<unsigned long>(fam.h * (spec.p - 1)));
                fj["predicted_first_slope"] = want.get_str();
                const bool match = has_slopes && newton::first_slope(np) == want;
                verdicts["family_slope_match"] = match;
                ok = ok && match;
                break;
            }
            case bounds::Family::neither:
                fj["kind"] = "neither";
                break;
        }
        j["family"] = fj;
    }
    j["verdicts"] = verdicts;
    j["ok"] = ok;
    return j;
}

// ---- series verification grids ------------------------------------------

struct Grid {
    std::string name;
    uint64_t cases = 0;
    bool pass = true;
    std::string witness;

    explicit Grid(std::string n) : name(std::move(n)) {}

    void expect(bool cond, const std::string& where) {
        ++cases;
        if (!cond && pass) {
            pass = false;
            witness = where;
        }
    }
};

Grid grid_y() {
    Grid g{"y"};
    for (uint64_t q : {2, 3, 4, 9}) {
        const uint64_t R = 200;
        const series::TruncSeries y = series::solve_y(q, R);
        series::TruncSeries res = series::series_pow(y, q);
        for (uint64_t k = 0; k <= R; ++k) res.coeffs[k] -= y.coeffs[k];
        res.coeffs[1] -= 1;
        for (uint64_t k = 0; k <= R; ++k)
            g.expect(res.coeffs[k] == 0,
                     "q = " + std::to_string(q) + ", residual at order " + std::to_string(k));
    }
    return g;
}

Grid grid_D() {
    Grid g{"D"};
    struct Cfg {
        uint64_t q, p, u;
    };
    for (const Cfg cfg : {Cfg{2, 2, 1}, Cfg{3, 3, 1}, Cfg{4, 2, 2}}) {
        const uint64_t R = 40;
        const series::TruncSeries y = series::solve_y(cfg.q, R);
        series::TruncSeries yp = series::make_series(R);
        yp.coeffs[0] = 1;
        for (uint64_t a = 1; a <= 6; ++a) {
            yp = series::series_mul(yp, y);
            for (uint64_t k1 = 1; k1 <= R; ++k1) {
                const std::string at = "q = " + std::to_string(cfg.q) + ", a = " +
                                       std::to_string(a) + ", k1 = " + std::to_string(k1);
                const mpz_class D = series::D_coeff(a, k1, cfg.q);
                g.expect(D == yp.coeffs[k1], at + ": closed form vs series");
                if (D != 0) {
                    const auto res = series::ord_D_check(a, k1, cfg.q, cfg.p, cfg.u);
                    g.expect(res.ok, at + ": " + res.detail);
                }
            }
        }
    }
    return g;
}

Grid grid_E() {
    Grid g{"E"};
    const series::TruncSeries e1 = series::E_coeffs(0, 1, 2, 6);
    const long want1[] = {-1, -2, 2, -4, 10, -28, 84};
    for (uint64_t k = 0; k <= 6; ++k)
        g.expect(e1.coeffs[k] == want1[k], "E(0,1) q=2 at order " + std::to_string(k));
    const series::TruncSeries e2 = series::E_coeffs(0, 2, 2, 6);
    const long want2[] = {-1, -6, -6, 4, -6, 12, -28};
    for (uint64_t k = 0; k <= 6; ++k)
        g.expect(e2.coeffs[k] == want2[k], "E(0,2) q=2 at order " + std::to_string(k));

    for (uint64_t q : {2, 3, 4, 9}) {
        const uint64_t p = (q == 2 || q == 4) ? 2 : 3;
        for (uint64_t N : {1, 2}) {
            const uint64_t pn = pow_u64_checked(p, N);
            const mpz_class want = (pn - 1) % 2 == 0 ? 1 : -1;
            g.expect(series::E_coeffs(0, N, q, 2).coeffs[0] == want,
                     "constant term, q = " + std::to_string(q) + ", N = " + std::to_string(N));
        }
    }

    for (uint64_t q : {3, 4, 9}) {
        const auto p = static_cast<uint32_t>(q == 4 ? 2 : 3);
        for (uint64_t i = 0; i <= q - 1; ++i) {
            const series::TruncSeries e = series::E_coeffs(i, 1, q, 30);
            for (uint64_t k1 = 1; k1 <= 30; ++k1) {
                const std::string at = "q = " + std::to_string(q) + ", i = " + std::to_string(i) +
                                       ", k1 = " + std::to_string(k1);
                if (k1 % (q - 1) != i % (q - 1)) {
                    g.expect(e.coeffs[k1] == 0, at + ": expected vanishing");
                    continue;
                }
                if (e.coeffs[k1] == 0) continue;
                const auto o = static_cast<int64_t>(ord_p(e.coeffs[k1], p));
                const auto sk = static_cast<int64_t>(digit_sum_p_u64(k1, p));
                if (i == 0) {
                    g.expect(o * static_cast<int64_t>(p - 1) == sk, at + ": ord law at i = 0");
                } else {
                    const int64_t oi =
                        i % p == 0
                            ? static_cast<int64_t>(
                                  ord_p(mpz_class(static_cast<unsigned long>(i)), p))
                            : 0;
                    const auto si = static_cast<int64_t>(digit_sum_p_u64(i - 1, p));
                    g.expect((o - oi) * static_cast<int64_t>(p - 1) == sk - si - 1,
                             at + ": ord law");
                }
            }
        }
    }
    return g;
}

std::vector<mpz_class> seeded_lifts(uint64_t seed, uint64_t d, uint64_t span) {
    Rng rng(seed);
    std::vector<mpz_class> lifts(d);
    for (uint64_t l = 0; l + 1 < d; ++l)
        lifts[l] = static_cast<unsigned long>(rng.below(span));
    lifts[d - 1] = static_cast<unsigned long>(1 + rng.below(span - 1));
    return lifts;
}

Grid grid_C() {
    Grid g{"C"};
    for (uint64_t q : {2, 3}) {
        for (uint64_t N : {1, 2}) {
            const auto lifts = seeded_lifts(0x51deb00c + q * 16 + N, 4, 2 * q + 1);
            const uint64_t i = q == 2 ? 0 : 1;
            const auto C = series::C_coeffs_lifts(lifts, i, N, q, 60);
            for (uint64_t r = 0; r <= 60; ++r)
                g.expect(C[r] == series::C_combinatorial(lifts, i, N, q, r),
                         "q = " + std::to_string(q) + ", N = " + std::to_string(N) +
                             ", r = " + std::to_string(r));
        }
    }
    std::vector<mpz_class> unit(1, mpz_class(1));
    const auto Cx = series::C_coeffs_lifts(unit, 1, 1, 3, 60);
    const series::TruncSeries Ex = series::E_coeffs(1, 1, 3, 60);
    for (uint64_t r = 0; r <= 60; ++r)
        g.expect(Cx[r] == Ex.coeffs[r], "f = x collapse at r = " + std::to_string(r));
    return g;
}

Grid grid_rel() {
    Grid g{"rel"};
    for (uint64_t q : {2, 3}) {
        for (uint64_t N : {1, 2}) {
            for (uint64_t a : {1, 2}) {
                const auto lifts = seeded_lifts(0x7e1 + q * 64 + N * 8 + a, 3, 2 * q + 1);
                const uint64_t i = q == 2 ? 0 : 1;
                const auto res = series::rel_check(lifts, i, N, a, q, 40);
                g.expect(res.ok, "q = " + std::to_string(q) + ", N = " + std::to_string(N) +
                                     ", a = " + std::to_string(a) + ": " + res.detail);
            }
        }
    }
    return g;
}

Grid grid_cmod() {
    Grid g{"cmod"};
    for (uint64_t b : {1, 2}) {
        for (uint64_t N : {1, 2}) {
            for (long lift : {0L, 1L, 2L, 3L, 5L}) {
                const auto res = series::cmod_check(2, 1, 2, 1, 0, N, b, lift);
                g.expect(res.ok, "p = 2, b = " + std::to_string(b) + ", N = " +
                                     std::to_string(N) + ", lift = " + std::to_string(lift) +
                                     ": " + res.detail);
            }
        }
    }
    for (uint64_t j : {1, 2}) {
        for (uint64_t i : {0, 1}) {
            for (uint64_t N : {1, 2}) {
                for (long lift : {0L, 1L, 2L, 3L, 4L, 7L}) {
                    const auto res = series::cmod_check(3, 1, 1, j, i, N, 1, lift);
                    g.expect(res.ok, "p = 3, j = " + std::to_string(j) + ", i = " +
                                         std::to_string(i) + ", N = " + std::to_string(N) +
                                         ", lift = " + std::to_string(lift) + ": " + res.detail);
                }
            }
        }
    }
    return g;
}

ordered_json grid_json(const Grid& g) {
    ordered_json j;
    j["name"] = g.name;
    j["cases"] = g.cases;
    j["pass"] = g.pass;
    j["counterexample"] = g.pass ? ordered_json(nullptr) : ordered_json(g.witness);
    return j;
}

// ---- sweep plan -----------------------------------------------------------

struct FamilySpec {
    std::vector<uint32_t> p{2, 3, 5};
    std::vector<uint32_t> u{1, 2};
    std::vector<uint32_t> s{1, 2};
    uint32_t dmax = 9;
};

std::vector<uint32_t> parse_u32_list(const std::string& text, const std::string& key) {
    std::vector<uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const unsigned long v = std::stoul(item);
            if (v == 0 || v > 1000000) throw std::out_of_range("range");
            out.push_back(static_cast<uint32_t>(v));
        } catch (const std::exception&) {
            fail(Errc::parse_error, "bad value '" + item + "' for " + key);
        }
    }
    if (out.empty()) fail(Errc::parse_error, "empty list for " + key);
    return out;
}

FamilySpec parse_family(const std::string& family) {
    FamilySpec spec;
    std::stringstream ss(family);
    std::string clause;
    while (ss >> clause) {
        const auto eq = clause.find('=');
        if (eq == std::string::npos)
            fail(Errc::parse_error, "family clause '" + clause + "' is not key=values");
        const std::string key = clause.substr(0, eq);
        const std::string vals = clause.substr(eq + 1);
        if (key == "p") {
            spec.p = parse_u32_list(vals, key);
            for (uint32_t v : spec.p)
                if (!is_prime_u64(v)) fail(Errc::parse_error, std::to_string(v) + " is not prime");
        } else if (key == "u") {
            spec.u = parse_u32_list(vals, key);
        } else if (key == "s") {
            spec.s = parse_u32_list(vals, key);
        } else if (key == "dmax") {
            const auto lst = parse_u32_list(vals, key);
            if (lst.size() != 1 || lst[0] < 2)
                fail(Errc::parse_error, "dmax needs a single value >= 2");
            spec.dmax = lst[0];
        } else {
            fail(Errc::parse_error, "unknown family key '" + key + "'");
        }
    }
    return spec;
}

struct SweepConfig {
    uint32_t p, u, s, d;
};

// Configurations whose full count (n up to g over F_{Q^n}) fits the budget.
std::vector<SweepConfig> feasible_configs(const FamilySpec& fam, uint64_t budget) {
    std::vector<SweepConfig> out;
    const mpz_class cap(static_cast<unsigned long>(budget));
    for (uint32_t p : fam.p)
        for (uint32_t u : fam.u)
            for (uint32_t s : fam.s)
                for (uint32_t d = 2; d <= fam.dmax; ++d) {
                    if (d % p == 0) continue;
                    const mpz_class g_mpz =
                        (pow_mpz(p, u) - 1) * mpz_class(d - 1) / 2;
                    if (g_mpz < 1 || g_mpz > 64) continue;
                    const auto g = g_mpz.get_ui();
                    const mpz_class q_top = pow_mpz(p, static_cast<uint64_t>(s) * g);
                    if (q_top > cap) continue;
                    out.push_back({p, u, s, d});
                }
    return out;
}

}  // namespace

std::string lpoly_record(const curve::CurveSpec& spec, bool verify, uint64_t budget,
                         int nthreads) {
    return dump(run_record(spec, verify, budget, nthreads, false));
}

std::string check_record(const curve::CurveSpec& spec, bool verify, uint64_t budget,
                         int nthreads) {
    return dump(run_record(spec, verify, budget, nthreads, true));
}

std::string newton_record(const curve::CurveSpec& spec, uint64_t budget, int nthreads) {
    const newton::LPolynomial L =
        curve::lpoly(spec, false, effective_budget(budget), nthreads);
    const newton::NewtonPolygon np = newton::newton_polygon(L);
    ordered_json j = header(spec);
    j["L"] = coeff_strings(L);
    j["newton"] = newton_block(np);
    j["first_slope"] = np.slopes.empty() ? ordered_json(nullptr)
                                         : ordered_json(newton::first_slope(np).get_str());
    j["supersingular"] = newton::is_supersingular(L);
    j["ok"] = true;
    return dump(j);
}

std::string bounds_record(uint32_t p, uint32_t s, uint32_t u, uint64_t d, uint64_t n) {
    const bounds::BoundReport rep = bounds::improved_hw(p, s, u, d, n);
    ordered_json j;
    j["p"] = rep.p;
    j["s"] = rep.s;
    j["u"] = rep.u;
    j["d"] = rep.d;
    j["n"] = rep.n;
    j["genus"] = rep.genus.get_str();
    j["tau"] = rep.tau;
    j["divisibility_exponent"] = rep.divisibility_exponent;
    j["hw_classic"] = rep.hw_classic.get_str();
    j["hw_improved"] = rep.hw_improved.get_str();
    j["ok"] = true;
    return dump(j);
}

std::string examples_record() {
    const auto reports = bounds::bound_examples();
    ordered_json arr = ordered_json::array();
    bool ok = true;
    for (const auto& ex : reports) {
        ordered_json e;
        e["label"] = ex.label;
        e["p"] = ex.report.p;
        e["s"] = ex.report.s;
        e["u"] = ex.report.u;
        e["d"] = ex.report.d;
        e["n"] = ex.report.n;
        e["tau"] = ex.report.tau;
        ordered_json vals = ordered_json::array();
        for (const auto& v : ex.values) {
            ordered_json vj;
            vj["name"] = v.name;
            vj["computed"] = v.computed;
            vj["reference"] = v.reference;
            vj["pass"] = v.pass;
            vals.push_back(vj);
        }
        e["values"] = vals;
        e["status"] = ex.flagged ? "FLAG" : "PASS";
        arr.push_back(e);
        // The first two references are rederivable, so a mismatch there is a
        // failure; the third is reported as FLAG/PASS without judging.
        if (ex.label != "example-3") ok = ok && !ex.flagged;
    }
    ordered_json j;
    j["examples"] = arr;
    j["ok"] = ok;
    return dump(j);
}

std::string tiling_record(uint64_t r, const std::vector<uint32_t>& S, uint32_t p,
                          uint32_t d) {
    ordered_json j;
    j["r"] = r;
    j["S"] = S;
    j["p"] = p;
    const uint64_t st = tiling::tilde_s(r, S, p);
    bool ok = true;
    if (st == tiling::kInfinity) {
        j["tilde_s"] = nullptr;
        j["shortest_count"] = 0;
        j["shortest_tilings"] = ordered_json::array();
    } else {
        j["tilde_s"] = st;
        const auto seqs = tiling::shortest_tilings(r, S, p);
        j["shortest_count"] = seqs.size();
        ordered_json arr = ordered_json::array();
        for (uint64_t k = 0; k < std::min<uint64_t>(seqs.size(), kListCap); ++k) {
            ordered_json sj = ordered_json::array();
            for (const auto& t : seqs[k].triples)
                sj.push_back(ordered_json::array({t[0], t[1], t[2]}));
            arr.push_back(sj);
        }
        j["shortest_tilings"] = arr;
        j["shortest_truncated"] = seqs.size() > kListCap;
    }
    if (d > 0) {
        const auto bij = tiling::bijection_check(r, S, p, d);
        ordered_json bj;
        bj["ok"] = bij.ok;
        bj["detail"] = bij.detail;
        j["bijection"] = bj;
        ok = ok && bij.ok;
        if (st != tiling::kInfinity) {
            const auto parts = tiling::minimal_partitions(r, S, p, d);
            ordered_json pj = ordered_json::array();
            for (uint64_t k = 0; k < std::min<uint64_t>(parts.size(), kListCap); ++k)
                pj.push_back(parts[k].k);
            j["minimal_partitions"] = pj;
            j["minimal_truncated"] = parts.size() > kListCap;
        }
    }
    j["ok"] = ok;
    return dump(j);
}

std::string series_verify_record(const std::string& selector) {
    std::vector<Grid> grids;
    const auto want = [&](const char* name) { return selector == "all" || selector == name; };
    if (!(selector == "all" || selector == "y" || selector == "D" || selector == "E" ||
          selector == "C" || selector == "rel" || selector == "cmod"))
        fail(Errc::invalid_argument,
             "unknown series selector '" + selector + "' (want y|D|E|C|rel|cmod|all)");
    if (want("y")) grids.push_back(grid_y());
    if (want("D")) grids.push_back(grid_D());
    if (want("E")) grids.push_back(grid_E());
    if (want("C")) grids.push_back(grid_C());
    if (want("rel")) grids.push_back(grid_rel());
    if (want("cmod")) grids.push_back(grid_cmod());
    ordered_json arr = ordered_json::array();
    bool ok = true;
    for (const auto& g : grids) {
        arr.push_back(grid_json(g));
        ok = ok && g.pass;
    }
    ordered_json j;
    j["selector"] = selector;
    j["checks"] = arr;
    j["ok"] = ok;
    return dump(j);
}

std::string sweep_plan(const std::string& family, uint64_t seed, uint64_t count,
                       uint64_t budget) {
    if (count == 0 || count > 100000)
        fail(Errc::invalid_argument, "count must lie in 1..100000");
    const uint64_t effective = budget == 0 ? field::kDefaultBudget : budget;
    const FamilySpec fam = parse_family(family);
    const auto configs = feasible_configs(fam, effective);
    if (configs.empty())
        fail(Errc::budget_exceeded, "no feasible configurations under budget " +
                                        std::to_string(effective));
    Rng rng(seed);
    std::set<std::string> seen;
    std::vector<std::string> curves;
    const uint64_t attempts_cap = count * 64;
    for (uint64_t attempt = 0; attempt < attempts_cap && curves.size() < count; ++attempt) {
        const SweepConfig& cfg = configs[rng.below(configs.size())];
        const uint64_t Q = pow_u64_checked(cfg.p, cfg.s);
        std::vector<uint64_t> codes(cfg.d + 1);
        for (uint32_t l = 0; l < cfg.d; ++l) codes[l] = rng.below(Q);
        codes[cfg.d] = 1 + rng.below(Q - 1);
        const auto spec = curve::make_curve(cfg.p, cfg.u, cfg.s, std::move(codes));
        std::string text = curve::canonical_text(spec);
        if (seen.insert(text).second) curves.push_back(std::move(text));
    }
    if (curves.size() < count)
        fail(Errc::inconsistency, "could not draw " + std::to_string(count) +
                                      " distinct curves (got " +
                                      std::to_string(curves.size()) + ")");
    ordered_json j;
    ordered_json famj;
    famj["p"] = fam.p;
    famj["u"] = fam.u;
    famj["s"] = fam.s;
    famj["dmax"] = fam.dmax;
    j["family"] = famj;
    j["seed"] = seed;
    j["count"] = count;
    j["budget"] = effective;
    j["curves"] = curves;
    j["ok"] = true;
    return dump(j);
}

bool record_ok(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded()) return false;
    const auto it = j.find("ok");
    return it != j.end() && it->is_boolean() && it->get<bool>();
}

}  // namespace slopekit::records
