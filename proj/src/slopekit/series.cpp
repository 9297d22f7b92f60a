#include "slopekit/series.hpp"

#include <algorithm>
#include <utility>

namespace slopekit::series {

namespace {

using Coeffs = std::vector<mpz_class>;

void check_order(uint64_t R, uint64_t cap) {
    if (R < 1) fail(Errc::invalid_argument, "truncation order must be at least 1");
    if (R > cap)
        fail(Errc::budget_exceeded, "truncation order " + std::to_string(R) +
                                        " exceeds the budget " + std::to_string(cap));
}

void check_modulus(const mpz_class& mod) {
    if (mod < 0) fail(Errc::invalid_argument, "modulus must be nonnegative");
    if (mod == 1) fail(Errc::invalid_argument, "modulus 1 leaves no information");
}

void reduce_into(mpz_class& v, const mpz_class& mod) {
    if (mod != 0) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
}

// q = p^u with p prime and u >= 1.
std::pair<uint64_t, uint64_t> split_prime_power(uint64_t q) {
    if (q < 2) fail(Errc::invalid_argument, "q must be a prime power, got " + std::to_string(q));
    uint64_t p = q;
    for (uint64_t c = 2; c * c <= q && c <= 1000000; ++c) {
        if (q % c == 0) {
            p = c;
            break;
        }
    }
    if (p == q && !is_prime_u64(q))
        fail(Errc::invalid_argument, "q = " + std::to_string(q) + " is not a prime power");
    uint64_t u = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++u;
    }
    if (rest != 1)
        fail(Errc::invalid_argument, "q = " + std::to_string(q) + " is not a prime power");
    return {p, u};
}

// c += a * b truncated to `limit`; coefficients reduced when mod != 0.
Coeffs raw_mul(const Coeffs& a, const Coeffs& b, uint64_t limit, const mpz_class& mod) {
    Coeffs out(limit + 1, mpz_class(0));
    const uint64_t na = std::min<uint64_t>(limit, a.empty() ? 0 : a.size() - 1);
    for (uint64_t i = 0; i <= na; ++i) {
        if (a[i] == 0) continue;
        const uint64_t nb = std::min<uint64_t>(limit - i, b.empty() ? 0 : b.size() - 1);
        for (uint64_t j = 0; j <= nb; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    if (mod != 0)
        for (auto& v : out) reduce_into(v, mod);
    return out;
}

Coeffs raw_pow(const Coeffs& a, uint64_t e, uint64_t limit, const mpz_class& mod) {
    Coeffs result(limit + 1, mpz_class(0));
    result[0] = 1;
    reduce_into(result[0], mod);
    if (e == 0) return result;
    Coeffs base = a;
    base.resize(limit + 1, mpz_class(0));
    if (mod != 0)
        for (auto& v : base) reduce_into(v, mod);
    while (true) {
        if (e & 1) result = raw_mul(result, base, limit, mod);
        e >>= 1;
        if (e == 0) break;
        base = raw_mul(base, base, limit, mod);
    }
    return result;
}

void require_compatible(const TruncSeries& a, const TruncSeries& b) {
    if (a.coeffs.size() != b.coeffs.size() || a.modulus != b.modulus)
        fail(Errc::invalid_argument, "series operands disagree in order or modulus");
}

int64_t digit_sum_before(uint64_t i, uint32_t p) {
    // s_p(i - 1) with the boundary convention s_p(-1) = -1.
    return i == 0 ? -1 : static_cast<int64_t>(digit_sum_p_u64(i - 1, p));
}

// Smallest integer >= num / den for den > 0.
int64_t ceil_div_i64(int64_t num, int64_t den) {
    int64_t d = num / den;
    if (num % den != 0 && (num > 0) == (den > 0)) ++d;
    return d;
}

}  // namespace

const mpz_class& TruncSeries::at(uint64_t k) const {
    if (k >= coeffs.size())
        fail(Errc::invalid_argument, "coefficient index " + std::to_string(k) +
                                         " past truncation order " + std::to_string(order()));
    return coeffs[k];
}

TruncSeries make_series(uint64_t R, const mpz_class& modulus) {
    check_order(R, kMaxOrder);
    check_modulus(modulus);
    TruncSeries s;
    s.coeffs.assign(R + 1, mpz_class(0));
    s.modulus = modulus;
    return s;
}

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b) {
    require_compatible(a, b);
    TruncSeries out = a;
    for (size_t k = 0; k < out.coeffs.size(); ++k) {
        out.coeffs[k] += b.coeffs[k];
        reduce_into(out.coeffs[k], out.modulus);
    }
    return out;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
    require_compatible(a, b);
    return TruncSeries{raw_mul(a.coeffs, b.coeffs, a.order(), a.modulus), a.modulus};
}

TruncSeries series_pow(const TruncSeries& a, uint64_t e) {
    return TruncSeries{raw_pow(a.coeffs, e, a.order(), a.modulus), a.modulus};
}

TruncSeries series_compose(const TruncSeries& outer, const TruncSeries& inner) {
    require_compatible(outer, inner);
    if (inner.coeffs[0] != 0)
        fail(Errc::invalid_argument, "composition needs a zero constant term");
    const uint64_t R = outer.order();
    Coeffs res(R + 1, mpz_class(0));
    for (uint64_t k = R + 1; k-- > 0;) {
        res = raw_mul(res, inner.coeffs, R, outer.modulus);
        res[0] += outer.coeffs[k];
        reduce_into(res[0], outer.modulus);
    }
    return TruncSeries{std::move(res), outer.modulus};
}

TruncSeries solve_y(uint64_t q, uint64_t R, const mpz_class& modulus) {
    split_prime_power(q);
    check_order(R, kMaxOrder);
    check_modulus(modulus);
    Coeffs y(R + 1, mpz_class(0));
    y[1] = -1;
    reduce_into(y[1], modulus);
    // Work at a truncation that tracks the correct order: if y is right up to
    // z^m then y^q - z is right up to z^{m+q-1}, so early passes stay cheap.
    for (uint64_t m = q - 1; m < R;) {
        const uint64_t t = std::min<uint64_t>(R, m + (q - 1));
        Coeffs next = raw_pow(y, q, t, modulus);
        next.resize(R + 1, mpz_class(0));
        next[1] -= 1;
        reduce_into(next[1], modulus);
        y = std::move(next);
        m = t;
    }
    return TruncSeries{std::move(y), modulus};
}

mpz_class D_coeff(uint64_t a, uint64_t k1, uint64_t q) {
    split_prime_power(q);
    if (a < 1 || k1 < 1) fail(Errc::invalid_argument, "D_coeff needs a >= 1 and k1 >= 1");
    if (k1 > kMaxOrder)
        fail(Errc::budget_exceeded,
             "k1 = " + std::to_string(k1) + " exceeds the budget " + std::to_string(kMaxOrder));
    if (k1 < a || (k1 - a) % (q - 1) != 0) return 0;
    const uint64_t e = (k1 - a) / (q - 1);
    mpz_class num, f1, f2;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(k1 + e - 1));
    num *= a;
    mpz_fac_ui(f1.get_mpz_t(), static_cast<unsigned long>(k1));
    mpz_fac_ui(f2.get_mpz_t(), static_cast<unsigned long>(e));
    f1 *= f2;
    if (!mpz_divisible_p(num.get_mpz_t(), f1.get_mpz_t()))
        fail(Errc::inconsistency, "closed-form coefficient is not an integer at a = " +
                                      std::to_string(a) + ", k1 = " + std::to_string(k1));
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), f1.get_mpz_t());
    if (k1 % 2 == 1) out = -out;
    return out;
}

CheckResult ord_D_check(uint64_t a, uint64_t k1, uint64_t q, uint64_t p, uint64_t u) {
    if (u < 1 || pow_u64_checked(p, u) != q)
        fail(Errc::invalid_argument, "q, p, u are inconsistent: " + std::to_string(q) +
                                         " != " + std::to_string(p) + "^" + std::to_string(u));
    const mpz_class D = D_coeff(a, k1, q);
    if (D == 0) fail(Errc::invalid_argument, "the closed form vanishes; nothing to check");
    const uint64_t i = 1 + (a - 1) % (q - 1);
    const uint64_t l = (a - i) / (q - 1);
    const auto o = static_cast<int64_t>(ord_p(D, static_cast<uint32_t>(p)));
    const int64_t rhs = static_cast<int64_t>(digit_sum_p_u64(k1, static_cast<uint32_t>(p))) -
                        static_cast<int64_t>(digit_sum_p_u64(i - 1, static_cast<uint32_t>(p))) - 1;
    const auto pm1 = static_cast<int64_t>(p - 1);
    CheckResult res;
    if (l == 0) {
        // Equality branch; the ord_p(i) offset is invisible unless p | i,
        // which needs u >= 2 (for u = 1 every 1 <= i <= q-1 is prime to p).
        const auto oi = static_cast<int64_t>(
            i % p == 0 ? ord_p(mpz_class(static_cast<unsigned long>(i)), static_cast<uint32_t>(p))
                       : 0);
        if (pm1 * (o - oi) != rhs) {
            res.ok = false;
            res.detail = "ord mismatch at a = " + std::to_string(a) + ", k1 = " +
                         std::to_string(k1) + ": observed ord " + std::to_string(o) +
                         ", predicted ord_p(i) + (s_p(k1) - s_p(i-1) - 1)/(p-1) = " +
                         std::to_string(oi) + " + " + std::to_string(rhs) + "/" +
                         std::to_string(pm1);
        }
    } else {
        const auto slack = static_cast<int64_t>((l - 1) * u);
        if (pm1 * (o + slack) < rhs) {
            res.ok = false;
            res.detail = "ord too small at a = " + std::to_string(a) + ", k1 = " +
                         std::to_string(k1) + ": observed ord " + std::to_string(o) +
                         ", bound (s_p(k1) - s_p(i-1) - 1)/(p-1) - (l-1)u with l = " +
                         std::to_string(l);
        }
    }
    return res;
}

TruncSeries E_coeffs(uint64_t i, uint64_t N, uint64_t q, uint64_t R, const mpz_class& modulus) {
    const auto [p, u] = split_prime_power(q);
    (void)u;
    if (i > q - 1)
        fail(Errc::invalid_argument, "i must lie in 0..q-1, got " + std::to_string(i));
    if (N < 1) fail(Errc::invalid_argument, "N must be at least 1");
    check_order(R, kMaxOrder);
    check_modulus(modulus);
    const uint64_t pn = pow_u64_checked(p, N);
    const TruncSeries y = solve_y(q, R, modulus);
    Coeffs g = raw_pow(y.coeffs, q - 1, R, modulus);
    for (auto& v : g) {
        v *= static_cast<unsigned long>(q);
        reduce_into(v, modulus);
    }
    g[0] -= 1;
    reduce_into(g[0], modulus);
    const Coeffs b = raw_pow(g, pn - 1, R, modulus);
    const Coeffs yi = raw_pow(y.coeffs, i, R, modulus);
    return TruncSeries{raw_mul(yi, b, R, modulus), modulus};
}

std::vector<mpz_class> C_coeffs_lifts(const std::vector<mpz_class>& lifts, uint64_t i,
                                      uint64_t N, uint64_t q, uint64_t R,
                                      const mpz_class& modulus) {
    if (lifts.empty()) fail(Errc::invalid_argument, "need at least one coefficient lift");
    if (lifts.size() > kMaxCOrder)
        fail(Errc::invalid_argument, "degree " + std::to_string(lifts.size()) +
                                         " exceeds the budget " + std::to_string(kMaxCOrder));
    split_prime_power(q);
    if (i > q - 2)
        fail(Errc::invalid_argument, "i must lie in 0..q-2, got " + std::to_string(i));
    check_order(R, kMaxCOrder);
    const TruncSeries E = E_coeffs(i, N, q, R, modulus);
    Coeffs f = lifts;
    if (modulus != 0)
        for (auto& v : f) reduce_into(v, modulus);
    const uint64_t d = f.size();
    // Horner in the top coefficient: res <- res * f(x) + E_{k1}; f has zero
    // constant term, so the truncated composition is exact.
    Coeffs res(R + 1, mpz_class(0));
    for (uint64_t k1 = R + 1; k1-- > 0;) {
        Coeffs next(R + 1, mpz_class(0));
        for (uint64_t n = 1; n <= R; ++n) {
            const uint64_t lmax = std::min<uint64_t>(d, n);
            for (uint64_t l = 1; l <= lmax; ++l) {
                if (f[l - 1] == 0 || res[n - l] == 0) continue;
                mpz_addmul(next[n].get_mpz_t(), res[n - l].get_mpz_t(), f[l - 1].get_mpz_t());
            }
            reduce_into(next[n], modulus);
        }
        next[0] = E.coeffs[k1];
        res = std::move(next);
    }
    return res;
}

std::vector<mpz_class> C_coeffs(const curve::CurveSpec& spec, uint64_t i, uint64_t N,
                                uint64_t R) {
    if (spec.s != 1)
        fail(Errc::unsupported, "series checks need prime-field coefficients (s = 1), got s = " +
                                    std::to_string(spec.s));
    if (spec.a[0] != 0)
        fail(Errc::unsupported, "series checks need a zero constant term");
    std::vector<mpz_class> lifts;
    for (size_t l = 1; l < spec.a.size(); ++l)
        lifts.emplace_back(static_cast<unsigned long>(spec.a[l]));
    return C_coeffs_lifts(lifts, i, N, spec.q(), R);
}

mpz_class C_combinatorial(const std::vector<mpz_class>& lifts, uint64_t i, uint64_t N,
                          uint64_t q, uint64_t r) {
    if (lifts.empty()) fail(Errc::invalid_argument, "need at least one coefficient lift");
    split_prime_power(q);
    if (i > q - 2)
        fail(Errc::invalid_argument, "i must lie in 0..q-2, got " + std::to_string(i));
    if (r > kMaxCOrder)
        fail(Errc::budget_exceeded,
             "r = " + std::to_string(r) + " exceeds the budget " + std::to_string(kMaxCOrder));
    const auto d = static_cast<uint32_t>(lifts.size());
    const TruncSeries E = E_coeffs(i, N, q, std::max<uint64_t>(r, 1));
    if (r == 0) return E.coeffs[0];
    mpz_class total = 0, term, bin, pw;
    for (const auto& part : tiling::enumerate_partitions(r, d)) {
        std::vector<uint64_t> k = part.k;
        k.resize(d + 1, 0);   // k_{d+1} = 0 closes the telescoping products
        if (E.coeffs[k[0]] == 0) continue;
        term = E.coeffs[k[0]];
        for (uint32_t l = 1; l <= d && term != 0; ++l) {
            mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(k[l - 1]),
                         static_cast<unsigned long>(k[l]));
            term *= bin;
            const uint64_t m = k[l - 1] - k[l];
            if (m > 0) {
                mpz_pow_ui(pw.get_mpz_t(), lifts[l - 1].get_mpz_t(),
                           static_cast<unsigned long>(m));
                term *= pw;
            }
        }
        total += term;
    }
    return total;
}

CheckResult rel_check(const std::vector<mpz_class>& lifts, uint64_t i, uint64_t N, uint64_t a,
                      uint64_t q, uint64_t R) {
    const auto [p, u] = split_prime_power(q);
    (void)u;
    if (N < 1) fail(Errc::invalid_argument, "N must be at least 1");
    const mpz_class mod = pow_mpz(p, N + 2);
    const std::vector<mpz_class> base = C_coeffs_lifts(lifts, i, N, q, R, mod);
    const std::vector<mpz_class> deep = C_coeffs_lifts(lifts, i, N + a, q, R, mod);
    const mpz_class step = pow_mpz(p, N + 1);
    CheckResult res;
    for (uint64_t r = 0; r <= R; ++r) {
        mpz_class diff = deep[r] - base[r];
        if (!mpz_divisible_p(diff.get_mpz_t(), step.get_mpz_t())) {
            res.ok = false;
            res.detail = "C_r(i,N+a) deviates from C_r(i,N) mod p^" + std::to_string(N + 1) +
                         " at r = " + std::to_string(r) + " (i = " + std::to_string(i) +
                         ", N = " + std::to_string(N) + ", a = " + std::to_string(a) + ")";
            return res;
        }
    }
    return res;
}

CheckResult cmod_check(uint64_t p, uint64_t u, uint64_t h, uint64_t j, uint64_t i, uint64_t N,
                       uint64_t b, const mpz_class& coeff_lift) {
    if (!is_prime_u64(p)) fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
    if (u < 1) fail(Errc::invalid_argument, "u must be at least 1");
    if (h < 1) fail(Errc::invalid_argument, "h must be at least 1");
    if (j < 1 || j > p - 1)
        fail(Errc::invalid_argument, "j must lie in 1..p-1, got " + std::to_string(j));
    if (N < 1) fail(Errc::invalid_argument, "N must be at least 1");
    if (b < 1) fail(Errc::invalid_argument, "b must be at least 1");
    const uint64_t q = pow_u64_checked(p, u);
    if (i > q - 2)
        fail(Errc::invalid_argument, "i must lie in 0..q-2, got " + std::to_string(i));
    const uint64_t d = j * (pow_u64_checked(p, h) - 1);
    const uint64_t r = j * (pow_u64_checked(p, b * h) - 1);
    if (r > kMaxCOrder)
        fail(Errc::budget_exceeded, "special radius r = " + std::to_string(r) +
                                        " exceeds the budget " + std::to_string(kMaxCOrder));
    const uint64_t c = r / d;
    if (c * d != r)
        fail(Errc::inconsistency, "special radius is not a multiple of the degree");

    // a_d carries the supplied lift; the lower coefficients are seeded
    // deterministically from the parameters so reruns see the same curve.
    Rng rng(p * 0x9e3779b97f4a7c15ull ^ (u << 40) ^ (h << 32) ^ (j << 24) ^ (i << 16) ^
            (N << 8) ^ b);
    std::vector<mpz_class> lifts(d);
    for (uint64_t l = 1; l < d; ++l)
        lifts[l - 1] = static_cast<unsigned long>(rng.below(2 * p + 1));
    lifts[d - 1] = coeff_lift;

    const mpz_class Ec = E_coeffs(i, N, q, c).at(c);
    CheckResult res;
    if (Ec != 0) {
        const uint64_t w = ord_p(Ec, static_cast<uint32_t>(p));
        const mpz_class mod = pow_mpz(p, std::max(b, w) + 2);
        const mpz_class Cr = C_coeffs_lifts(lifts, i, N, q, r, mod)[r];
        const mpz_class pw1 = pow_mpz(p, w + 1);
        mpz_class lead;
        mpz_pow_ui(lead.get_mpz_t(), coeff_lift.get_mpz_t(), static_cast<unsigned long>(c));
        lead *= Ec;
        mpz_class diff = Cr - lead, obs, want;
        if (!mpz_divisible_p(diff.get_mpz_t(), pw1.get_mpz_t())) {
            mpz_mod(obs.get_mpz_t(), Cr.get_mpz_t(), pw1.get_mpz_t());
            mpz_mod(want.get_mpz_t(), lead.get_mpz_t(), pw1.get_mpz_t());
            res.ok = false;
            res.detail = "C_" + std::to_string(r) + "(" + std::to_string(i) + "," +
                         std::to_string(N) + ") = " + obs.get_str() + " mod p^" +
                         std::to_string(w + 1) + ", leading term predicts " + want.get_str();
            return res;
        }
        if (q == 2) {
            // Classical form: the unit in E_c is invisible mod 2, so the
            // congruence collapses to 2^b times the lifted coefficient.
            mpz_class lit;
            mpz_pow_ui(lit.get_mpz_t(), coeff_lift.get_mpz_t(), static_cast<unsigned long>(c));
            lit *= pow_mpz(2, b);
            mpz_class d2 = Cr - lit;
            const mpz_class m2 = pow_mpz(2, b + 1);
            if (w != b || !mpz_divisible_p(d2.get_mpz_t(), m2.get_mpz_t())) {
                mpz_mod(obs.get_mpz_t(), Cr.get_mpz_t(), m2.get_mpz_t());
                res.ok = false;
                res.detail = "C_" + std::to_string(r) + "(" + std::to_string(i) + "," +
                             std::to_string(N) + ") = " + obs.get_str() +
                             " mod 2^" + std::to_string(b + 1) +
                             ", expected 2^" + std::to_string(b) + " times the lift";
                return res;
            }
        }
    } else {
        // The leading coefficient vanishes (wrong residue class of c), so the
        // whole value must sit above the generic valuation floor.
        const int64_t num = static_cast<int64_t>(b) - digit_sum_before(i, static_cast<uint32_t>(p));
        const int64_t need = std::max<int64_t>(0, ceil_div_i64(num, static_cast<int64_t>(p - 1)));
        const mpz_class mod = pow_mpz(p, static_cast<uint64_t>(need) + 1);
        const mpz_class Cr = C_coeffs_lifts(lifts, i, N, q, r, mod)[r];
        const mpz_class floor = pow_mpz(p, static_cast<uint64_t>(need));
        if (!mpz_divisible_p(Cr.get_mpz_t(), floor.get_mpz_t())) {
            mpz_class obs;
            mpz_mod(obs.get_mpz_t(), Cr.get_mpz_t(), mod.get_mpz_t());
            res.ok = false;
            res.detail = "C_" + std::to_string(r) + "(" + std::to_string(i) + "," +
                         std::to_string(N) + ") = " + obs.get_str() + " is not divisible by p^" +
                         std::to_string(need) + " despite a vanishing leading coefficient";
        }
    }
    return res;
}

CheckResult ord_bound_check(const std::vector<mpz_class>& lifts, uint64_t i, uint64_t N,
                            uint64_t q, uint64_t r) {
    const auto [p, u] = split_prime_power(q);
    (void)u;
    if (r < 1 || r > kMaxCOrder)
        fail(Errc::invalid_argument, "r must lie in 1.." + std::to_string(kMaxCOrder));
    const mpz_class Cr = C_coeffs_lifts(lifts, i, N, q, r)[r];
    std::vector<uint32_t> supp;
    for (size_t l = 1; l <= lifts.size(); ++l)
        if (lifts[l - 1] != 0) supp.push_back(static_cast<uint32_t>(l));
    CheckResult res;
    if (supp.empty()) {
        if (Cr != 0) {
            res.ok = false;
            res.detail = "C_r nonzero for the zero polynomial at r = " + std::to_string(r);
        }
        return res;
    }
    const uint64_t st = tiling::tilde_s(r, supp, static_cast<uint32_t>(p));
    if (st == tiling::kInfinity) {
        if (Cr != 0) {
            res.ok = false;
            res.detail = "C_r nonzero at untileable radius r = " + std::to_string(r);
        }
        return res;
    }
    if (Cr == 0) return res;
    const int64_t num =
        static_cast<int64_t>(st) - digit_sum_before(i, static_cast<uint32_t>(p)) - 1;
    const int64_t need = std::max<int64_t>(0, ceil_div_i64(num, static_cast<int64_t>(p - 1)));
    const auto o = static_cast<int64_t>(ord_p(Cr, static_cast<uint32_t>(p)));
    if (o < need) {
        res.ok = false;
        res.detail = "ord_p(C_" + std::to_string(r) + ") = " + std::to_string(o) +
                     " below the tiling bound " + std::to_string(need) +
                     " (s~ = " + std::to_string(st) + ", i = " + std::to_string(i) + ")";
    }
    return res;
}

}  // namespace slopekit::series
