// Truncated power series over the integers, used to verify the coefficient
// arithmetic behind the slope bounds: the solution y(z) of y^q - y = z, the
// closed form D_{k1}(a) for the coefficients of y^a, the expansion
// E_{k1}(i,N) of y^i (q y^{q-1} - 1)^(p^N - 1), and the curve-side values
// C_r(i,N) obtained by substituting z = f(x).  Everything here is restricted
// to prime-field coefficients lifted to plain integers (s = 1); larger
// coefficient fields would need ramification-free Witt lifts and add nothing
// checkable at this scale.
//
// All arithmetic is exact by default.  Passing a nonzero modulus switches a
// computation to fixed-modulus residues (coefficients reduced into
// [0, modulus)), which keeps large sweeps cheap; exact and modular runs of
// the same value agree after reduction.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "slopekit/curve.hpp"
#include "slopekit/tiling.hpp"
#include "slopekit/util.hpp"

namespace slopekit::series {

using tiling::CheckResult;

inline constexpr uint64_t kMaxOrder = 2000;   // truncation guardrail for y, E
inline constexpr uint64_t kMaxCOrder = 400;   // budget for C_r expansions

// Coefficients indexed by exponent, truncated after order R: size() == R+1.
// modulus == 0 means exact integers, otherwise residues in [0, modulus).
struct TruncSeries {
    std::vector<mpz_class> coeffs;
    mpz_class modulus = 0;

    uint64_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    const mpz_class& at(uint64_t k) const;   // bounds-checked coefficient
};

TruncSeries make_series(uint64_t R, const mpz_class& modulus = 0);

// Exact-mod-truncation arithmetic.  Operands must share order and modulus.
TruncSeries series_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_pow(const TruncSeries& a, uint64_t e);
// outer(inner); the inner series must have zero constant term.
TruncSeries series_compose(const TruncSeries& outer, const TruncSeries& inner);

// The unique series with y(0) = 0 and y^q - y = z mod z^{R+1}, by fixed-point
// iteration y <- y^q - z from y = -z (each pass gains q-1 correct orders).
TruncSeries solve_y(uint64_t q, uint64_t R, const mpz_class& modulus = 0);

// z^{k1} coefficient of y^a in closed form: zero unless k1 - a is a
// nonnegative multiple of q - 1, else with e = (k1-a)/(q-1),
//   (-1)^{k1} * a * (k1 + e - 1)! / (k1! e!).
// Exact factorials; always equals the corresponding solve_y(q,.)^a entry.
mpz_class D_coeff(uint64_t a, uint64_t k1, uint64_t q);

// Valuation law for a nonzero D_coeff, writing a = i + l(q-1), 1 <= i <= q-1:
//   l = 0:  ord_p D = ord_p(i) + (s_p(k1) - s_p(i-1) - 1)/(p-1)   (equality)
//   l >= 1: ord_p D >= (s_p(k1) - s_p(i-1) - 1)/(p-1) - (l-1) u.
// The ord_p(i) term only matters when p divides i, which needs u >= 2.
CheckResult ord_D_check(uint64_t a, uint64_t k1, uint64_t q, uint64_t p, uint64_t u);

// Coefficients E_{k1}(i,N) of y^i (q y^{q-1} - 1)^(p^N - 1), 0 <= i <= q-1.
TruncSeries E_coeffs(uint64_t i, uint64_t N, uint64_t q, uint64_t R,
                     const mpz_class& modulus = 0);

// C_r(i,N) for r = 0..R: substitute z = f(x) = sum_l lifts[l-1] x^l into the
// E expansion.  lifts[l-1] is the integer lift of the coefficient a_l.
std::vector<mpz_class> C_coeffs_lifts(const std::vector<mpz_class>& lifts,
                                      uint64_t i, uint64_t N, uint64_t q, uint64_t R,
                                      const mpz_class& modulus = 0);

// Curve-level entry point: requires s = 1 (prime-field coefficients, lifted
// to 0..p-1) and zero constant term; 0 <= i <= q-2.
std::vector<mpz_class> C_coeffs(const curve::CurveSpec& spec, uint64_t i, uint64_t N,
                                uint64_t R);

// The same C_r as a sum over the partitions k in K_r (k_1 >= ... >= k_d >= 0,
// sum k_l = r; k_{d+1} = 0):
//   sum_k E_{k1}(i,N) * prod_l binom(k_l, k_{l+1}) * prod_l a_l^(k_l - k_{l+1}).
// Exact; exponential in r, for cross-checking the composition route.
mpz_class C_combinatorial(const std::vector<mpz_class>& lifts, uint64_t i, uint64_t N,
                          uint64_t q, uint64_t r);

// C_r(i,N+a) == C_r(i,N) mod p^{N+1} for every r <= R.
CheckResult rel_check(const std::vector<mpz_class>& lifts, uint64_t i, uint64_t N,
                      uint64_t a, uint64_t q, uint64_t R);

// Leading-term congruence at the special radius r = j(p^{bh} - 1) for
// d = j(p^h - 1), coefficient a_d lifted to coeff_lift (the other lifts are
// seeded pseudo-randomly from the parameters).  With c = r/d,
//   E_c(i,N) != 0:  C_r(i,N) == E_c(i,N) * coeff_lift^c  mod p^{w+1},
//                   w = ord_p(E_c(i,N));
//   E_c(i,N) == 0:  ord_p(C_r(i,N)) >= ceil((b - s_p(i-1)) / (p-1)).
// For q = 2 the first branch reduces to the classical form
//   C_r(i,N) == 2^b * coeff_lift^c mod 2^{b+1}, which is asserted verbatim.
CheckResult cmod_check(uint64_t p, uint64_t u, uint64_t h, uint64_t j, uint64_t i,
                       uint64_t N, uint64_t b, const mpz_class& coeff_lift);

// ord_p(C_r(i,N)) >= ceil((s~_p(r, supp f) - s_p(i-1) - 1)/(p-1)), with
// s_p(-1) read as -1; when s~ is infinite (r untileable over the support)
// C_r must vanish outright.
CheckResult ord_bound_check(const std::vector<mpz_class>& lifts, uint64_t i,
                            uint64_t N, uint64_t q, uint64_t r);

}  // namespace slopekit::series
