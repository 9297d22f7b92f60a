// Curves y^q - y = f(x) with q = p^u, f over F_Q, Q = p^s, gcd(deg f, p) = 1.
// Point counts are taken over the tower extensions F_{Q^n}, either naively
// over (x, y) pairs or through the additive-character criterion: the fibre
// over x is nonempty iff the trace of f(x) to F_{p^gcd(u, sn)} vanishes, and
// then has exactly p^gcd(u, sn) points.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "slopekit/field.hpp"
#include "slopekit/newton.hpp"

namespace slopekit::curve {

struct CurveSpec {
    uint32_t p = 0;
    uint32_t u = 0;   // q = p^u
    uint32_t s = 0;   // coefficients live in F_Q, Q = p^s
    field::FieldCtxPtr Fq;
    std::vector<uint64_t> a;   // packed coefficient codes a_0..a_d, a_d != 0

    uint32_t d() const { return static_cast<uint32_t>(a.size()) - 1; }
    uint64_t q() const;
    uint64_t Q() const { return Fq->size(); }
};

// Validates primality, gcd(d, p) = 1, a_d != 0 and coefficient ranges.
CurveSpec make_curve(uint32_t p, uint32_t u, uint32_t s, std::vector<uint64_t> coeffs);

// Text form: "p=2 u=1 s=1 f=1*x^3+1*x^1".  Coefficients are comma-separated
// F_p digit lists (constant digit first); "x^k" alone means coefficient 1,
// a bare digit list is the constant term.
CurveSpec parse_curve(const std::string& text);
std::string canonical_text(const CurveSpec& spec);

mpz_class genus(const CurveSpec& spec);    // (q - 1)(d - 1) / 2
uint64_t genus_u64(const CurveSpec& spec); // checked narrow

std::vector<uint32_t> support(const CurveSpec& spec);   // exponents with a_i != 0
// max s_p(i) over support indices i >= 1 (d always qualifies).
uint64_t sigma(const CurveSpec& spec);

// Projective point counts over F_{Q^n} (one point at infinity).
mpz_class count_points_naive(const CurveSpec& spec, uint32_t n,
                             uint64_t budget = field::kDefaultBudget);
mpz_class count_points_trace(const CurveSpec& spec, uint32_t n,
                             uint64_t budget = field::kDefaultBudget, int nthreads = 0);

struct CountSeries {
    std::vector<mpz_class> counts;   // counts[k] = #X(F_{Q^(k+1)})
    std::vector<mpz_class> S;        // S[k] = counts[k] - Q^(k+1) - 1
};
CountSeries point_counts(const CurveSpec& spec, uint32_t n_max,
                         uint64_t budget = field::kDefaultBudget, int nthreads = 0);

// Recovers L from counts up to n = g via the logarithmic-derivative
// recursion n*c_n = sum_j S_j c_{n-j}, completes with the functional
// equation c_{2g-i} = Q^{g-i} c_i, and in verify mode counts on to n = 2g
// and insists the polynomial reproduces those counts too.
newton::LPolynomial lpoly(const CurveSpec& spec, bool verify_mode = false,
                          uint64_t budget = field::kDefaultBudget, int nthreads = 0);

// Same recursion applied to a CountSeries (exposed for tests).
newton::LPolynomial lpoly_from_counts(const CurveSpec& spec, const CountSeries& cs,
                                      bool verify_mode);

}  // namespace slopekit::curve
