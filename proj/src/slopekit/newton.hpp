// L-polynomials with exact integer coefficients and their normalized p-adic
// Newton polygons.  Ordinates are ord_p(c_i)/s, so the polygon of a curve
// over F_{p^s} ends at (2g, g) and supersingularity reads "all slopes 1/2".
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace slopekit::newton {

struct LPolynomial {
    uint32_t p = 0;   // characteristic
    uint32_t s = 0;   // base field is F_{p^s}
    uint64_t g = 0;   // genus; degree is 2g
    std::vector<mpz_class> c;   // 2g+1 coefficients, ascending
};

// Validates c_0 = 1, c_{2g} = p^{sg} and the coefficient count.
LPolynomial make_lpoly(uint32_t p, uint32_t s, uint64_t g, std::vector<mpz_class> coeffs);

struct NewtonPolygon {
    // Lower-hull vertices (index, normalized ordinate); collinear middle
    // points are dropped.  Always starts at (0, 0) and ends at (2g, g).
    std::vector<std::pair<uint64_t, mpq_class>> vertices;
    // Segment slopes in ascending order with multiplicities (horizontal runs).
    std::vector<std::pair<mpq_class, uint64_t>> slopes;
};

NewtonPolygon newton_polygon(const LPolynomial& L);

// Slope list with each slope repeated per unit of multiplicity (2g entries).
std::vector<mpq_class> slopes_expanded(const NewtonPolygon& np);

// First (least) slope; throws for g = 0, where the polygon has no segments.
mpq_class first_slope(const NewtonPolygon& np);

// ord_p(c_i)/s >= i/2 for every i (zero coefficients pass vacuously);
// equivalent to the polygon being the straight line of slope 1/2.
bool is_supersingular(const LPolynomial& L);

// ord_p(c_i) >= ceil(s*i/sigma) for all i >= 1 with c_i != 0.
bool coeff_divisibility_ok(const LPolynomial& L, uint64_t sigma);

// p divides c_i for every i >= 1 (no slope-zero part).
bool p_rank_zero(const LPolynomial& L);

}  // namespace slopekit::newton
