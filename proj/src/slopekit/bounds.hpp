// Slope-driven bound machinery: tau = (p-1)*ceil(log_p d), the improved
// Hasse-Weil bound p^e * floor(g*floor(2 sqrt(Q^n)) / p^e) with e = ceil(sn/tau),
// classification of the two curve families with known slope behaviour, and the
// three reference bound computations with computed-vs-reference verdicts.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "slopekit/curve.hpp"

namespace slopekit::bounds {

// (p-1)*ceil(log_p d) by integer power comparison; tau(1) = 0 (genus-0 case
// where none of the bound machinery applies).
uint64_t tau(uint64_t d, uint32_t p);

struct BoundReport {
    uint32_t p = 0, s = 0, u = 0;
    uint64_t d = 0, n = 0;
    mpz_class genus;                     // (p^u - 1)(d - 1)/2
    uint64_t tau = 0;
    uint64_t divisibility_exponent = 0;  // e = ceil(s*n/tau); p^e divides S_n
    mpz_class hw_classic;                // g * floor(2 sqrt(Q^n))
    mpz_class hw_improved;               // p^e * floor(hw_classic / p^e)
};

// Requires d >= 2, gcd(d, p) = 1, n >= 1.  Always hw_improved <= hw_classic
// < hw_improved + p^e and p^e | hw_improved.
BoundReport improved_hw(uint32_t p, uint32_t s, uint32_t u, uint64_t d, uint64_t n);

enum class Family { supersingular, non_supersingular, neither };

struct FamilyClass {
    Family kind = Family::neither;
    uint32_t h = 0, i = 0;   // d = i(p^h - 1) when kind == non_supersingular
};

// supersingular: every exponent in the support (above the constant term) is a
// sum of two powers of p.  non_supersingular: d = i(p^h - 1) with
// 1 <= i <= p-1 and h(p-1) > 2, which pins the first slope to 1/(h(p-1)).
// The two conditions are mutually exclusive: s_p(i(p^h - 1)) = h(p-1) > 2.
FamilyClass classify_family(const curve::CurveSpec& spec);

// Reference bound computations with known published outcomes, reported value
// by value so a mismatch flags loudly instead of failing silently.
struct ExampleValue {
    std::string name;        // "hw_classic", "hw_improved", "divisibility_exponent"
    std::string computed;
    std::string reference;
    bool pass = false;
};

struct ExampleReport {
    std::string label;       // "example-1", ...
    BoundReport report;
    std::vector<ExampleValue> values;
    bool flagged = false;    // any computed/reference mismatch
};

std::vector<ExampleReport> bound_examples();

}  // namespace slopekit::bounds
