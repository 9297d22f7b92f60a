// Small shared helpers: error type, base-p digit utilities, integer square
// root, p-adic valuation, and a deterministic rng (std:: distributions are
// implementation-defined, so we roll our own bounded draw).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace slopekit {

enum class Errc {
    invalid_argument,
    parse_error,
    budget_exceeded,
    unsupported,
    inconsistency,
};

struct Error : std::runtime_error {
    Errc code;
    Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

bool is_prime_u64(uint64_t n);

// Base-p digits of n >= 0, least significant first; 0 -> {}.
std::vector<uint32_t> digits_base_p(mpz_class n, uint32_t p);

// s_p(n): sum of base-p digits.
uint64_t digit_sum_p(mpz_class n, uint32_t p);
uint64_t digit_sum_p_u64(uint64_t n, uint32_t p);

// floor(sqrt(n)) for n >= 0.
mpz_class isqrt(const mpz_class& n);

// p-adic valuation of n != 0.
uint64_t ord_p(const mpz_class& n, uint32_t p);

mpz_class pow_mpz(uint64_t base, uint64_t exp);

// base^exp, throws Errc::invalid_argument if the result exceeds 2^62.
uint64_t pow_u64_checked(uint64_t base, uint64_t exp);

inline uint64_t ceil_div_u64(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

// splitmix64: stable across platforms and standard libraries.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

}  // namespace slopekit
