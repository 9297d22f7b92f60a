#include "slopekit/util.hpp"

namespace slopekit {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

std::vector<uint32_t> digits_base_p(mpz_class n, uint32_t p) {
    if (n < 0) fail(Errc::invalid_argument, "digits_base_p: negative argument");
    std::vector<uint32_t> out;
    while (n > 0) {
        out.push_back(static_cast<uint32_t>(mpz_fdiv_ui(n.get_mpz_t(), p)));
        mpz_fdiv_q_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
    return out;
}

uint64_t digit_sum_p(mpz_class n, uint32_t p) {
    if (n < 0) fail(Errc::invalid_argument, "digit_sum_p: negative argument");
    uint64_t s = 0;
    while (n > 0) {
        s += mpz_fdiv_ui(n.get_mpz_t(), p);
        mpz_fdiv_q_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
    return s;
}

uint64_t digit_sum_p_u64(uint64_t n, uint32_t p) {
    uint64_t s = 0;
    for (; n > 0; n /= p) s += n % p;
    return s;
}

mpz_class isqrt(const mpz_class& n) {
    if (n < 0) fail(Errc::invalid_argument, "isqrt: negative argument");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

uint64_t ord_p(const mpz_class& n, uint32_t p) {
    if (n == 0) fail(Errc::invalid_argument, "ord_p: valuation of zero is infinite");
    mpz_class rest, pz(p);
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
}

mpz_class pow_mpz(uint64_t base, uint64_t exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

uint64_t pow_u64_checked(uint64_t base, uint64_t exp) {
    const uint64_t cap = uint64_t(1) << 62;
    unsigned __int128 acc = 1;
    for (uint64_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > cap)
            fail(Errc::invalid_argument, "integer power exceeds representational limit (2^62)");
    }
    return static_cast<uint64_t>(acc);
}

}  // namespace slopekit
