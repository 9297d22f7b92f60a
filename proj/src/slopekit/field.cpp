#include "slopekit/field.hpp"

#include <algorithm>
#include <sstream>

namespace slopekit::field {

namespace {

constexpr uint64_t kMaxFieldSize = uint64_t(1) << 62;
constexpr uint64_t kTableCap = 1024;   // largest extension that gets op tables

// --- dense polynomials over a base context, coefficients as packed codes ---
// Used on cold paths only: modulus search, irreducibility, inverses.

using Pol = std::vector<uint64_t>;

int pdeg(const Pol& a) {
    int d = static_cast<int>(a.size()) - 1;
    while (d >= 0 && a[d] == 0) --d;
    return d;
}

void ptrim(Pol& a) { a.resize(pdeg(a) + 1); }

Pol psub(const FieldCtx& B, const Pol& a, const Pol& b) {
    Pol r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0;
        uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = B.sub(x, y);
    }
    ptrim(r);
    return r;
}

Pol pmul(const FieldCtx& B, const Pol& a, const Pol& b) {
    if (a.empty() || b.empty()) return {};
    Pol r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] = B.add(r[i + j], B.mul(a[i], b[j]));
    }
    ptrim(r);
    return r;
}

// Remainder of a modulo f; f need not be monic.
Pol pmod(const FieldCtx& B, Pol a, const Pol& f) {
    int df = pdeg(f);
    uint64_t lead_inv = B.inv(f[df]);
    for (int k = pdeg(a); k >= df; k = pdeg(a)) {
        uint64_t c = B.mul(a[k], lead_inv);
        for (int t = 0; t <= df; ++t)
            a[k - df + t] = B.sub(a[k - df + t], B.mul(c, f[t]));
        ptrim(a);
    }
    return a;
}

Pol ppow_mod(const FieldCtx& B, Pol a, uint64_t e, const Pol& f) {
    Pol r = {1};
    a = pmod(B, std::move(a), f);
    while (e > 0) {
        if (e & 1) r = pmod(B, pmul(B, r, a), f);
        a = pmod(B, pmul(B, a, a), f);
        e >>= 1;
    }
    return r;
}

Pol pgcd(const FieldCtx& B, Pol a, Pol b) {
    while (pdeg(b) >= 0) {
        Pol r = pmod(B, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Irreducibility over the base: f of degree n is irreducible iff
// x^(B^n) == x (mod f) and gcd(x^(B^(n/l)) - x, f) = 1 for every prime l | n.
bool pirreducible(const FieldCtx& B, const Pol& f, uint32_t n) {
    if (n == 1) return true;
    std::vector<uint32_t> prime_divs;
    uint32_t rest = n;
    for (uint32_t q = 2; q * q <= rest; ++q)
        if (rest % q == 0) {
            prime_divs.push_back(q);
            while (rest % q == 0) rest /= q;
        }
    if (rest > 1) prime_divs.push_back(rest);

    const Pol x = {0, 1};
    Pol cur = x;   // x^(B^k) mod f, k = 0 so far
    for (uint32_t k = 1; k <= n; ++k) {
        cur = ppow_mod(B, cur, B.size(), f);
        for (uint32_t l : prime_divs) {
            if (k == n / l) {
                Pol g = pgcd(B, f, psub(B, cur, x));
                if (pdeg(g) != 0) return false;
            }
        }
    }
    return cur == x;
}

}  // namespace

// --- context construction ---

FieldCtxPtr FieldCtx::prime_field(uint32_t p) {
    if (p < 2) fail(Errc::invalid_argument, "characteristic must be at least 2");
    if (p > kPrimeCap)
        fail(Errc::invalid_argument,
             "prime " + std::to_string(p) + " exceeds the small-prime cap " +
                 std::to_string(kPrimeCap));
    if (!is_prime_u64(p)) {
        uint32_t div = 2;
        while (p % div != 0) ++div;
        fail(Errc::invalid_argument,
             std::to_string(p) + " is not prime (divisible by " + std::to_string(div) + ")");
    }
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->n_ = 1;
    ctx->m_ = 1;
    ctx->size_ = p;
    ctx->bsize_ = p;
    ctx->modulus_ = {0, 1};
    ctx->sig_ = std::to_string(p);
    return ctx;
}

FieldCtxPtr FieldCtx::extension(const FieldCtxPtr& base, uint32_t n) {
    if (!base) fail(Errc::invalid_argument, "extension: null base field");
    if (n < 1) fail(Errc::invalid_argument, "extension degree must be at least 1");
    if (n > kMaxExtDegree)
        fail(Errc::invalid_argument, "extension degree exceeds limit " +
                                         std::to_string(kMaxExtDegree));
    unsigned __int128 sz = 1;
    for (uint32_t i = 0; i < n; ++i) {
        sz *= base->size();
        if (sz > kMaxFieldSize)
            fail(Errc::invalid_argument,
                 "field " + base->describe() + "^" + std::to_string(n) +
                     " exceeds the representational limit (2^62 elements)");
    }

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = base->p_;
    ctx->n_ = n;
    ctx->m_ = base->m_ * n;
    ctx->size_ = static_cast<uint64_t>(sz);
    ctx->bsize_ = base->size();
    if ((ctx->bsize_ & (ctx->bsize_ - 1)) == 0) {
        int s = 0;
        while ((uint64_t(1) << s) < ctx->bsize_) ++s;
        ctx->bshift_ = s;
    }
    ctx->base_ = base;

    // Canonical modulus: scan monic candidates in increasing packed order of
    // the lower-coefficient vector; the first irreducible one wins.
    Pol cand(n + 1, 0);
    cand[n] = 1;
    bool found = false;
    for (uint64_t v = 0; v < static_cast<uint64_t>(sz); ++v) {
        uint64_t rest = v;
        for (uint32_t i = 0; i < n; ++i) {
            cand[i] = rest % ctx->bsize_;
            rest /= ctx->bsize_;
        }
        if (pirreducible(*base, cand, n)) {
            found = true;
            break;
        }
    }
    if (!found)
        fail(Errc::inconsistency, "no irreducible modulus found");   // cannot happen
    ctx->modulus_ = cand;
    ctx->neg_red_.resize(n);
    for (uint32_t i = 0; i < n; ++i) ctx->neg_red_[i] = base->neg(cand[i]);

    std::ostringstream sig;
    sig << base->sig_ << "|" << n << ":";
    for (uint32_t i = 0; i <= n; ++i) sig << cand[i] << (i < n ? "," : "");
    ctx->sig_ = sig.str();

    if (ctx->size_ <= kTableCap) ctx->build_tables();
    return ctx;
}

void FieldCtx::build_tables() {
    // Fill local vectors via the generic paths, then install them; the
    // accessors consult the tables only once they are non-empty.
    const uint64_t sz = size_;
    std::vector<uint32_t> at(sz * sz), mt(sz * sz), it(sz, 0);
    for (uint64_t a = 0; a < sz; ++a) {
        for (uint64_t b = 0; b < sz; ++b) {
            at[a * sz + b] = static_cast<uint32_t>(add(a, b));
            mt[a * sz + b] = static_cast<uint32_t>(mul_generic(a, b));
        }
    }
    for (uint64_t a = 1; a < sz; ++a) it[a] = static_cast<uint32_t>(inv_generic(a));
    add_tab_ = std::move(at);
    mul_tab_ = std::move(mt);
    inv_tab_ = std::move(it);
}

std::string FieldCtx::describe() const {
    if (m_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(m_);
}

// --- packed-code views ---

void FieldCtx::decode(uint64_t code, uint64_t* out) const {
    if (bshift_ >= 0) {
        const uint64_t mask = bsize_ - 1;
        for (uint32_t i = 0; i < n_; ++i) {
            out[i] = code & mask;
            code >>= bshift_;
        }
    } else {
        for (uint32_t i = 0; i < n_; ++i) {
            out[i] = code % bsize_;
            code /= bsize_;
        }
    }
}

uint64_t FieldCtx::encode(const uint64_t* digits) const {
    uint64_t acc = 0;
    for (uint32_t i = n_; i-- > 0;) acc = acc * bsize_ + digits[i];
    return acc;
}

std::vector<uint32_t> FieldCtx::p_digits(uint64_t code) const {
    check_code(code);
    std::vector<uint32_t> out(m_);
    for (uint32_t i = 0; i < m_; ++i) {
        out[i] = static_cast<uint32_t>(code % p_);
        code /= p_;
    }
    return out;
}

uint64_t FieldCtx::from_p_digits(const std::vector<uint32_t>& digits) const {
    if (digits.size() > m_)
        fail(Errc::invalid_argument, "too many coefficients for " + describe());
    uint64_t acc = 0;
    for (size_t i = digits.size(); i-- > 0;) {
        if (digits[i] >= p_)
            fail(Errc::invalid_argument, "coefficient " + std::to_string(digits[i]) +
                                             " out of range for characteristic " +
                                             std::to_string(p_));
        acc = acc * p_ + digits[i];
    }
    return acc;
}

void FieldCtx::check_code(uint64_t code) const {
    if (code >= size_)
        fail(Errc::invalid_argument, "element code " + std::to_string(code) +
                                         " out of range for " + describe());
}

// --- arithmetic ---

uint64_t FieldCtx::add(uint64_t a, uint64_t b) const {
    if (!base_) {
        uint64_t t = a + b;
        return t >= p_ ? t - p_ : t;
    }
    if (!add_tab_.empty()) return add_tab_[a * size_ + b];
    uint64_t da[kMaxExtDegree], db[kMaxExtDegree];
    decode(a, da);
    decode(b, db);
    for (uint32_t i = 0; i < n_; ++i) da[i] = base_->add(da[i], db[i]);
    return encode(da);
}

uint64_t FieldCtx::neg(uint64_t a) const {
    if (!base_) return a == 0 ? 0 : p_ - a;
    uint64_t da[kMaxExtDegree];
    decode(a, da);
    for (uint32_t i = 0; i < n_; ++i) da[i] = base_->neg(da[i]);
    return encode(da);
}

uint64_t FieldCtx::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t FieldCtx::mul(uint64_t a, uint64_t b) const {
    if (!base_) return a * b % p_;
    if (!mul_tab_.empty()) return mul_tab_[a * size_ + b];
    return mul_generic(a, b);
}

uint64_t FieldCtx::mul_generic(uint64_t a, uint64_t b) const {
    uint64_t da[kMaxExtDegree], db[kMaxExtDegree], acc[2 * kMaxExtDegree];
    decode(a, da);
    decode(b, db);
    const int n = static_cast<int>(n_);
    std::fill(acc, acc + 2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < n; ++j)
            if (db[j] != 0) acc[i + j] = base_->add(acc[i + j], base_->mul(da[i], db[j]));
    }
    // Fold degrees 2n-2..n down with t^n = neg_red_.
    for (int k = 2 * n - 2; k >= n; --k) {
        uint64_t c = acc[k];
        if (c == 0) continue;
        for (int t = 0; t < n; ++t)
            if (neg_red_[t] != 0)
                acc[k - n + t] = base_->add(acc[k - n + t], base_->mul(c, neg_red_[t]));
    }
    return encode(acc);
}

uint64_t FieldCtx::inv(uint64_t a) const {
    if (a == 0) fail(Errc::invalid_argument, "zero is not invertible in F_" + describe());
    if (!inv_tab_.empty()) return inv_tab_[a];
    return inv_generic(a);
}

uint64_t FieldCtx::inv_generic(uint64_t a) const {
    if (!base_) {
        // extended euclid on integers
        int64_t t = 0, newt = 1, r = p_, newr = static_cast<int64_t>(a);
        while (newr != 0) {
            int64_t q = r / newr;
            std::swap(t -= q * newt, newt);
            std::swap(r -= q * newr, newr);
        }
        return t < 0 ? static_cast<uint64_t>(t + p_) : static_cast<uint64_t>(t);
    }
    // extended euclid on polynomials over the base, against the modulus
    Pol r0 = modulus_, r1(n_);
    decode(a, r1.data());
    ptrim(r1);
    Pol t0 = {}, t1 = {1};
    while (pdeg(r1) > 0) {
        // one long-division step: r0 = q*r1 + r2
        Pol r2 = r0, q;
        int d1 = pdeg(r1);
        uint64_t lead_inv = base_->inv(r1[d1]);
        q.assign(pdeg(r0) - d1 + 1, 0);
        for (int k = pdeg(r2); k >= d1; k = pdeg(r2)) {
            uint64_t c = base_->mul(r2[k], lead_inv);
            q[k - d1] = c;
            for (int t = 0; t <= d1; ++t)
                r2[k - d1 + t] = base_->sub(r2[k - d1 + t], base_->mul(c, r1[t]));
            ptrim(r2);
        }
        Pol t2 = psub(*base_, t0, pmul(*base_, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // modulus irreducible => gcd is the nonzero constant r1[0]
    uint64_t scale = base_->inv(r1[0]);
    Pol res = pmod(*base_, t1, modulus_);
    res.resize(n_, 0);
    for (auto& c : res) c = base_->mul(c, scale);
    return encode(res.data());
}

uint64_t FieldCtx::pow(uint64_t a, const mpz_class& e) const {
    if (e < 0) fail(Errc::invalid_argument, "pow: negative exponent");
    if (e == 0) return 1;   // includes 0^0 == 1 by convention
    uint64_t r = 1;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
}

uint64_t FieldCtx::pow_u64(uint64_t a, uint64_t e) const {
    if (e == 0) return 1;
    uint64_t r = 1, b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

uint64_t FieldCtx::frobenius_iter(uint64_t a, uint64_t k) const {
    k %= m_;   // Frobenius has order m on F_{p^m}
    uint64_t r = a;
    for (uint64_t i = 0; i < k; ++i) r = pow_u64(r, p_);
    return r;
}

uint64_t FieldCtx::trace_to_subfield(uint64_t a, uint32_t g) const {
    if (g == 0 || m_ % g != 0)
        fail(Errc::invalid_argument,
             "trace target degree " + std::to_string(g) + " does not divide " +
                 std::to_string(m_));
    uint64_t acc = a, t = a;
    for (uint32_t i = 1; i < m_ / g; ++i) {
        t = frobenius_iter(t, g);
        acc = add(acc, t);
    }
    return acc;
}

bool FieldCtx::trace_vanishes(uint64_t a, uint32_t g) const {
    return trace_to_subfield(a, g) == 0;
}

// --- Element wrapper ---

namespace {
const FieldCtx& require_same(const Element& a, const Element& b) {
    if (!a.ctx || !b.ctx) fail(Errc::invalid_argument, "element without field context");
    if (!a.ctx->same_field(*b.ctx))
        fail(Errc::invalid_argument, "field context mismatch: F_" + a.ctx->describe() +
                                         " vs F_" + b.ctx->describe());
    return *a.ctx;
}
}  // namespace

Element Element::operator+(const Element& o) const {
    const FieldCtx& F = require_same(*this, o);
    return {ctx, F.add(code, o.code)};
}
Element Element::operator-(const Element& o) const {
    const FieldCtx& F = require_same(*this, o);
    return {ctx, F.sub(code, o.code)};
}
Element Element::operator*(const Element& o) const {
    const FieldCtx& F = require_same(*this, o);
    return {ctx, F.mul(code, o.code)};
}
Element Element::operator-() const { return {ctx, ctx->neg(code)}; }
Element Element::inverse() const { return {ctx, ctx->inv(code)}; }
Element Element::pow(const mpz_class& e) const { return {ctx, ctx->pow(code, e)}; }
Element Element::frobenius_iter(uint64_t k) const { return {ctx, ctx->frobenius_iter(code, k)}; }
bool Element::operator==(const Element& o) const {
    require_same(*this, o);
    return code == o.code;
}

std::string Element::str() const {
    auto d = ctx->p_digits(code);
    std::string out;
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(d[i]);
    }
    return out;
}

uint64_t enumerate_size(const FieldCtx& F, uint64_t budget) {
    if (F.size() > budget)
        fail(Errc::budget_exceeded, "enumerating F_" + F.describe() + " requires " +
                                        std::to_string(F.size()) +
                                        " elements, budget is " + std::to_string(budget));
    return F.size();
}

std::vector<Element> enumerate(const FieldCtxPtr& F, uint64_t budget) {
    uint64_t sz = enumerate_size(*F, budget);
    std::vector<Element> out;
    out.reserve(sz);
    for (uint64_t c = 0; c < sz; ++c) out.emplace_back(F, c);
    return out;
}

}  // namespace slopekit::field
