// Finite fields in polynomial basis, built as towers: a context is either a
// prime field F_p or a degree-n extension of another context.  The defining
// modulus of an extension is canonical: the least monic irreducible
// polynomial of that degree over the base, where "least" compares the
// coefficient vector (constant term first) packed as a mixed-radix integer.
// Two independent constructions of the same tower shape therefore agree
// element-for-element.
//
// Elements are carried as packed codes: code = sum_i enc(c_i) * B^i, where B
// is the base-field size and enc is the same packing one level down.  Since
// every level packs positionally, the code of an element equals the base-p
// integer whose digits are the flattened coefficient vector, and code order
// doubles as the canonical enumeration order.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "slopekit/util.hpp"

namespace slopekit::field {

inline constexpr uint32_t kPrimeCap = 1000;
inline constexpr uint64_t kDefaultBudget = uint64_t(1) << 26;
inline constexpr uint32_t kMaxExtDegree = 64;

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

class FieldCtx {
  public:
    static FieldCtxPtr prime_field(uint32_t p);
    static FieldCtxPtr extension(const FieldCtxPtr& base, uint32_t n);

    uint32_t p() const { return p_; }
    uint32_t ext_degree() const { return n_; }   // 1 for prime fields
    uint32_t abs_degree() const { return m_; }   // [F : F_p]
    uint64_t size() const { return size_; }
    bool is_prime_field() const { return base_ == nullptr; }
    const FieldCtxPtr& base() const { return base_; }
    // Monic defining polynomial, n+1 base-element codes, constant first.
    // For prime fields this is the trivial t - 0.
    const std::vector<uint64_t>& modulus() const { return modulus_; }
    std::string describe() const;   // "p" or "p^m"
    bool same_field(const FieldCtx& o) const { return this == &o || sig_ == o.sig_; }
    const std::string& signature() const { return sig_; }

    // Arithmetic on packed codes.  All inputs must be < size().
    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;             // a != 0
    uint64_t pow(uint64_t a, const mpz_class& e) const;   // 0^0 == 1
    uint64_t pow_u64(uint64_t a, uint64_t e) const;
    uint64_t frobenius_iter(uint64_t a, uint64_t k) const;   // a^(p^k)
    // Trace into the subfield F_{p^g}; g must divide abs_degree().
    uint64_t trace_to_subfield(uint64_t a, uint32_t g) const;
    bool trace_vanishes(uint64_t a, uint32_t g) const;

    // Coefficient views.
    void decode(uint64_t code, uint64_t* out) const;    // ext_degree() base codes
    uint64_t encode(const uint64_t* digits) const;
    std::vector<uint32_t> p_digits(uint64_t code) const;  // abs_degree() digits, constant first
    uint64_t from_p_digits(const std::vector<uint32_t>& digits) const;

    void check_code(uint64_t code) const;

  private:
    FieldCtx() = default;

    uint64_t mul_generic(uint64_t a, uint64_t b) const;
    uint64_t inv_generic(uint64_t a) const;
    void build_tables();

    uint32_t p_ = 0;
    uint32_t n_ = 0;
    uint32_t m_ = 0;
    uint64_t size_ = 0;
    uint64_t bsize_ = 0;
    int bshift_ = -1;   // log2(bsize_) when it is a power of two
    FieldCtxPtr base_;
    std::vector<uint64_t> modulus_;
    std::vector<uint64_t> neg_red_;   // -modulus_[0..n): reduction row for t^n
    std::vector<uint32_t> add_tab_, mul_tab_;   // own-size tables for small extensions
    std::vector<uint32_t> inv_tab_;
    std::string sig_;
};

struct Element {
    FieldCtxPtr ctx;
    uint64_t code = 0;

    Element() = default;
    Element(FieldCtxPtr c, uint64_t v) : ctx(std::move(c)), code(v) {}

    bool is_zero() const { return code == 0; }
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator-() const;
    Element inverse() const;
    Element pow(const mpz_class& e) const;
    Element frobenius_iter(uint64_t k) const;
    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }
    // Flattened F_p coefficients, constant first, comma separated.
    std::string str() const;
};

// Validates |F| against the budget and returns |F|; callers then loop over
// codes 0..|F|-1 in canonical order.
uint64_t enumerate_size(const FieldCtx& F, uint64_t budget = kDefaultBudget);

// Materialized variant for small fields and tests.
std::vector<Element> enumerate(const FieldCtxPtr& F, uint64_t budget = kDefaultBudget);

}  // namespace slopekit::field
