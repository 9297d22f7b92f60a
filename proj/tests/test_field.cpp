#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "slopekit/field.hpp"
#include "slopekit/util.hpp"

using namespace slopekit;
using namespace slopekit::field;

namespace {

// Independent least-irreducible oracle: enumerate monic candidates in packed
// order and test irreducibility by trial division against every monic factor
// of degree 1..n/2.  Slow and dumb on purpose.
using Pol = std::vector<uint64_t>;

int deg(const Pol& a) {
    int d = static_cast<int>(a.size()) - 1;
    while (d >= 0 && a[d] == 0) --d;
    return d;
}

Pol poly_rem(const FieldCtx& B, Pol a, const Pol& f) {
    int df = deg(f);
    while (deg(a) >= df) {
        int k = deg(a);
        uint64_t c = B.mul(a[k], B.inv(f[df]));
        for (int t = 0; t <= df; ++t)
            a[k - df + t] = B.sub(a[k - df + t], B.mul(c, f[t]));
    }
    return a;
}

bool divides(const FieldCtx& B, const Pol& g, const Pol& f) {
    Pol r = poly_rem(B, f, g);
    return deg(r) < 0;
}

Pol unpack(const FieldCtx& B, uint64_t v, uint32_t len) {
    Pol out(len);
    for (uint32_t i = 0; i < len; ++i) {
        out[i] = v % B.size();
        v /= B.size();
    }
    return out;
}

Pol least_irreducible_oracle(const FieldCtx& B, uint32_t n) {
    for (uint64_t v = 0;; ++v) {
        Pol f = unpack(B, v, n);
        f.push_back(1);
        bool irred = true;
        for (uint32_t dg = 1; irred && dg <= n / 2; ++dg) {
            uint64_t count = 1;
            for (uint32_t i = 0; i < dg; ++i) count *= B.size();
            for (uint64_t w = 0; w < count; ++w) {
                Pol g = unpack(B, w, dg);
                g.push_back(1);
                if (divides(B, g, f)) {
                    irred = false;
                    break;
                }
            }
        }
        if (irred) return f;
    }
}

}  // namespace

TEST_CASE("prime field construction and validation") {
    auto F2 = FieldCtx::prime_field(2);
    CHECK(F2->p() == 2);
    CHECK(F2->size() == 2);
    CHECK(F2->abs_degree() == 1);
    CHECK(F2->is_prime_field());

    auto F997 = FieldCtx::prime_field(997);
    CHECK(F997->size() == 997);

    CHECK_THROWS_WITH_AS(FieldCtx::prime_field(4), doctest::Contains("divisible by 2"), Error);
    CHECK_THROWS_WITH_AS(FieldCtx::prime_field(15), doctest::Contains("divisible by 3"), Error);
    CHECK_THROWS_WITH_AS(FieldCtx::prime_field(1009), doctest::Contains("cap"), Error);
    CHECK_THROWS_AS(FieldCtx::prime_field(1), Error);
    CHECK_THROWS_AS(FieldCtx::prime_field(0), Error);
}

TEST_CASE("canonical moduli match known small cases") {
    auto F2 = FieldCtx::prime_field(2);
    auto F4 = FieldCtx::extension(F2, 2);
    CHECK(F4->modulus() == std::vector<uint64_t>{1, 1, 1});   // t^2+t+1

    auto F8 = FieldCtx::extension(F2, 3);
    CHECK(F8->modulus() == std::vector<uint64_t>{1, 1, 0, 1});   // t^3+t+1

    auto F3 = FieldCtx::prime_field(3);
    auto F9 = FieldCtx::extension(F3, 2);
    CHECK(F9->modulus() == std::vector<uint64_t>{1, 0, 1});   // t^2+1

    // degree-1 extension keeps the identity embedding t - 0
    auto E1 = FieldCtx::extension(F4, 1);
    CHECK(E1->modulus() == std::vector<uint64_t>{0, 1});
    CHECK(E1->size() == 4);
}

TEST_CASE("canonical moduli agree with the brute-force least-irreducible oracle") {
    auto F2 = FieldCtx::prime_field(2);
    for (uint32_t n = 2; n <= 8; ++n) {
        auto E = FieldCtx::extension(F2, n);
        CHECK(E->modulus() == least_irreducible_oracle(*F2, n));
    }
    auto F3 = FieldCtx::prime_field(3);
    for (uint32_t n = 2; n <= 5; ++n) {
        auto E = FieldCtx::extension(F3, n);
        CHECK(E->modulus() == least_irreducible_oracle(*F3, n));
    }
    auto F5 = FieldCtx::prime_field(5);
    for (uint32_t n = 2; n <= 3; ++n) {
        auto E = FieldCtx::extension(F5, n);
        CHECK(E->modulus() == least_irreducible_oracle(*F5, n));
    }
    // second level of a tower: F_4 -> F_64
    auto F4 = FieldCtx::extension(F2, 2);
    auto E = FieldCtx::extension(F4, 3);
    CHECK(E->modulus() == least_irreducible_oracle(*F4, 3));
}

TEST_CASE("construction is deterministic") {
    auto a = FieldCtx::extension(FieldCtx::extension(FieldCtx::prime_field(2), 2), 3);
    auto b = FieldCtx::extension(FieldCtx::extension(FieldCtx::prime_field(2), 2), 3);
    CHECK(a->signature() == b->signature());
    CHECK(a->modulus() == b->modulus());
    CHECK(a->same_field(*b));
    // elements from independently built contexts interoperate
    Element x{a, 5}, y{b, 7};
    CHECK((x + y).code == a->add(5, 7));
}

TEST_CASE("F_4 multiplication table") {
    auto F4 = FieldCtx::extension(FieldCtx::prime_field(2), 2);
    // codes: 0, 1, 2 = t, 3 = t+1
    CHECK(F4->mul(2, 2) == 3);   // t*t = t+1
    CHECK(F4->mul(2, 3) == 1);   // t*(t+1) = t^2+t = 1
    CHECK(F4->mul(3, 3) == 2);   // (t+1)^2 = t^2+1 = t
    CHECK(F4->add(2, 3) == 1);
    CHECK(F4->inv(2) == 3);
    CHECK(F4->inv(3) == 2);
}

TEST_CASE("pow conventions and edge cases") {
    auto F9 = FieldCtx::extension(FieldCtx::prime_field(3), 2);
    CHECK(F9->pow(0, 0) == 1);   // 0^0 == 1
    CHECK(F9->pow(5, 0) == 1);
    CHECK(F9->pow(0, 7) == 0);
    for (uint64_t a = 1; a < 9; ++a) CHECK(F9->pow_u64(a, 8) == 1);   // a^(q-1) = 1
    CHECK_THROWS_AS(F9->pow(1, mpz_class(-2)), Error);
}

TEST_CASE("inverses") {
    auto F2 = FieldCtx::prime_field(2);
    CHECK(F2->inv(1) == 1);
    CHECK_THROWS_WITH_AS(F2->inv(0), doctest::Contains("not invertible"), Error);

    for (auto F : {FieldCtx::extension(FieldCtx::prime_field(2), 5),
                   FieldCtx::extension(FieldCtx::prime_field(5), 2),
                   FieldCtx::extension(FieldCtx::extension(FieldCtx::prime_field(2), 2), 3)}) {
        for (uint64_t a = 1; a < F->size(); ++a) {
            uint64_t b = F->inv(a);
            CHECK(F->mul(a, b) == 1);
            // cross-check against the Fermat inverse a^(q-2)
            CHECK(b == F->pow_u64(a, F->size() - 2));
        }
        CHECK_THROWS_AS(F->inv(0), Error);
    }
}

TEST_CASE("field axioms hold on sampled triples") {
    auto F = FieldCtx::extension(FieldCtx::extension(FieldCtx::prime_field(2), 2), 3);
    auto G = FieldCtx::extension(FieldCtx::prime_field(5), 2);
    Rng rng(42);
    for (const auto& Fp : {F, G}) {
        for (int it = 0; it < 500; ++it) {
            uint64_t a = rng.below(Fp->size());
            uint64_t b = rng.below(Fp->size());
            uint64_t c = rng.below(Fp->size());
            CHECK(Fp->add(a, b) == Fp->add(b, a));
            CHECK(Fp->mul(a, b) == Fp->mul(b, a));
            CHECK(Fp->add(Fp->add(a, b), c) == Fp->add(a, Fp->add(b, c)));
            CHECK(Fp->mul(Fp->mul(a, b), c) == Fp->mul(a, Fp->mul(b, c)));
            CHECK(Fp->mul(a, Fp->add(b, c)) == Fp->add(Fp->mul(a, b), Fp->mul(a, c)));
            CHECK(Fp->add(a, Fp->neg(a)) == 0);
            CHECK(Fp->mul(a, 1) == a);
        }
    }
}

TEST_CASE("frobenius is a field automorphism of order m fixing F_p") {
    auto F = FieldCtx::extension(FieldCtx::extension(FieldCtx::prime_field(3), 2), 2);   // F_81
    REQUIRE(F->abs_degree() == 4);
    Rng rng(7);
    for (int it = 0; it < 200; ++it) {
        uint64_t a = rng.below(F->size());
        uint64_t b = rng.below(F->size());
        CHECK(F->frobenius_iter(F->add(a, b), 1) ==
              F->add(F->frobenius_iter(a, 1), F->frobenius_iter(b, 1)));
        CHECK(F->frobenius_iter(F->mul(a, b), 1) ==
              F->mul(F->frobenius_iter(a, 1), F->frobenius_iter(b, 1)));
        CHECK(F->frobenius_iter(a, 4) == a);
        CHECK(F->frobenius_iter(a, 7) == F->frobenius_iter(a, 3));
    }
    // elements of the prime subfield are fixed: codes 0..p-1 are the constants
    for (uint64_t c = 0; c < 3; ++c) CHECK(F->frobenius_iter(c, 1) == c);
}

TEST_CASE("trace to subfields") {
    auto F4 = FieldCtx::extension(FieldCtx::prime_field(2), 2);
    CHECK(F4->trace_vanishes(1, 1));        // 1 + 1 = 0
    CHECK(!F4->trace_vanishes(2, 1));       // t + t^2 = 1
    CHECK(F4->trace_to_subfield(2, 1) == 1);
    CHECK_THROWS_WITH_AS(F4->trace_vanishes(1, 3), doctest::Contains("does not divide"), Error);

    // zero counts: the trace onto F_{p^g} vanishes on exactly p^(m-g) elements
    struct Case {
        FieldCtxPtr F;
        uint32_t g;
    };
    auto F2 = FieldCtx::prime_field(2);
    auto F3 = FieldCtx::prime_field(3);
    std::vector<Case> cases = {
        {FieldCtx::extension(F2, 6), 1},
        {FieldCtx::extension(F2, 6), 2},
        {FieldCtx::extension(F2, 6), 3},
        {FieldCtx::extension(F3, 4), 1},
        {FieldCtx::extension(F3, 4), 2},
        {FieldCtx::extension(FieldCtx::extension(F3, 2), 4), 2},   // F_{3^8}, the cap
        {FieldCtx::extension(FieldCtx::extension(F2, 2), 3), 2},
    };
    for (const auto& [F, g] : cases) {
        uint64_t zeros = 0;
        for (uint64_t c = 0; c < F->size(); ++c)
            if (F->trace_vanishes(c, g)) ++zeros;
        uint64_t expect = 1;
        for (uint32_t i = 0; i < F->abs_degree() - g; ++i) expect *= F->p();
        CHECK(zeros == expect);
    }
}

TEST_CASE("enumeration order and budget") {
    auto F2 = FieldCtx::prime_field(2);
    auto all = enumerate(F2);
    REQUIRE(all.size() == 2);
    CHECK(all[0].code == 0);
    CHECK(all[1].code == 1);

    auto F8 = FieldCtx::extension(F2, 3);
    CHECK(enumerate(F8).size() == 8);
    CHECK(enumerate(F8)[0].is_zero());

    CHECK_THROWS_WITH_AS(enumerate_size(*F8, 4), doctest::Contains("requires 8"), Error);
}

TEST_CASE("packed digits round-trip") {
    auto F = FieldCtx::extension(FieldCtx::extension(FieldCtx::prime_field(3), 2), 2);
    Rng rng(99);
    for (int it = 0; it < 100; ++it) {
        uint64_t a = rng.below(F->size());
        CHECK(F->from_p_digits(F->p_digits(a)) == a);
    }
    CHECK(Element{F, 0}.str() == "0,0,0,0");
    CHECK_THROWS_AS(F->from_p_digits({3}), Error);                  // digit out of range
    CHECK_THROWS_AS(F->from_p_digits({0, 0, 0, 0, 1}), Error);      // too long
}

TEST_CASE("element context mismatch is rejected") {
    auto F2 = FieldCtx::prime_field(2);
    auto F4 = FieldCtx::extension(F2, 2);
    Element a{F2, 1}, b{F4, 2};
    CHECK_THROWS_WITH_AS((void)(a + b), doctest::Contains("mismatch"), Error);
}

TEST_CASE("representational limits") {
    auto F2 = FieldCtx::prime_field(2);
    CHECK_THROWS_AS(FieldCtx::extension(F2, 65), Error);
    auto F997 = FieldCtx::prime_field(997);
    CHECK_THROWS_WITH_AS(FieldCtx::extension(F997, 7), doctest::Contains("limit"), Error);
    CHECK_THROWS_AS(FieldCtx::extension(F2, 0), Error);
}
