#include <gtest/gtest.h>

#include <random>

#include "nildiag/errors.hpp"
#include "nildiag/poly.hpp"

using namespace nildiag;

namespace {

Poly P(const FieldSpec& f, std::initializer_list<std::uint32_t> low_first) {
    std::vector<Fe> c;
    for (auto b : low_first) c.push_back(Fe{b});
    return Poly(f, c);
}

Poly random_poly(const FieldSpec& f, int deg, std::mt19937_64& rng) {
    std::vector<Fe> c(static_cast<std::size_t>(deg + 1));
    for (Fe& x : c) x = Fe{static_cast<std::uint32_t>(rng() & (f.q() - 1))};
    return Poly(f, c);
}

}  // namespace

TEST(Poly, TrimmingAndDegree) {
    const FieldSpec f = make_field(2);
    EXPECT_EQ(P(f, {1, 2, 0, 0}).degree(), 1);
    EXPECT_TRUE(P(f, {0, 0}).is_zero());
    EXPECT_EQ(Poly(f).degree(), -1);
    EXPECT_TRUE(Poly::monomial(f, 3).is_monic());
    EXPECT_EQ(Poly::monic_from_lower(f, {Fe{1}, Fe{2}}), P(f, {1, 2, 1}));
}

TEST(Poly, ProductOfAllLinearFactorsIsXqMinusX) {
    for (unsigned m = 1; m <= 5; ++m) {
        const FieldSpec f = make_field(m);
        Poly prod = Poly::constant(f, kOne);
        for (std::uint32_t c = 0; c < f.q(); ++c) prod = prod * P(f, {c, 1});
        EXPECT_EQ(prod, Poly::monomial(f, f.q()) + Poly::monomial(f, 1));
    }
}

TEST(Poly, DivisionIdentityRandom) {
    std::mt19937_64 rng(7);
    for (unsigned m = 1; m <= 4; ++m) {
        const FieldSpec f = make_field(m);
        for (int i = 0; i < 300; ++i) {
            const Poly a = random_poly(f, static_cast<int>(rng() % 9), rng);
            Poly b = random_poly(f, static_cast<int>(rng() % 5), rng);
            if (b.is_zero()) b = Poly::constant(f, kOne);
            const auto [q, r] = divrem(a, b);
            EXPECT_EQ(q * b + r, a);
            EXPECT_LT(r.degree(), b.degree());
        }
    }
    EXPECT_THROW(divrem(P(make_field(2), {1}), Poly(make_field(2))), PreconditionError);
}

TEST(Poly, GcdDividesBothAndIsMonic) {
    std::mt19937_64 rng(11);
    const FieldSpec f = make_field(3);
    for (int i = 0; i < 200; ++i) {
        const Poly common = random_poly(f, 2, rng);
        const Poly a = common * random_poly(f, 3, rng);
        const Poly b = common * random_poly(f, 2, rng);
        const Poly g = gcd(a, b);
        if (a.is_zero() && b.is_zero()) continue;
        EXPECT_TRUE(g.is_monic());
        EXPECT_TRUE(divrem(a, g).second.is_zero());
        EXPECT_TRUE(divrem(b, g).second.is_zero());
        if (!common.is_zero()) EXPECT_TRUE(divrem(g, common.monic()).second.is_zero());
    }
}

TEST(Poly, ShiftIsCompositionWithXPlusB) {
    std::mt19937_64 rng(3);
    const FieldSpec f = make_field(4);
    for (int i = 0; i < 50; ++i) {
        const Poly p = random_poly(f, 6, rng);
        const Fe b{static_cast<std::uint32_t>(rng() & 15)};
        const Poly s = shift(p, b);
        for (std::uint32_t x = 0; x < 16; ++x) EXPECT_EQ(s.eval(Fe{x}), p.eval(f.add(Fe{x}, b)));
    }
}

TEST(Poly, SplitsDistinctAgreesWithRootCount) {
    std::mt19937_64 rng(5);
    for (unsigned m = 1; m <= 3; ++m) {
        const FieldSpec f = make_field(m);
        for (int i = 0; i < 400; ++i) {
            std::vector<Fe> lower(1 + rng() % 5);
            for (Fe& x : lower) x = Fe{static_cast<std::uint32_t>(rng() & (f.q() - 1))};
            const Poly p = Poly::monic_from_lower(f, lower);
            const auto rs = roots(p);
            bool simple_and_full = rs.size() == static_cast<std::size_t>(p.degree());
            for (const Root& r : rs) simple_and_full = simple_and_full && r.multiplicity == 1;
            EXPECT_EQ(splits_distinct(p), simple_and_full) << format_poly(p);
        }
    }
}

TEST(Poly, RootMultiplicities) {
    const FieldSpec f = make_field(2);
    // (x + 1)^3 (x + 2) over GF(4)
    const Poly p = P(f, {1, 1}) * P(f, {1, 1}) * P(f, {1, 1}) * P(f, {2, 1});
    const auto rs = roots(p);
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_EQ(rs[0], (Root{Fe{1}, 3}));
    EXPECT_EQ(rs[1], (Root{Fe{2}, 1}));
    EXPECT_FALSE(splits_distinct(p));
    // x^2 + x + 1 has no roots over GF(2)
    EXPECT_TRUE(roots(P(make_field(1), {1, 1, 1})).empty());
}

TEST(Poly, DerivativeInCharacteristicTwo) {
    const FieldSpec f = make_field(2);
    EXPECT_TRUE(P(f, {1, 0, 1}).derivative().is_zero());
    EXPECT_EQ(P(f, {3, 2, 1, 1}).derivative(), P(f, {2, 0, 1}));
}

TEST(Poly, MulmodMatchesDivrem) {
    std::mt19937_64 rng(9);
    const FieldSpec f = make_field(3);
    for (int i = 0; i < 100; ++i) {
        const Poly a = random_poly(f, 5, rng), b = random_poly(f, 4, rng);
        Poly mod = Poly::monic_from_lower(f, {Fe{1}, Fe{3}, Fe{0}});
        EXPECT_EQ(mulmod(a, b, mod), divrem(a * b, mod).second);
    }
}

TEST(PolyFormat, RoundTrip) {
    const FieldSpec f = make_field(4);
    const Poly p = P(f, {0xa, 0, 3, 1});
    EXPECT_EQ(format_poly(p), "a,0,3,1");
    EXPECT_EQ(parse_poly(f, "a,0,3,1"), p);
    EXPECT_EQ(parse_poly(f, " 0xa , 0, 3 ,1"), p);
    EXPECT_EQ(format_poly(Poly(f)), "0");
}

TEST(PolyFormat, ErrorsCarryColumn) {
    const FieldSpec f = make_field(2);
    try {
        parse_poly(f, "1,2,zz");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 5u);
    }
    try {
        parse_poly(f, "1,4");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 3u);
    }
    EXPECT_THROW(parse_poly(f, "1,,2"), ParseError);
}

TEST(Poly, FieldMismatchRejected) {
    EXPECT_THROW(P(make_field(2), {1}) + P(make_field(3), {1}), PreconditionError);
}
