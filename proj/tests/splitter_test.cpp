#include <gtest/gtest.h>

#include <algorithm>

#include "nildiag/canonical.hpp"
#include "nildiag/errors.hpp"
#include "nildiag/splitter.hpp"
#include "nildiag/verify.hpp"
#include "nildiag_tools/acceptance.hpp"

using namespace nildiag;
using nildiag::tools::Rng;

namespace {

Poly monic(const FieldSpec& f, std::initializer_list<std::uint32_t> lower) {
    std::vector<Fe> v;
    for (auto b : lower) v.push_back(Fe{b});
    return Poly::monic_from_lower(f, v);
}

std::vector<Fe> distinct_roots(const Poly& p) {
    std::vector<Fe> out;
    for (const Root& r : roots(p)) out.push_back(r.value);
    return out;
}

void expect_valid_block(const BlockSplit& s, const Poly& f) {
    EXPECT_EQ(s.n + s.d, companion_of(f)) << format_poly(f);
    EXPECT_TRUE((s.n * s.n).is_zero()) << format_poly(f);
    EXPECT_TRUE(splits_distinct(minimal_polynomial(s.d))) << format_poly(f);
    EXPECT_EQ(distinct_roots(characteristic_polynomial(s.d)), s.record.expected_eigenvalues)
        << format_poly(f) << " " << s.record.route;
}

}  // namespace

TEST(SplitCompanion, OrderTwoTraceNonzero) {
    const FieldSpec f = make_field(2);
    const BlockSplit s = split_companion(monic(f, {3, 2}));
    EXPECT_EQ(s.n, Mat(f, {{0, 3}, {0, 0}}));
    EXPECT_EQ(s.d, Mat(f, {{0, 0}, {1, 2}}));
}

TEST(SplitCompanion, OrderTwoTraceZero) {
    const FieldSpec f = make_field(2);
    for (std::uint32_t u0 = 0; u0 < 4; ++u0) {
        const BlockSplit s = split_companion(monic(f, {u0, 0}));
        const Fe v = f.sqrt(Fe{u0});
        EXPECT_EQ(s.d, Mat::scalar(f, 2, v));
        EXPECT_EQ(s.n, Mat(f, {{v.bits(), f.mul(v, v).bits()}, {1, v.bits()}}));
        EXPECT_EQ(s.record.expected_eigenvalues, std::vector<Fe>{v});
    }
}

TEST(SplitCompanion, OrderThreeNilpotentOverGf4) {
    const FieldSpec f = make_field(2);
    const BlockSplit s = split_companion(monic(f, {0, 0, 0}));
    ASSERT_TRUE(s.record.a.has_value());
    EXPECT_EQ(*s.record.a, Fe{2});
    Mat e13(f, 3, 3);
    e13(0, 2) = kOne;
    EXPECT_EQ(s.n, e13);
    EXPECT_EQ(s.d, companion_of(monic(f, {1, 0, 0})));
    EXPECT_TRUE(pow(s.d, 3).is_identity());
    EXPECT_EQ(s.record.expected_eigenvalues, (std::vector<Fe>{Fe{1}, Fe{2}, Fe{3}}));
}

TEST(SplitCompanion, OrderEightTraceOneLayout) {
    const FieldSpec f = make_field(2);
    const BlockSplit s = split_companion(monic(f, {1, 2, 3, 0, 1, 2, 3, 1}));
    std::vector<AtomKind> kinds;
    for (const Atom& a : s.record.layout) kinds.push_back(a.kind);
    EXPECT_EQ(kinds, (std::vector<AtomKind>{AtomKind::D3, AtomKind::D3, AtomKind::D2}));
    EXPECT_EQ(s.record.layout.back().position, 6u);
    for (Fe x : distinct_roots(characteristic_polynomial(s.d))) EXPECT_LT(x.bits(), 4u);
    expect_valid_block(s, monic(f, {1, 2, 3, 0, 1, 2, 3, 1}));
}

TEST(SplitCompanion, OrderSixNilpotentUsesShift) {
    const FieldSpec f = make_field(2);
    const Poly x6 = Poly::monomial(f, 6);
    const BlockSplit s = split_companion(x6);
    EXPECT_EQ(s.record.route, "4k+2-b");
    // b^2 = w_4 + a^2 + a + 1 with w_4 = 0 and a the generator gives b = 0
    EXPECT_EQ(s.record.normalization.value, f.sqrt(kZero));
    EXPECT_EQ(pow(s.d, 4), s.d);
    EXPECT_TRUE((s.n * s.n).is_zero());
    for (Fe x : distinct_roots(characteristic_polynomial(s.d))) {
        EXPECT_TRUE(x == Fe{0} || x == Fe{1} || x == Fe{2} || x == Fe{3});
    }
}

TEST(SplitCompanion, EveryRouteOnRandomBlocks) {
    Rng rng(21);
    for (unsigned m : {2u, 3u, 4u, 5u}) {
        const FieldSpec f = make_field(m);
        for (std::size_t n = 1; n <= 17; ++n) {
            for (int i = 0; i < 12; ++i) {
                Poly p = tools::random_monic(f, n, rng);
                if (i % 3 == 0 && n >= 2) {
                    std::vector<Fe> c = p.coeffs();
                    c[n - 1] = kZero;
                    p = Poly(f, c);
                }
                expect_valid_block(split_companion(p), p);
            }
        }
    }
}

TEST(SplitCompanion, EigenvaluesNamedPerRoute) {
    const FieldSpec f = make_field(3);
    const Fe a{2};
    const Fe c{5};
    const auto set = [](std::vector<Fe> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    // order 4, trace c: {0, a, c + a}; here a only has to avoid {0, c}, so a = 1
    EXPECT_EQ(split_companion(monic(f, {1, 2, 3, 5})).record.expected_eigenvalues, set({kZero, kOne, f.add(c, kOne)}));
    // order 8, trace c: {0, c, ca, c(a + 1)}
    const BlockSplit s8 = split_companion(monic(f, {1, 0, 0, 0, 0, 0, 0, 5}));
    EXPECT_EQ(s8.record.expected_eigenvalues, set({kZero, c, f.mul(c, a), f.mul(c, f.add(a, kOne))}));
    // order 7, trace c: {c, c + 1, c + a, c + a + 1}
    const BlockSplit s7 = split_companion(monic(f, {1, 0, 0, 0, 0, 0, 5}));
    EXPECT_EQ(s7.record.expected_eigenvalues, set({c, f.add(c, kOne), f.add(c, a), f.add(f.add(c, a), kOne)}));
}

TEST(SplitCompanion, AOverride) {
    const FieldSpec f = make_field(3);
    SplitOptions opts;
    opts.a = Fe{5};
    const BlockSplit s = split_companion(monic(f, {1, 2, 3, 4, 5}), opts);
    EXPECT_EQ(*s.record.a, Fe{5});
    expect_valid_block(s, monic(f, {1, 2, 3, 4, 5}));
    opts.a = kOne;
    EXPECT_THROW(split_companion(monic(f, {1, 2, 3, 4, 5}), opts), PreconditionError);
    // order 3: a must avoid u2 and u2 + 1
    opts.a = Fe{6};
    EXPECT_THROW(split_companion(monic(f, {0, 0, 6}), opts), PreconditionError);
}

TEST(SplitAny, RejectsTwoElementField) {
    const FieldSpec f = make_field(1);
    try {
        split(Mat(f, {{1, 1}, {0, 1}}), SplitOptions{});
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_STREQ(e.what(), "field too small: use potent4-f2 mode");
    }
}

TEST(SplitAny, AllTwoByTwoOverGf4) {
    const FieldSpec f = make_field(2);
    for (std::uint32_t bits = 0; bits < 256; ++bits) {
        Mat a(f, 2, 2);
        for (std::size_t k = 0; k < 4; ++k) a(k / 2, k % 2) = Fe{(bits >> (2 * k)) & 3U};
        const SplitCertificate cert = split_any(a);
        EXPECT_TRUE(check_certificate(a, cert).all_ok()) << bits;
    }
}

TEST(SplitAny, RandomNineByNineOverGf8) {
    Rng rng(99);
    const FieldSpec f = make_field(3);
    for (int i = 0; i < 30; ++i) {
        const Mat a = i % 2 ? tools::random_derogatory(f, 9, rng) : tools::random_matrix(f, 9, rng);
        EXPECT_TRUE(check_certificate(a, split_any(a)).all_ok());
    }
}

TEST(SplitAny, SimilarityEquivariance) {
    Rng rng(31);
    const FieldSpec f = make_field(2);
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = 1 + i % 8;
        const Mat a = i % 2 ? tools::random_derogatory(f, n, rng) : tools::random_matrix(f, n, rng);
        const Mat p = tools::random_invertible(f, n, rng);
        const Mat b = conjugate(p, a);
        EXPECT_TRUE(check_certificate(b, split_any(b)).all_ok());
        // conjugating a certificate gives a certificate for the conjugate
        SplitCertificate cert = split_any(a);
        cert.a = b;
        cert.n = conjugate(p, cert.n);
        cert.d = conjugate(p, cert.d);
        EXPECT_TRUE(check_certificate(b, cert).all_ok());
    }
}

TEST(SplitAny, CertificateRecordsBlocks) {
    const FieldSpec f = make_field(2);
    const Mat a = direct_sum(companion_of(monic(f, {1})), companion_of(monic(f, {1}) * monic(f, {2, 3})));
    const SplitCertificate cert = split_any(a);
    ASSERT_EQ(cert.blocks.size(), 2u);
    EXPECT_EQ(cert.blocks[0].offset, 0u);
    EXPECT_EQ(cert.blocks[1].offset, 1u);
    EXPECT_EQ(cert.blocks[1].layout.front().position, 1u);
    EXPECT_EQ(cert.potency_s, 4u);
    EXPECT_TRUE(cert.diagonalizable && cert.sum_ok && cert.square_zero_ok && cert.potency_ok);
    std::size_t total = 0;
    for (const Root& r : cert.eigenvalues) total += r.multiplicity;
    EXPECT_EQ(total, 4u);
}

TEST(SplitF2, QuarticX4X3One) {
    const FieldSpec f = make_field(1);
    const BlockSplit s = split_companion_f2(monic(f, {1, 0, 0, 1}));
    EXPECT_EQ(s.n, Mat(f, {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}));
    EXPECT_EQ(s.d, Mat(f, {{1, 1, 0, 1}, {0, 1, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}}));
}

TEST(SplitF2, OrderThreeAllTriples) {
    const FieldSpec f = make_field(1);
    for (std::uint32_t bits = 0; bits < 8; ++bits) {
        const std::uint32_t u0 = bits & 1, u1 = (bits >> 1) & 1, u2 = bits >> 2;
        const BlockSplit s = split_companion_f2(monic(f, {u0, u1, u2}));
        EXPECT_EQ(s.d, Mat(f, {{0, 0, u2 ^ 1}, {1, 0, u2}, {0, 1, u2}}));
        EXPECT_EQ(s.n, Mat(f, {{0, 0, u2 ^ 1 ^ u0}, {0, 0, u2 ^ u1}, {0, 0, 0}}));
    }
}

TEST(SplitF2, OrderTwoIdempotent) {
    const FieldSpec f = make_field(1);
    const BlockSplit s = split_companion_f2(monic(f, {1, 1}));
    EXPECT_EQ(s.n, Mat(f, {{0, 1}, {0, 0}}));
    EXPECT_EQ(s.d, Mat(f, {{0, 0}, {1, 1}}));
    EXPECT_EQ(pow(s.d, 2), s.d);
}

TEST(SplitF2, AllSixteenQuarticsAndEveryOrderUpToTwenty) {
    const FieldSpec f = make_field(1);
    for (std::size_t n = 1; n <= 20; ++n) {
        const std::uint64_t limit = n <= 8 ? (std::uint64_t{1} << n) : 64;
        Rng rng(n);
        for (std::uint64_t i = 0; i < limit; ++i) {
            const std::uint64_t bits = n <= 8 ? i : rng();
            std::vector<Fe> lower(n);
            for (std::size_t k = 0; k < n; ++k) lower[k] = Fe{static_cast<std::uint32_t>((bits >> k) & 1U)};
            const Poly p = Poly::monic_from_lower(f, lower);
            const BlockSplit s = split_companion_f2(p);
            EXPECT_EQ(s.n + s.d, companion_of(p));
            EXPECT_TRUE((s.n * s.n).is_zero());
            EXPECT_EQ(pow(s.d, 4), s.d) << format_poly(p);
        }
    }
}

TEST(SplitF2, RejectsOverrideAndOtherFields) {
    SplitOptions opts;
    opts.mode = Mode::Potent4F2;
    opts.a = Fe{1};
    EXPECT_THROW(split(Mat::identity(make_field(1), 2), opts), PreconditionError);
    EXPECT_THROW(split_f2(Mat::identity(make_field(2), 2)), PreconditionError);
}

TEST(QuarticFallback, RegeneratedByEnumeration) {
    const FieldSpec f = make_field(1);
    for (std::uint32_t idx = 0; idx < 8; ++idx) {
        const Mat c = companion_of(monic(f, {idx & 1, (idx >> 1) & 1, (idx >> 2) & 1, 1}));
        std::optional<std::uint16_t> first;
        // enumerate_square_zero streams in index order; recover each N's bit pattern
        enumerate_square_zero(4, f, [&](const Mat& n) {
            if (first) return;
            const Mat d = c + n;
            if (pow(d, 4) == d) {
                std::uint16_t bits = 0;
                for (std::size_t k = 0; k < 16; ++k) bits |= static_cast<std::uint16_t>(n(k / 4, k % 4).bits() << k);
                first = bits;
            }
        });
        ASSERT_TRUE(first.has_value()) << idx;
        EXPECT_EQ(kF2QuarticFallback[idx], *first) << "index " << idx;
    }
    // the x^4 + x^3 + 1 entry equals the explicit split
    EXPECT_EQ(kF2QuarticFallback[1], 0x833);
}

TEST(SplitSubfield, OrderTwoTraceZero) {
    const FieldSpec f = make_field(4);
    const SplitCertificate cert = split_subfield(Mat(f, {{0, 9}, {1, 0}}), 2);
    EXPECT_EQ(cert.n, Mat(f, {{0, 8}, {0, 0}}));
    EXPECT_EQ(cert.d, Mat(f, {{0, 1}, {1, 0}}));
    EXPECT_EQ(cert.potency_s, 3u);
    EXPECT_EQ(pow(cert.d, 3), cert.d);
}

TEST(SplitSubfield, OrderThreeWithTraceInSubfield) {
    const FieldSpec f = make_field(4);
    const SplitCertificate cert = split_subfield(companion_of(monic(f, {0xb, 0x5, 0x6})), 2);
    EXPECT_EQ(pow(cert.d, 4), cert.d);
    EXPECT_EQ(cert.potency_s, 4u);
    ASSERT_TRUE(cert.blocks[0].a.has_value());
    EXPECT_TRUE(f.in_subfield(*cert.blocks[0].a, 2));
}

TEST(SplitSubfield, HypothesisViolations) {
    const FieldSpec f = make_field(4);
    try {
        split_subfield(companion_of(monic(f, {1, 1, 2})), 2);
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_STREQ(e.what(), "subfield hypothesis violated");
    }
    EXPECT_THROW(split_subfield(Mat::identity(f, 2), 2), PreconditionError);  // derogatory
    EXPECT_THROW(split_subfield(companion_of(monic(f, {1, 1, 1})), 3), PreconditionError);
    SplitOptions opts;
    opts.a = Fe{2};  // outside GF(4) inside GF(16)
    EXPECT_THROW(split_subfield(companion_of(monic(f, {1, 1, 1, 1, 1})), 2, opts), PreconditionError);
}

TEST(SplitSubfield, OverrideInsideSubfieldButForbidden) {
    const FieldSpec f = make_field(4);
    SplitOptions opts;
    opts.a = Fe{6};
    try {
        split_subfield(companion_of(monic(f, {1, 2, 6})), 2, opts);
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("inadmissible a"), std::string::npos);
    }
}

TEST(Modes, Names) {
    for (Mode m : {Mode::DiagSplit, Mode::Potent4F2, Mode::PotentSubfield}) EXPECT_EQ(parse_mode(to_string(m)), m);
    EXPECT_THROW(parse_mode("diag"), PreconditionError);
}
