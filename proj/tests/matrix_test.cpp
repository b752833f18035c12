#include <gtest/gtest.h>

#include <random>

#include "nildiag/errors.hpp"
#include "nildiag/matrix.hpp"

using namespace nildiag;

namespace {

Mat random_mat(const FieldSpec& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Fe{static_cast<std::uint32_t>(rng() & (f.q() - 1))};
    }
    return m;
}

}  // namespace

TEST(Matrix, RingLaws) {
    std::mt19937_64 rng(1);
    const FieldSpec f = make_field(3);
    for (int i = 0; i < 50; ++i) {
        const Mat a = random_mat(f, 4, 4, rng), b = random_mat(f, 4, 4, rng), c = random_mat(f, 4, 4, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * Mat::identity(f, 4), a);
        EXPECT_TRUE((a + a).is_zero());
    }
}

TEST(Matrix, InverseRankNullspace) {
    std::mt19937_64 rng(2);
    for (unsigned m : {1u, 2u, 4u}) {
        const FieldSpec f = make_field(m);
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = 1 + rng() % 6;
            const Mat a = random_mat(f, n, n, rng);
            const std::size_t r = rank(a);
            const auto kernel = nullspace(a);
            EXPECT_EQ(r + kernel.size(), n);
            for (const Vec& v : kernel) {
                const Vec av = a.apply(v);
                for (Fe x : av) EXPECT_EQ(x, kZero);
            }
            if (r == n) {
                EXPECT_TRUE((a * inverse(a)).is_identity());
                EXPECT_TRUE((inverse(a) * a).is_identity());
                Vec b(n);
                for (Fe& x : b) x = Fe{static_cast<std::uint32_t>(rng() & (f.q() - 1))};
                EXPECT_EQ(a.apply(solve(a, b)), b);
            } else {
                EXPECT_THROW(inverse(a), PreconditionError);
            }
        }
    }
}

TEST(Matrix, PowerAndTrace) {
    const FieldSpec f = make_field(1);
    const Mat j(f, {{0, 1}, {1, 0}});
    EXPECT_TRUE(pow(j, 2).is_identity());
    EXPECT_EQ(pow(j, 0), Mat::identity(f, 2));
    EXPECT_EQ(pow(j, 5), j);
    EXPECT_EQ(trace(Mat(f, {{1, 0}, {0, 1}})), kZero);
    const FieldSpec f4 = make_field(2);
    EXPECT_EQ(trace(Mat(f4, {{2, 1}, {0, 3}})), Fe{1});
}

TEST(Matrix, BlocksAndShifts) {
    const FieldSpec f = make_field(2);
    const Mat a(f, {{1, 2}, {3, 0}});
    const Mat s = direct_sum(a, Mat::scalar(f, 1, Fe{3}));
    EXPECT_EQ(s, Mat(f, {{1, 2, 0}, {3, 0, 0}, {0, 0, 3}}));
    EXPECT_EQ(a.shifted(Fe{1}), Mat(f, {{0, 2}, {3, 1}}));
    EXPECT_EQ(a.scaled(Fe{2}), Mat(f, {{2, 3}, {1, 0}}));
    const Mat p(f, {{1, 1}, {0, 1}});
    EXPECT_EQ(conjugate(p, a), p * a * inverse(p));
}

TEST(MatrixFormat, RoundTripAndLayout) {
    const FieldSpec f = make_field(4);
    const Mat a(f, {{0, 0xf}, {0xa, 1}});
    const std::string text = format_matrix(a);
    EXPECT_EQ(text, "field gf(2^4)[modulus=0x13]\nn 2\n0 f\na 1\n");
    EXPECT_EQ(parse_matrix(text), a);
    EXPECT_EQ(parse_matrix("field gf(2^4)\nn 2\n0x0 0xF\n a  1 \n\n"), a);
}

TEST(MatrixFormat, ErrorsCarryLineAndColumn) {
    auto expect_at = [](const std::string& text, std::size_t line, std::size_t col) {
        try {
            parse_matrix(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), line) << text;
            EXPECT_EQ(e.column(), col) << text;
        }
    };
    expect_at("field gf(2^2)\nn 2\n0 1\n1 4\n", 4, 3);
    expect_at("field gf(2^2)\nn 2\n0 1\n1 g\n", 4, 3);
    expect_at("field gf(2^2)\nn 2\n0\n", 3, 2);
    expect_at("field gf(2^2)\nn 2\n0 1 1\n1 1\n", 3, 5);
    expect_at("matrix\n", 1, 1);
    expect_at("field gf(2^2)\nsize 2\n", 2, 1);
    EXPECT_THROW(parse_matrix("field gf(2^2)\nn 2\n0 1\n"), ParseError);
    EXPECT_THROW(parse_matrix("field gf(2^2)\nn 1\n0\n1\n"), ParseError);
}
