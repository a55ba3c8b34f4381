#include <gtest/gtest.h>

#include <random>

#include "pelks/algebra/smith.hpp"

using namespace pelks;
using namespace pelks::algebra;

namespace {

constexpr int kPrec = 24;

SeriesMatrix diag_matrix(FieldPtr f, const std::vector<int>& vals, std::size_t rows, std::size_t cols) {
    SeriesMatrix m = series_zero_matrix(rows, cols, f, kPrec);
    for (std::size_t i = 0; i < vals.size(); ++i) m(i, i) = LocalSeriesElement::uniformizer_power(f, vals[i], kPrec);
    return m;
}

// Random unimodular matrix: product of elementary operations with unit pivots.
SeriesMatrix random_unimodular(std::mt19937& rng, FieldPtr f, std::size_t n) {
    SeriesMatrix u = series_identity(n, f, kPrec);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<Code> dig(0, f->size() - 1);
    std::uniform_int_distribution<int> val(0, 3);
    for (int t = 0; t < 3 * static_cast<int>(n); ++t) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        auto c = LocalSeriesElement::from_digits(f, val(rng), {dig(rng), dig(rng)}, kPrec);
        for (std::size_t k = 0; k < n; ++k) u(i, k) = u(i, k) + c * u(j, k);
    }
    return u;
}

}  // namespace

TEST(Smith, DiagonalInputIsSorted) {
    auto F = GaloisField::make(3, 1);
    auto s = smith_normal_form(diag_matrix(F, {3, 0, 1}, 3, 3));
    EXPECT_EQ(s.divisors, (std::vector<int>{0, 1, 3}));
    EXPECT_TRUE(verify_smith(diag_matrix(F, {3, 0, 1}, 3, 3), s));
}

TEST(Smith, ZeroBlockGivesInfiniteDivisors) {
    auto F = GaloisField::make(2, 1);
    auto a = diag_matrix(F, {1}, 3, 2);
    auto s = smith_normal_form(a);
    ASSERT_EQ(s.divisors.size(), 2u);
    EXPECT_EQ(s.divisors[0], 1);
    EXPECT_EQ(s.divisors[1], kInfiniteValuation);
    EXPECT_EQ(s.finite_rank(), 1u);
}

TEST(Smith, InvariantUnderRandomUnimodularChange) {
    std::mt19937 rng(99);
    for (auto [p, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        auto F = GaloisField::make(p, d);
        for (int t = 0; t < 25; ++t) {
            std::uniform_int_distribution<int> v(0, 4);
            std::vector<int> vals = {v(rng), v(rng), v(rng), v(rng)};
            auto a = diag_matrix(F, vals, 4, 4);
            auto b = random_unimodular(rng, F, 4) * a * random_unimodular(rng, F, 4);
            auto s = smith_normal_form(b);
            std::sort(vals.begin(), vals.end());
            EXPECT_EQ(s.divisors, vals);
            EXPECT_TRUE(verify_smith(b, s));
            EXPECT_EQ(determinant_valuation(b), vals[0] + vals[1] + vals[2] + vals[3]);
        }
    }
}

TEST(Smith, PivotTieBreakIsLexicographic) {
    auto F = GaloisField::make(5, 1);
    SeriesMatrix a = series_zero_matrix(2, 2, F, kPrec);
    a(0, 1) = LocalSeriesElement::one(F, kPrec);
    a(1, 0) = LocalSeriesElement::one(F, kPrec);
    auto s1 = smith_normal_form(a);
    auto s2 = smith_normal_form(a);
    EXPECT_EQ(s1.divisors, (std::vector<int>{0, 0}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            EXPECT_EQ(s1.left(i, j), s2.left(i, j));
            EXPECT_EQ(s1.right(i, j), s2.right(i, j));
        }
}

TEST(Smith, NonIntegralInputIsRejected) {
    auto F = GaloisField::make(3, 1);
    SeriesMatrix a = series_zero_matrix(1, 1, F, kPrec);
    a(0, 0) = LocalSeriesElement::uniformizer_power(F, -1, kPrec);
    EXPECT_THROW(smith_normal_form(a), std::invalid_argument);
}

TEST(Smith, LowPrecisionZeroIsAmbiguous) {
    auto F = GaloisField::make(3, 1);
    SeriesMatrix a = series_zero_matrix(2, 2, F, kPrec);
    a(0, 0) = LocalSeriesElement::uniformizer_power(F, 3, kPrec);
    a(1, 1) = LocalSeriesElement::zero(F, 2);
    EXPECT_THROW(smith_normal_form(a), InsufficientPrecision);
}

TEST(IntegerSmith, KnownInvariantFactors) {
    auto s = integer_smith(to_int_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    ASSERT_EQ(s.rank(), 3u);
    EXPECT_EQ(s.divisors[0], 2);
    EXPECT_EQ(s.divisors[1], 6);
    EXPECT_EQ(s.divisors[2], 12);
}

TEST(IntegerSmith, RandomUnimodularInvariance) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> small(-3, 3);
    for (int t = 0; t < 50; ++t) {
        std::vector<std::vector<long long>> d = {{1, 0, 0}, {0, 3, 0}, {0, 0, 12}};
        IntMatrix a = to_int_matrix(d);
        for (int k = 0; k < 6; ++k) {
            std::size_t i = static_cast<std::size_t>(t + k) % 3, j = static_cast<std::size_t>(t + 2 * k + 1) % 3;
            if (i == j) continue;
            BigInt c = small(rng);
            for (std::size_t col = 0; col < 3; ++col) a[i][col] += c * a[j][col];
            BigInt c2 = small(rng);
            for (std::size_t row = 0; row < 3; ++row) a[row][i] += c2 * a[row][j];
        }
        auto s = integer_smith(a);
        ASSERT_EQ(s.rank(), 3u);
        EXPECT_EQ(s.divisors[0], 1);
        EXPECT_EQ(s.divisors[1], 3);
        EXPECT_EQ(s.divisors[2], 12);
    }
}
