#include <gtest/gtest.h>

#include <cmath>

#include "pelks/ks_pipeline.hpp"
#include "pelks/lattice.hpp"

using namespace pelks;
using namespace pelks::lattice;
using domains::Rng;

namespace {

std::vector<EmbeddingPtr> all_embeddings() {
    return {siegel_embedding(1), siegel_embedding(2), gaussian_embedding(2), gaussian_embedding(4),
            gaussian_quaternion_embedding(2)};
}

PeriodLattice base(EmbeddingPtr e) {
    const Eigen::Index m = e->type == LatticeType::A ? e->r / 2 : e->r;
    return ks::lattice_at(e, Mat(domains::kI * Mat::Identity(m, m)));
}

}  // namespace

TEST(Lattice, SelfDualMultipliers) {
    auto s = siegel_embedding(1);
    EXPECT_NEAR(solve_self_dual_mu(base(s), *s).mu(0, 0).real(), -1.0, 1e-12);
    auto g = gaussian_embedding(2);
    EXPECT_NEAR(solve_self_dual_mu(base(g), *g).mu(0, 0).real(), -2.0, 1e-12);
    auto q = gaussian_quaternion_embedding(2);
    auto mq = solve_self_dual_mu(base(q), *q).mu;
    EXPECT_NEAR(std::abs(mq.determinant()), 160.0, 1e-9);
    EXPECT_NEAR(mq(0, 0).real(), -4.0 * std::sqrt(10.0), 1e-9);
}

TEST(Lattice, SelfDualDegreeIsOne) {
    for (const auto& e : all_embeddings()) {
        auto l = base(e);
        auto mu = solve_self_dual_mu(l, *e);
        EXPECT_EQ(polarization_degree(l, mu), 1.0) << e->name << " r=" << e->r;
        EXPECT_NEAR(dual_lattice_index(l, mu), 1.0, 1e-9);
    }
}

TEST(Lattice, GaussianTraceFormDegreeIsDiscriminant) {
    auto e = gaussian_embedding(2);
    auto l = base(e);
    RiemannFormDescriptor plain{Mat::Identity(1, 1), e->trace_mode};
    EXPECT_EQ(polarization_degree(l, plain), 4.0);
    // independent oracle: index of the E-dual lattice by covolumes
    EXPECT_NEAR(std::sqrt(dual_lattice_index(l, plain)), 4.0, 1e-9);
}

TEST(Lattice, RiemannFormIsAlternatingIntegralAndPositive) {
    Rng rng(31);
    for (const auto& e : all_embeddings()) {
        auto mu = solve_self_dual_mu(base(e), *e);
        auto g = riemann_gram(*e, mu);
        EXPECT_LT((g + g.transpose()).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_TRUE(is_integral(g));
        for (int t = 0; t < 20; ++t) {
            auto l = ks::lattice_at(e, ks::random_domain_point(*e, rng));
            EXPECT_GT(min_hermitian_eigenvalue(l, mu), 0.0);
        }
    }
}

TEST(Lattice, CovolumeFormulaAndDuality) {
    Rng rng(8);
    for (const auto& e : all_embeddings()) {
        auto mu = solve_self_dual_mu(base(e), *e).mu;
        for (int t = 0; t < 20; ++t) {
            const Mat z = ks::random_domain_point(*e, rng);
            auto l = ks::lattice_at(e, z);
            const double dety = std::abs(domains::imh(z).determinant());
            const double pw = e->type == LatticeType::A ? 2.0 * e->n : e->n;
            const double predicted = std::pow(std::abs(mu.determinant()), e->r) * std::pow(dety, pw);
            EXPECT_NEAR(covolume(l) / predicted, 1.0, 1e-9) << e->name;
            EXPECT_NEAR(covolume(l) * dual_covolume(l), 1.0, 1e-9);
        }
    }
}

TEST(Lattice, FaltingsNormSquaredIsCovolumeOverPiPower) {
    auto e = gaussian_embedding(2);
    auto l = base(e);
    EXPECT_NEAR(faltings_norm(l) * faltings_norm(l), covolume(l) / std::pow(std::numbers::pi, 2), 1e-12);
}

TEST(Lattice, CayleyCommensurability) {
    Rng rng(4);
    for (int r : {2, 4}) {
        auto e = gaussian_embedding(r);
        auto c = cayley_commensurability(domains::random_bounded_point(rng, r / 2, r / 2), e);
        EXPECT_GT(c.kernel_dim, 0);
        EXPECT_TRUE(c.rational);
        EXPECT_TRUE(c.invertible);
    }
}

TEST(Lattice, InvalidEmbeddings) {
    Mat one = Mat::Identity(1, 1);
    // rank mismatch: Z alone cannot give a lattice in C^r for type A
    EXPECT_THROW(make_embedding("bad", LatticeType::A, 1, 2, {one}, {{{1}}}, one, TraceMode::TwiceReal),
                 InvalidEmbedding);
    // sigma not multiplicative: i^2 declared as +1
    Mat i = domains::kI * one;
    EXPECT_THROW(make_embedding("bad", LatticeType::A, 1, 2, {one, i}, {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}}, one,
                                TraceMode::TwiceReal),
                 InvalidEmbedding);
}

TEST(Lattice, NonIntegralFormIsRejected) {
    auto e = gaussian_embedding(2);
    RiemannFormDescriptor odd{Mat::Constant(1, 1, 3.0), e->trace_mode};
    EXPECT_THROW(polarization_degree(base(e), odd), NonIntegralForm);
}
