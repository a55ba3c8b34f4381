#include <gtest/gtest.h>

#include <chrono>

#include "pelks/pel_modules.hpp"

using namespace pelks;
using namespace pelks::pel;

namespace {

LocalPelInstance type_c(std::uint32_t q, int n = 2, int r = 1, bool split = false) {
    return make_local_instance(cyclic::make_descriptor(n, q, 1, 0, 16, split), PelType::C, r);
}
LocalPelInstance type_a(std::uint32_t q, int n, int r, int p, int qq, bool split = false) {
    return make_local_instance(cyclic::make_descriptor(n, q, 1, 0, 16, split), PelType::A, r, p, qq);
}

TensorVector single(const LocalPelInstance& inst, TensorIndex t, int pi_power = 0) {
    TensorVector v;
    v.emplace(t, algebra::LocalSeriesElement::uniformizer_power(inst.algebra->field, pi_power, inst.algebra->precision));
    return v;
}

}  // namespace

TEST(PelModules, UToTheNActsAsNormElement) {
    auto inst = type_c(3, 3, 3);
    const auto& d = *inst.algebra;
    for (bool dual : {false, true})
        for (const auto& b : plain_module(inst).basis()) {
            auto coeff = d.one();
            BasisLabel cur = b;
            for (int k = 0; k < d.n; ++k) {
                auto s = act(inst, Generator::u(), cur, dual);
                coeff = coeff * s.coeff;
                cur = s.label;
            }
            EXPECT_EQ(cur, b);
            EXPECT_TRUE(congruent(coeff, d.pi()));
        }
}

TEST(PelModules, ScalarAndUActionsSatisfyTheCommutationRule) {
    // For the module to be an algebra module, u x = tau^k(x) u must hold with
    // the same k as in the algebra.
    auto inst = type_c(2, 3, 3);
    const auto& d = *inst.algebra;
    auto D = inst.algebra;
    auto x = d.zeta_power(1);
    auto ux = cyclic::CyclicAlgebraElement::u(D) * cyclic::CyclicAlgebraElement::scalar(D, x);
    int k = 0;
    for (int cand : {1, -1})
        if (congruent(ux, cyclic::CyclicAlgebraElement::scalar(D, d.tau(x, cand)) * cyclic::CyclicAlgebraElement::u(D)))
            k = cand;
    ASSERT_NE(k, 0);
    auto tx = make_test_element(inst, x);
    auto tkx = make_test_element(inst, d.tau(x, k));
    for (const auto& b : plain_module(inst).basis()) {
        // u . (x . b)
        auto s1 = act(inst, Generator::scalar(tx), b, false);
        auto s2 = act(inst, Generator::u(), s1.label, false);
        // tau^k(x) . (u . b)
        auto t1 = act(inst, Generator::u(), b, false);
        auto t2 = act(inst, Generator::scalar(tkx), t1.label, false);
        EXPECT_EQ(s2.label, t2.label);
        EXPECT_TRUE(congruent(s1.coeff * s2.coeff, t1.coeff * t2.coeff));
    }
}

TEST(PelModules, QuaternionRelationsMatchTheExample) {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        auto inst = type_c(q);
        auto qs = quotient_structure(inst);
        const TensorIndex xx{{0, 0}, {0, 0}}, xy{{0, 0}, {1, 0}}, yx{{1, 0}, {0, 0}}, yy{{1, 0}, {1, 0}};
        EXPECT_TRUE(qs.in_relation_span(single(inst, xy))) << "q=" << q;
        EXPECT_TRUE(qs.in_relation_span(single(inst, yx)));
        TensorVector twist = single(inst, xx);
        twist.emplace(yy, -inst.algebra->pi());
        EXPECT_TRUE(qs.in_relation_span(twist));
        EXPECT_FALSE(qs.in_relation_span(single(inst, xx)));
        EXPECT_FALSE(qs.in_relation_span(single(inst, yy)));
        EXPECT_EQ(qs.free_rank, 1);
        EXPECT_TRUE(qs.torsion.empty());
        EXPECT_EQ(image_exponent(inst, qs).total, 1);
    }
}

TEST(PelModules, TypeCExponentIsRTimesRPlusOneOverTwo) {
    EXPECT_EQ(image_exponent(type_c(3, 2, 2)).total, 3);
    EXPECT_EQ(image_exponent(type_c(3, 2, 1, true)).total, 0);
    EXPECT_EQ(image_exponent(type_c(2, 1, 2, true)).total, 0);
}

TEST(PelModules, TypeASurvivorsAndTwist) {
    auto inst = type_a(3, 2, 2, 1, 1);
    auto qs = quotient_structure(inst);
    EXPECT_EQ(qs.free_rank, 2);
    ASSERT_EQ(qs.classes.size(), 2u);
    for (const auto& cls : qs.classes) {
        ASSERT_EQ(cls.members.size(), 2u);
        int twisted = 0;
        for (const auto& m : cls.members) {
            // e_{i,j} (x) e'_{n+2-i,k}: 0-based partner (n - i) mod n
            EXPECT_EQ(m.label.dual.i, (2 - m.label.plain.i) % 2);
            EXPECT_NE(m.label.plain.j < 1, m.label.dual.j < 1);
            if (m.twist == 1) {
                ++twisted;
                EXPECT_EQ(m.label.plain.i, 0);
            }
        }
        EXPECT_EQ(twisted, 1);
    }
}

TEST(PelModules, TypeAExponents) {
    EXPECT_EQ(image_exponent(type_a(3, 2, 2, 1, 1)).total, 1);
    EXPECT_EQ(image_exponent(type_a(5, 2, 2, 1, 1)).total, 1);
    EXPECT_EQ(image_exponent(type_a(3, 2, 4, 2, 2)).total, 4);
    EXPECT_EQ(image_exponent(type_a(3, 1, 2, 1, 1, true)).total, 0);
    EXPECT_EQ(image_exponent(type_a(3, 2, 2, 1, 1, true)).total, 0);
    EXPECT_THROW(image_exponent(type_a(3, 2, 2, 2, 0)), SignatureMismatch);
}

TEST(PelModules, UnbalancedFreeRankIs2pq) {
    EXPECT_EQ(quotient_structure(type_a(4, 3, 3, 2, 1)).free_rank, 4);
    EXPECT_EQ(quotient_structure(type_a(3, 1, 3, 2, 1, true)).free_rank, 4);
    EXPECT_EQ(quotient_structure(type_a(3, 2, 2, 2, 0)).free_rank, 0);
}

TEST(PelModules, QuotientDoesNotDependOnTheTestElement) {
    auto inst = type_c(5);
    const auto& d = *inst.algebra;
    std::vector<int> ranks, exps;
    for (long long k = 0; k < static_cast<long long>(d.field->size()) - 1; ++k) {
        auto t = make_test_element(inst, d.zeta_power(k));
        if (!is_separating(inst, t)) continue;
        auto qs = quotient_structure(inst, relation_generators(inst, {t}));
        ranks.push_back(qs.free_rank);
        exps.push_back(image_exponent(inst, qs).total);
    }
    ASSERT_GT(ranks.size(), 3u);
    for (std::size_t k = 0; k < ranks.size(); ++k) {
        EXPECT_EQ(ranks[k], 1);
        EXPECT_EQ(exps[k], 1);
    }
}

TEST(PelModules, DegenerateTestElements) {
    auto inst = type_c(3);
    auto t = make_test_element(inst, inst.algebra->one());
    EXPECT_FALSE(is_separating(inst, t));
    EXPECT_THROW(relation_generators(inst, {t}), DegenerateTestElement);
    EXPECT_THROW(find_separating_element(type_a(2, 2, 2, 1, 1)), DegenerateTestElement);
}

TEST(PelModules, InstanceValidation) {
    auto d = cyclic::make_descriptor(2, 3, 1, 0);
    EXPECT_THROW(make_local_instance(d, PelType::A, 2, 2, 1), SignatureMismatch);
    EXPECT_THROW(make_local_instance(d, PelType::C, 0), std::invalid_argument);
}

TEST(GlobalRankLemma, AllSignaturesUpTo4) {
    for (long long dsc : {-1LL, -3LL, -2LL, -7LL})
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; q <= 4; ++q) {
                auto g = global_rank_lemma(p, q, dsc);
                EXPECT_EQ(g.rank, p * q) << p << "," << q << " d=" << dsc;
                if (p == q) {
                    ASSERT_TRUE(g.n_r.has_value());
                    EXPECT_EQ(*g.n_r, (p + q) / 2);
                } else {
                    EXPECT_FALSE(g.n_r.has_value());
                }
                EXPECT_TRUE(g.torsion_killed_by_discriminant);
                for (const auto& t : g.torsion) EXPECT_EQ(g.discriminant % static_cast<long long>(t), 0);
            }
}

TEST(GlobalRankLemma, RejectsNonSquarefree) {
    EXPECT_THROW(global_rank_lemma(1, 1, -4), std::invalid_argument);
    EXPECT_THROW(global_rank_lemma(1, 1, 5), std::invalid_argument);
}
