// One [PASS]/[FAIL] line per acceptance criterion; exit 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "pelks/ks_pipeline.hpp"
#include "pelks/pel_modules.hpp"
#include "pelks/verifier/fixtures.hpp"
#include "pelks/verifier/runner.hpp"

using namespace pelks;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

lattice::RiemannFormDescriptor self_dual(lattice::EmbeddingPtr e) {
    domains::Rng rng(1);
    return lattice::solve_self_dual_mu(ks::lattice_at(e, ks::random_domain_point(*e, rng)), *e);
}

pel::TensorVector unit_vector(const pel::LocalPelInstance& inst, pel::TensorIndex t) {
    pel::TensorVector v;
    v.emplace(t, inst.algebra->one());
    return v;
}

void ac1(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint32_t q : {2u, 3u, 5u}) {
        auto inst = pel::make_local_instance(cyclic::make_descriptor(2, q, 1, 0), pel::PelType::C, 1);
        auto qs = pel::quotient_structure(inst);
        const int e = pel::image_exponent(inst, qs).total;
        const pel::TensorIndex xx{{0, 0}, {0, 0}}, xy{{0, 0}, {1, 0}}, yx{{1, 0}, {0, 0}}, yy{{1, 0}, {1, 0}};
        auto twist = unit_vector(inst, xx);
        twist.emplace(yy, -inst.algebra->pi());
        const bool gens = qs.in_relation_span(unit_vector(inst, xy)) && qs.in_relation_span(unit_vector(inst, yx)) &&
                          qs.in_relation_span(twist) && !qs.in_relation_span(unit_vector(inst, xx));
        o.ok = o.ok && e == 1 && gens;
        o.note << "q=" << q << ": exponent " << e << (gens ? ", relations ok; " : ", relations MISMATCH; ");
    }
    const double s = seconds_since(t0);
    o.ok = o.ok && s < 1.0;
    o.note << "time " << s << " s";
}

void ac2(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case { int r, p; int want; };
    for (auto c : {Case{2, 1, 1}, Case{4, 2, 4}}) {
        auto inst = pel::make_local_instance(cyclic::make_descriptor(2, 3, 1, 0), pel::PelType::A, c.r, c.p, c.p);
        auto qs = pel::quotient_structure(inst);
        const int e = pel::image_exponent(inst, qs).total;
        bool shape = qs.free_rank == 2 * c.p * c.p && qs.torsion.empty();
        for (const auto& cls : qs.classes) {
            int twisted = 0;
            for (const auto& m : cls.members) {
                shape = shape && m.label.dual.i == (2 - m.label.plain.i) % 2;
                if (m.twist != 0) {
                    ++twisted;
                    shape = shape && m.twist == 1 && m.label.plain.i == 0;
                }
            }
            shape = shape && cls.members.size() == 2 && twisted == 1;
        }
        o.ok = o.ok && e == c.want && shape;
        o.note << "r=" << c.r << ": exponent " << e << " (want " << c.want << "), survivors "
               << (shape ? "ok" : "MISMATCH") << "; ";
    }
    const double s = seconds_since(t0);
    o.ok = o.ok && s < 5.0;
    o.note << "time " << s << " s";
}

void ac3(Outcome& o) {
    int cases = 0;
    for (long long d : {-1LL, -2LL, -3LL, -7LL})
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; q <= 4; ++q) {
                auto g = pel::global_rank_lemma(p, q, d);
                const bool nr = p == q ? (g.n_r && *g.n_r == (p + q) / 2) : !g.n_r;
                bool killed = g.torsion_killed_by_discriminant;
                for (const auto& t : g.torsion) killed = killed && (algebra::BigInt(g.discriminant) % t == 0);
                if (!(g.rank == p * q && nr && killed)) {
                    o.ok = false;
                    o.note << "fails at (" << p << "," << q << ") d=" << d << "; ";
                }
                ++cases;
            }
    o.note << cases << " signature/field cases";
}

void ac4(Outcome& o) {
    domains::Rng rng(4);
    std::uniform_int_distribution<int> coef(-3, 3);
    double worst = 0;
    for (auto e : {lattice::gaussian_embedding(2), lattice::siegel_embedding(2)}) {
        for (int t = 0; t < 100; ++t) {
            Eigen::VectorXd beta(e->rank());
            for (int a = 0; a < e->rank(); ++a) beta(a) = coef(rng);
            const auto z = ks::random_domain_point(*e, rng);
            auto exact = ks::cocycle_jacobian(*e, beta);
            auto fd = ks::cocycle_jacobian_fd(*e, beta, z);
            for (std::size_t k = 0; k < exact.partials.size(); ++k)
                worst = std::max(worst, (exact.partials[k] - fd.partials[k]).cwiseAbs().maxCoeff());
        }
    }
    o.ok = worst < 1e-12;
    o.note << "max |analytic - central difference| = " << worst;
}

void ac5(Outcome& o) {
    double worst = 0;
    for (int r : {2, 4}) {
        auto e = lattice::gaussian_embedding(r);
        auto mu = self_dual(e);
        domains::Rng rng(50 + r);
        for (int t = 0; t < 10; ++t) {
            auto l = ks::lattice_at(e, ks::random_domain_point(*e, rng));
            for (const auto& w : ks::solve_w_vectors(l, mu)) {
                if (w.conjugate) continue;
                worst = std::max(worst, (w.w - ks::closed_form_w(*e, mu.mu, w.i, w.k + r / 2)).cwiseAbs().maxCoeff());
            }
        }
    }
    o.ok = worst <= 1e-10;
    o.note << "max |w - (2 pi i)^-1 mu e_{i,k+r/2}| = " << worst;
}

void ac6(Outcome& o) {
    double worst_c = 0, worst_phi = 0;
    for (auto e : {lattice::gaussian_embedding(2), lattice::gaussian_embedding(4), lattice::gaussian_quaternion_embedding(2)}) {
        auto mu = self_dual(e);
        domains::Rng rng(60);
        auto ref = ks::assemble_phi(ks::lattice_at(e, ks::random_domain_point(*e, rng)), mu);
        auto psi = ks::psi_constant(ref, *e, e->r / 2, e->r / 2);
        const double oracle =
            std::pow(std::abs(mu.mu.determinant()) / std::pow(2.0 * std::numbers::pi, e->n), e->r * e->r / 4.0);
        worst_c = std::max(worst_c, std::abs(std::abs(psi.value) / oracle - 1.0));
        for (int t = 0; t < 5; ++t)
            worst_phi = std::max(worst_phi,
                                 ks::max_difference(ref, ks::assemble_phi(ks::lattice_at(e, ks::random_domain_point(*e, rng)), mu)));
    }
    o.ok = worst_c <= 1e-9 && worst_phi <= 1e-10;
    o.note << "max rel |c| error " << worst_c << ", max phi Z-variation " << worst_phi;
}

void ac7(Outcome& o) {
    double worst_cov = 0, worst_dual = 0;
    for (auto e : {lattice::gaussian_embedding(2), lattice::gaussian_embedding(4), lattice::gaussian_quaternion_embedding(2)}) {
        auto mu = self_dual(e).mu;
        domains::Rng rng(70);
        for (int t = 0; t < 20; ++t) {
            const auto z = ks::random_domain_point(*e, rng);
            auto l = ks::lattice_at(e, z);
            const double dety = std::abs(verifier::detail::imag_part(z).determinant());
            const double predicted = std::pow(std::abs(mu.determinant()), e->r) * std::pow(dety, 2 * e->n);
            worst_cov = std::max(worst_cov, std::abs(lattice::covolume(l) / predicted - 1.0));
            worst_dual = std::max(worst_dual, std::abs(lattice::covolume(l) * lattice::dual_covolume(l) - 1.0));
        }
    }
    o.ok = worst_cov <= 1e-9 && worst_dual <= 1e-9;
    o.note << "max covolume ratio error " << worst_cov << ", max duality error " << worst_dual;
}

void ac8(Outcome& o) {
    for (const char* name : {"unitary-A", "siegel-C", "siegel-C-r2"}) {
        auto c = verifier::find_fixture(name)->config();
        c.samples = 20;
        auto res = verifier::run(c, {.only = "metric.identity"});
        const bool pass = res.reports.size() == 1 && res.reports[0].status == verifier::Status::pass;
        const double dev = pass || res.reports.size() == 1 ? res.reports[0].computed.value("max_deviation", -1.0) : -1.0;
        o.ok = o.ok && pass && dev < 1e-8;
        o.note << name << " r=" << c.r << ": " << dev << "; ";
    }
}

void ac9(Outcome& o) {
    for (auto e : {lattice::gaussian_embedding(2), lattice::siegel_embedding(1), lattice::siegel_embedding(2),
                   lattice::gaussian_quaternion_embedding(2)}) {
        auto l = ks::lattice_at(e, domains::Mat(domains::kI * domains::Mat::Identity(e->type == lattice::LatticeType::A ? e->r / 2 : e->r,
                                                                                         e->type == lattice::LatticeType::A ? e->r / 2 : e->r)));
        auto mu = lattice::solve_self_dual_mu(l, *e);
        const double deg = lattice::polarization_degree(l, mu);
        o.ok = o.ok && deg == 1.0;
        o.note << e->name << " r=" << e->r << " self-dual degree " << deg << "; ";
    }
    auto g = lattice::gaussian_embedding(2);
    auto l = ks::lattice_at(g, domains::Mat(domains::kI * domains::Mat::Identity(1, 1)));
    lattice::RiemannFormDescriptor trace{domains::Mat::Identity(1, 1), g->trace_mode};
    const double deg = lattice::polarization_degree(l, trace);
    const double index_root = std::sqrt(lattice::dual_lattice_index(l, trace));
    o.ok = o.ok && deg == 4.0 && std::abs(index_root - 4.0) < 1e-9;
    o.note << "Q(i) trace form degree " << deg << " (|d_F| = 4), sqrt(index) " << index_root;
}

void ac10(Outcome& o) {
    for (const auto& f : verifier::fixtures()) {
        auto c = f.config();
        const auto a = verifier::report_body(verifier::run(c)).dump();
        const auto b = verifier::report_body(verifier::run(c)).dump();
        o.ok = o.ok && a == b;
        o.note << f.name << (a == b ? " identical; " : " DIFFERS; ");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"AC1 local image exponent, type C (n=2, r=1, q in {2,3,5})", ac1},
        {"AC2 local image exponent, type A (n=2; r=2 and r=4)", ac2},
        {"AC3 global rank lemma, 0 <= p,q <= 4", ac3},
        {"AC4 cocycle Jacobian vs central differences", ac4},
        {"AC5 w-vector closed form, type A n=1", ac5},
        {"AC6 psi constant modulus and phi Z-independence", ac6},
        {"AC7 covolume formula and duality", ac7},
        {"AC8 end-to-end metric identity", ac8},
        {"AC9 polarization degree", ac9},
        {"AC10 deterministic reports", ac10},
    };
    int failed = 0;
    for (const auto& [label, fn] : criteria) {
        Outcome o;
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.note << "exception: " << e.what();
        }
        std::printf("[%s] %s :: %s\n", o.ok ? "PASS" : "FAIL", label, o.note.str().c_str());
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
