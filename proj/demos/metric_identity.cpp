// The metric comparison on Q(i), r = 2 at a handful of random points.
#include <iomanip>
#include <iostream>

#include "pelks/ks_pipeline.hpp"

int main() {
    using namespace pelks;
    auto e = lattice::gaussian_embedding(2);
    domains::Rng rng(11);
    auto base = ks::lattice_at(e, ks::random_domain_point(*e, rng));
    auto mu = lattice::solve_self_dual_mu(base, *e);
    std::cout << "self-dual mu = " << mu.mu(0, 0) << "\n" << std::setprecision(15);
    auto rep = ks::metric_identity_check(e, mu, 5, 11);
    for (const auto& s : rep.points)
        std::cout << "|c| " << s.psi_modulus << "  Pet " << s.petersson << "  Fal " << s.faltings << "  ratio " << s.ratio
                  << "\n";
    std::cout << "max |ratio - 1| = " << rep.max_deviation << "\n";
}
