// Image exponent of the quaternionic type C example at a few primes, and the
// survivor classes of the tensor quotient.
#include <iostream>

#include "pelks/pel_modules.hpp"

int main() {
    using namespace pelks;
    for (std::uint32_t q : {2u, 3u, 5u}) {
        auto d = cyclic::make_descriptor(2, q, 1, 0);
        auto inst = pel::make_local_instance(d, pel::PelType::C, 1);
        auto qs = pel::quotient_structure(inst);
        std::cout << "q = " << q << "  exponent " << pel::image_exponent(inst, qs).total << "  free rank "
                  << qs.free_rank << "\n";
        for (const auto& cls : qs.classes) {
            std::cout << "  class of " << pel::label_string(cls.generator) << ":";
            for (const auto& m : cls.members) std::cout << "  " << pel::label_string(m.label) << " (pi^" << m.twist << ")";
            std::cout << "\n";
        }
    }
}
