// Evaluate a density two ways and take a few norms.

#include <iostream>

#include "normsys/normsys.hpp"

using namespace normsys;

int main() {
    // x1 - x2 - x3 + x4 = 0 over F_2, functions on G = F_2^3
    LinearSystem L = u2_system(2);
    Group g(2, 3);

    FunctionOnG f = hyperplane_indicator(g);
    std::cout << "t_direct  = " << t_direct(L, std::vector<FunctionOnG>(4, f)).real() << "\n";
    std::cout << "t_fourier = " << t_fourier(L, std::vector<FunctionOnG>(4, f)).real() << "\n";
    std::cout << "expected q^(m-k) = " << 1.0 / 8.0 << "\n\n";

    Rng rng(7);
    FunctionOnG h = random_real(g, rng);
    std::cout << "random h: ||h||_L = " << norm_L(L, h)
              << ", weak = " << weak_norm_L(L, h)
              << ", U2 = " << u2_norm(h) << "\n";
    std::cout << "for this system the L-norm and the U2 norm coincide.\n";
    return 0;
}
