// The counterexample constructions on their canonical targets.

#include <iostream>

#include "normsys/normsys.hpp"

using namespace normsys;

int main() {
    // odd girth: x1 + x2 + x3 = 0 over F_3 is not Sidorenko
    {
        LinearSystem L(FqMatrix(Fq(3), {{1, 1, 1}}));
        OddGirthFalsifier r = odd_girth_falsifier(L);
        std::cout << "odd girth " << r.girth << ": t(f_alpha) = " << r.t_value
                  << " < 1 at alpha = " << r.alpha << "\n";
    }

    // non-Schatten equation: x1 + 2 x2 = x3 + 2 x4 over F_5 breaks the
    // rainbow Hoelder inequality
    {
        LinearSystem L(FqMatrix(Fq(5), {{1, 2, -1, -2}}));
        SchattenFalsifier r = schatten_falsifier(L);
        std::cout << "schatten: t = " << r.lhs << " > " << r.rhs
                  << " = product of norms (eps = " << r.epsilon << ")\n";

        // the same equation is paired, so it also has a non-forcing witness
        ForcingWitness w = forcing_witness_single_eq(L);
        std::cout << "forcing: t = " << w.t_value << " vs (E f)^k = " << w.mean_pow
                  << ", distance from constants " << w.distance << "\n";
    }

    // x1 - x2 - x3 + x4 = 0 is norming; the searches come back empty-handed
    {
        LinearSystem L = u2_system(5);
        Group g(5, 1);
        HolderSearchOutcome h = holder_search(L, g, 50, Rng(1));
        std::cout << "u2 equation: best Hoelder ratio " << h.best_ratio
                  << " (certified violation: " << (h.certified ? "yes" : "no") << ")\n";
    }
    return 0;
}
