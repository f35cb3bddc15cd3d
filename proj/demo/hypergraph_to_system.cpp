// Compile graphs into linear systems and look at their structure.

#include <iostream>

#include "normsys/normsys.hpp"

using namespace normsys;

int main() {
    Hypergraph k22 = complete_bipartite(2, 2);
    HSystem hs = build_h_system(k22, 5);
    std::cout << "K_{2,2} over F_5 compiles to:\n" << serialize_matrix(hs.system.matrix());
    std::cout << "rank " << hs.system.m() << " = |E| - |V| + components = "
              << k22.edge_count() - k22.vertex_count + k22.component_count() << "\n\n";

    // its cycle space is spanned by the single 4-cycle
    GraphCircuits circuits = graph_circuits(k22, 5);
    std::cout << k22.edge_count() << " edges, " << circuits.cycles.size() << " simple cycle(s)\n";

    Hypergraph k4 = complete_graph(4);
    Hypergraph sub = one_subdivision(k4);
    HSystem sub_sys = build_h_system(sub, 5);
    std::cout << "\n1-subdivided K_4: " << sub_sys.system.m() << " x " << sub_sys.system.k()
              << " system\n";

    // canonical forms identify it with the stock reference matrix
    bool same = isomorphic(sub_sys.system, k4_subdivided_reference(5));
    std::cout << "isomorphic to the reference matrix: " << (same ? "yes" : "no") << "\n";
    return 0;
}
