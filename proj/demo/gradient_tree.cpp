// Integrates the gradient tree of the P(1,1,2) composition
// V_{01;(0,1,0)} * V_{13;(0,0,1)} and compares the numeric root and disk area
// with their exact counterparts.

#include <iostream>

#include "wpshms/flow.hpp"

int main() {
    using namespace wpshms;
    const Weights w = build_weights({1, 1, 2});
    const LatticeK k_ab{{0, 1, 0}};
    const LatticeK k_bc{{0, 0, 1}};
    const GradientTree tree = build_gradient_tree(w, 0, 1, 3, k_ab, k_bc);

    std::cout << "leaves  v_ab = (" << tree.v_ab[0] << ", " << tree.v_ab[1] << ")"
              << "   v_bc = (" << tree.v_bc[0] << ", " << tree.v_bc[1] << ")\n";
    std::cout << "root    exact (" << tree.v_ac_exact[0] << ", " << tree.v_ac_exact[1]
              << ")   numeric (" << tree.meet_numeric[0] << ", " << tree.meet_numeric[1] << ")\n";
    std::cout << "meet residual     " << tree.meet_residual << "\n";
    std::cout << "edge rk4 error    " << tree.edge_rk4_error << "\n";
    std::cout << "disk area         numeric " << tree.area_numeric << "   exact "
              << tree.area_exact_float << "\n";
    return tree.meet_residual < 1e-8 ? 0 : 1;
}
