// Builds the exceptional-collection category for P(1,1,2) and prints the hom
// dimensions and the m2 table with exact and approximate weights.

#include <iostream>

#include "wpshms/category.hpp"
#include "wpshms/json_io.hpp"

int main() {
    using namespace wpshms;
    const Weights w = build_weights({1, 1, 2});
    const CategoryData cat = build_category(w, 0);

    std::cout << "objects: L_0 .. L_" << exceptional_max_R(w) << "\n\nhom dimensions\n";
    for (const auto& [key, h] : cat.homs)
        std::cout << "  Hom(L_" << key.first << ", L_" << key.second << ") = " << h.dim() << "\n";

    auto k_str = [](const LatticeK& K) {
        std::string s = "(";
        for (std::size_t j = 0; j < K.k.size(); ++j) s += (j ? "," : "") + std::to_string(K.k[j]);
        return s + ")";
    };
    std::cout << "\nm2 products (" << cat.products.size() << " entries)\n";
    for (const auto& e : cat.products) {
        std::cout << "  V_{" << e.src1.a << e.src1.b << ";" << k_str(e.src1.K) << "}"
                  << " * V_{" << e.src2.a << e.src2.b << ";" << k_str(e.src2.K) << "} -> V_{"
                  << e.dst.a << e.dst.b << ";" << k_str(e.dst.K) << "}  weight " << e.weight.str()
                  << "  (" << to_float(e.weight) << ")\n";
    }
    return 0;
}
