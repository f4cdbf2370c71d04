#pragma once

/// Morphism-space bases as lattice points of { k >= 0, Σ q_j k_j = d }, their
/// degrees, and the strongly-exceptional bound R = Σ q_j - 1.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wpshms/lattice.hpp"

namespace wpshms {

struct LatticeK {
    std::vector<std::int64_t> k; // length n+1, all >= 0

    std::int64_t degree(const Weights& w) const {
        std::int64_t d = 0;
        for (std::size_t j = 0; j < k.size(); ++j) d += w.q[j] * k[j];
        return d;
    }

    bool interior() const {
        for (std::int64_t kj : k)
            if (kj < 1) return false;
        return true;
    }

    friend bool operator==(const LatticeK&, const LatticeK&) = default;
    friend auto operator<=>(const LatticeK&, const LatticeK&) = default;

    friend LatticeK operator+(const LatticeK& a, const LatticeK& b) {
        if (a.k.size() != b.k.size()) throw std::invalid_argument("LatticeK size mismatch");
        LatticeK out = a;
        for (std::size_t j = 0; j < b.k.size(); ++j) out.k[j] += b.k[j];
        return out;
    }
};

/// All K = (k0,...,kn) >= 0 with Σ q_j k_j = d, in lexicographic order.
inline std::vector<LatticeK> weighted_compositions(const Weights& w, std::int64_t d) {
    if (d < 0) throw std::invalid_argument("weighted_compositions: negative degree");
    std::vector<LatticeK> out;
    std::vector<std::int64_t> k(w.q.size(), 0);
    // Recursive descent over coordinates, pruning on the remaining degree;
    // ascending k_j gives lexicographic output order.
    auto rec = [&](auto&& self, std::size_t j, std::int64_t rem) -> void {
        if (j + 1 == k.size()) {
            if (rem % w.q[j] == 0) {
                k[j] = rem / w.q[j];
                out.push_back(LatticeK{k});
                k[j] = 0;
            }
            return;
        }
        for (std::int64_t kj = 0; kj * w.q[j] <= rem; ++kj) {
            k[j] = kj;
            self(self, j + 1, rem - kj * w.q[j]);
        }
        k[j] = 0;
    };
    rec(rec, 0, d);
    return out;
}

/// dim S_d of the polynomial ring graded by deg z_j = q_j, by brute-force
/// monomial enumeration over the exponent boxes 0 <= k_j <= floor(d/q_j).
/// Kept independent of weighted_compositions: this is the oracle side.
inline std::int64_t hilbert_dim_oracle(const Weights& w, std::int64_t d) {
    if (d < 0) throw std::invalid_argument("hilbert_dim_oracle: negative degree");
    const std::size_t m = w.q.size();
    std::int64_t count = 0;
    auto rec = [&](auto&& self, std::size_t j, std::int64_t deg) -> void {
        if (deg > d) return; // no later exponent can lower the degree
        if (j == m) {
            if (deg == d) ++count;
            return;
        }
        const std::int64_t box = d / w.q[j];
        for (std::int64_t kj = 0; kj <= box; ++kj) self(self, j + 1, deg + kj * w.q[j]);
    };
    rec(rec, 0, 0);
    return count;
}

/// Largest R such that (L_q,...,L_{q+R}) is strongly exceptional: Σ q_j - 1.
inline std::int64_t exceptional_max_R(const Weights& w) {
    std::int64_t s = 0;
    for (std::int64_t qj : w.q) s += qj;
    return s - 1;
}

struct GeneratorClass {
    bool is_generator = false;
    int degree = 0;
};

/// Morse degree of the intersection component labeled K between L_a and L_b.
/// a<b and the identity are degree 0; for a>b the component is a generator
/// only when it is interior (all k_j >= 1), with degree n = dim S_v.
inline GeneratorClass generator_degree(const Weights& w, std::int64_t a, std::int64_t b,
                                       const LatticeK& K) {
    const std::int64_t d = (a == b) ? 0 : (b > a ? b - a : a - b);
    if (K.degree(w) != d)
        throw std::invalid_argument("generator_degree: K inconsistent with |b-a|");
    if (a <= b) return {true, 0};
    if (K.interior()) return {true, static_cast<int>(w.n())};
    return {false, 0};
}

/// Basis morphism V_{ab;K}: intersection point v in chart coordinates (absent
/// for the identity), Morse degree, and the chart the point lives in.
struct MorphismGen {
    std::int64_t a = 0;
    std::int64_t b = 0;
    LatticeK K;
    std::optional<Vec> v;
    int degree = 0;
    int chart = 0;

    bool is_identity() const { return a == b; }
};

/// Chart-i coordinates of the intersection point v_{ab;K}:
/// x^{il} = 2 q0...qn * k_l / |b-a| for l != i.
inline Vec intersection_point(const Weights& w, std::int64_t a, std::int64_t b, const LatticeK& K,
                              int chart) {
    if (a == b) throw std::invalid_argument("intersection_point: a == b has no point");
    const std::int64_t d = b > a ? b - a : a - b;
    if (K.degree(w) != d)
        throw std::invalid_argument("intersection_point: K degree mismatch");
    const Chart c = chart_polytope(w, chart);
    Vec x;
    for (int l : c.coord_labels()) x.push_back(Rational(w.scale * K.k[l], d));
    if (!in_closed_polytope(w, chart, x))
        throw std::logic_error("intersection point left the polytope");
    return x;
}

struct HomBasis {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::vector<MorphismGen> gens;

    std::size_t dim() const { return gens.size(); }
};

/// Basis of Mo(P)(L_a, L_b) restricted to an exceptional range: identity for
/// a=b, the degree-zero generators for a<b, empty for a>b (boundary components
/// of backward morphisms are not generators).
inline HomBasis hom_basis(const Weights& w, std::int64_t a, std::int64_t b, int chart = 0) {
    HomBasis h;
    h.a = a;
    h.b = b;
    if (a == b) {
        LatticeK k0{std::vector<std::int64_t>(w.q.size(), 0)};
        h.gens.push_back(MorphismGen{a, b, k0, std::nullopt, 0, chart});
        return h;
    }
    if (a > b) {
        for (const auto& K : weighted_compositions(w, a - b)) {
            const auto g = generator_degree(w, a, b, K);
            if (!g.is_generator) continue;
            h.gens.push_back(
                MorphismGen{a, b, K, intersection_point(w, a, b, K, chart), g.degree, chart});
        }
        return h;
    }
    for (const auto& K : weighted_compositions(w, b - a)) {
        const auto g = generator_degree(w, a, b, K);
        h.gens.push_back(
            MorphismGen{a, b, K, intersection_point(w, a, b, K, chart), g.degree, chart});
    }
    return h;
}

} // namespace wpshms
