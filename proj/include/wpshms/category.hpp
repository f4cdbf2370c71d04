#pragma once

/// Lagrangian lifts, exact log-affine potentials, the m2 product with exact
/// e^{-A} weights, and assembly of the category on the exceptional collection
/// L_q, ..., L_{q+R}, R = Σ q_j - 1.
///
/// Conventions: sections and potentials are stored in units of 2π (a section
/// value y/2π, a potential f/2π), so the product weight is
/// exp(-(f_ab + f_bc)(v_ac)/2π) and the mirror compatibility below is an exact
/// identity rather than one up to a uniform rescaling of areas.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wpshms/hom.hpp"
#include "wpshms/parallel.hpp"

namespace wpshms {

// ---------------------------------------------------------------------------
// Lagrangian lifts

/// Lift s_{a;Ka} of the section mirror to O(a): slope a/(2 q0...qn) with
/// integer offsets Ka satisfying Σ q_j (Ka)_j = a.
struct LagrangianLift {
    std::int64_t a = 0;
    std::vector<std::int64_t> Ka;
};

/// Deterministic representative u with Σ q_j u_j = 1 by left-folded extended
/// gcd. Any other representative differs by the kernel of Σ q_j(-) and leads
/// to the same category data (tested, not assumed).
inline std::vector<std::int64_t> gcd_representative(const Weights& w) {
    // extended gcd of (g, b), returning (gcd, x, y) with x*g + y*b = gcd
    auto ext = [](std::int64_t a, std::int64_t b) {
        std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
        while (b != 0) {
            const std::int64_t q = a / b;
            std::int64_t t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
            t = y0 - q * y1;
            y0 = y1;
            y1 = t;
        }
        return std::array<std::int64_t, 3>{a, x0, y0};
    };
    std::vector<std::int64_t> u(w.q.size(), 0);
    std::int64_t g = w.q[0];
    u[0] = 1;
    for (std::size_t j = 1; j < w.q.size(); ++j) {
        const auto [g2, x, y] = ext(g, w.q[j]);
        for (std::size_t t = 0; t < j; ++t) u[t] *= x;
        u[j] = y;
        g = g2;
    }
    if (g != 1) throw std::logic_error("gcd_representative: weights not coprime");
    return u;
}

inline LagrangianLift lift_with_representative(const Weights& w, std::int64_t a,
                                               const std::vector<std::int64_t>& u) {
    std::int64_t dot = 0;
    for (std::size_t j = 0; j < u.size(); ++j) dot += w.q[j] * u[j];
    if (dot != 1) throw std::invalid_argument("lift representative must satisfy sum(q*u) = 1");
    LagrangianLift s;
    s.a = a;
    for (std::int64_t uj : u) s.Ka.push_back(a * uj);
    return s;
}

inline LagrangianLift canonical_lift(const Weights& w, std::int64_t a) {
    return lift_with_representative(w, a, gcd_representative(w));
}

/// Lift with explicit integer offsets Ka, Σ q_j (Ka)_j = a.
inline LagrangianLift lift_from_offsets(const Weights& w, std::int64_t a,
                                        std::vector<std::int64_t> Ka) {
    std::int64_t dot = 0;
    for (std::size_t j = 0; j < Ka.size(); ++j) dot += w.q[j] * Ka[j];
    if (Ka.size() != w.q.size() || dot != a)
        throw std::invalid_argument("lift offsets must satisfy sum(q*Ka) = a");
    return LagrangianLift{a, std::move(Ka)};
}

/// Section value y/2π of the lift over chart i at x:
/// y^{(i)l}/2π = (a/(2 q0...qn)) x^{il} - (Ka)_l, l != i.
inline Vec section_value(const Weights& w, const LagrangianLift& s, int chart, const Vec& x) {
    if (!in_closed_polytope(w, chart, x))
        throw std::domain_error("section_value: point outside the closed polytope");
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    Vec y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        y[j] = Rational(s.a, w.scale) * x[j] - s.Ka[labels[j]];
    return y;
}

// ---------------------------------------------------------------------------
// Potentials

/// Log-affine function on chart coordinates, in units of f/2π:
///   coeff_boundary * log(2Πq - Σ_{l!=i} q_l x^{il})
///   + Σ_{l!=i} coeff[l] * log(q_l x^{il})
///   + constant.
/// Terms with zero coefficient are absent (0·log 0 = 0 at boundary points).
struct Potential {
    int chart = 0;
    Rational coeff_boundary;
    std::vector<Rational> coeff; // indexed by chart coordinate position
    LogValue constant;
    // polytope data needed for evaluation
    std::vector<std::int64_t> ql; // q_l per chart coordinate
    std::int64_t scale = 0;
};

/// Exact value of f/2π at a rational point. Every log argument under a
/// nonzero coefficient must be positive.
inline LogValue eval_potential(const Potential& p, const Vec& x) {
    if (x.size() != p.coeff.size()) throw std::invalid_argument("eval_potential: dimension mismatch");
    LogValue acc = p.constant;
    Rational boundary = p.scale;
    for (std::size_t j = 0; j < x.size(); ++j) boundary -= p.ql[j] * x[j];
    auto add_term = [&acc](const Rational& coeff, const Rational& arg) {
        if (coeff == 0) return; // absent term
        if (arg <= 0) throw std::domain_error("eval_potential: nonpositive log argument");
        acc = acc + log_of(factor_positive(arg)).scaled(coeff);
    };
    add_term(p.coeff_boundary, boundary);
    for (std::size_t j = 0; j < x.size(); ++j) add_term(p.coeff[j], p.ql[j] * x[j]);
    return acc;
}

// Potential of a single lift s_{a;Ka} over the chart. Its additive constant
// is a fixed but arbitrary choice ((a/scale)·log scale); only differences of
// lift potentials carry meaning, see relative_potential.
inline Potential lift_potential(const Weights& w, const LagrangianLift& s, int chart) {
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    Potential p;
    p.chart = chart;
    p.scale = w.scale;
    p.coeff_boundary = Rational(-w.q[chart] * s.Ka[chart], w.scale);
    for (int l : labels) {
        p.coeff.push_back(Rational(-w.q[l] * s.Ka[l], w.scale));
        p.ql.push_back(w.q[l]);
    }
    p.constant = log_of(factor_positive(w.scale)).scaled(Rational(s.a, w.scale));
    return p;
}

/// Potential f_{ab;K}/2π associated to V_{ab;K}: the difference of lift
/// potentials with K_b - K_a = K, normalized to vanish at v_{ab;K}.
inline Potential relative_potential(const Weights& w, std::int64_t a, std::int64_t b,
                                    const LatticeK& K, int chart) {
    if (a >= b) throw std::invalid_argument("relative_potential: requires a < b");
    if (K.degree(w) != b - a)
        throw std::invalid_argument("relative_potential: K degree mismatch");
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    Potential p;
    p.chart = chart;
    p.scale = w.scale;
    p.coeff_boundary = Rational(-w.q[chart] * K.k[chart], w.scale);
    for (int l : labels) {
        p.coeff.push_back(Rational(-w.q[l] * K.k[l], w.scale));
        p.ql.push_back(w.q[l]);
    }
    p.constant = log_of(factor_positive(w.scale)).scaled(Rational(b - a, w.scale));
    // Pin f(v_{ab;K}) = 0.
    const Vec v = intersection_point(w, a, b, K, chart);
    p.constant = p.constant - eval_potential(p, v);
    return p;
}

// ---------------------------------------------------------------------------
// The m2 product

/// m2(V_ab, V_bc) for a <= b <= c: the target is V_{ac;K_ab+K_bc} and the
/// weight exp(-(f_ab + f_bc)(v_ac)) in f/2π units; identities compose with
/// weight 1.
inline std::pair<MorphismGen, PosExact> compose(const Weights& w, const MorphismGen& g_ab,
                                                const MorphismGen& g_bc) {
    if (g_ab.b != g_bc.a) throw std::invalid_argument("compose: labels do not chain");
    if (g_ab.chart != g_bc.chart) throw std::invalid_argument("compose: chart mismatch");
    if (g_ab.a > g_ab.b || g_bc.a > g_bc.b)
        throw std::invalid_argument("compose: requires a <= b <= c");
    if (g_ab.is_identity()) return {g_bc, PosExact::one()};
    if (g_bc.is_identity()) return {g_ab, PosExact::one()};

    const std::int64_t a = g_ab.a, b = g_ab.b, c = g_bc.b;
    const LatticeK K_ac = g_ab.K + g_bc.K;
    const Vec v_ac = intersection_point(w, a, c, K_ac, g_ab.chart);
    const LogValue area = eval_potential(relative_potential(w, a, b, g_ab.K, g_ab.chart), v_ac) +
                          eval_potential(relative_potential(w, b, c, g_bc.K, g_bc.chart), v_ac);
    MorphismGen target{a, c, K_ac, v_ac, 0, g_ab.chart};
    return {std::move(target), exp_of(-area)};
}

/// Exact rational identity v_ac = ((b-a) v_ab + (c-b) v_bc) / (c-a): the
/// target point divides the segment [v_ab, v_bc] in the ratio c-b : b-a.
inline bool ratio_check(const Weights& w, std::int64_t a, std::int64_t b, std::int64_t c,
                        const LatticeK& K_ab, const LatticeK& K_bc, int chart = 0) {
    if (!(a < b && b < c)) throw std::invalid_argument("ratio_check: requires a < b < c");
    const Vec v_ab = intersection_point(w, a, b, K_ab, chart);
    const Vec v_bc = intersection_point(w, b, c, K_bc, chart);
    const Vec v_ac = intersection_point(w, a, c, K_ab + K_bc, chart);
    for (std::size_t j = 0; j < v_ac.size(); ++j) {
        const Rational lhs = v_ac[j] * (c - a);
        const Rational rhs = v_ab[j] * (b - a) + v_bc[j] * (c - b);
        if (lhs != rhs) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Category assembly

struct ProductEntry {
    MorphismGen src1; // V_ab
    MorphismGen src2; // V_bc
    MorphismGen dst;  // V_ac
    PosExact weight;
};

struct CategoryData {
    Weights weights;
    std::int64_t base = 0;
    int chart = 0;
    std::vector<LagrangianLift> objects;                      // L_base .. L_{base+R}
    std::map<std::pair<std::int64_t, std::int64_t>, HomBasis> homs; // all a <= b pairs
    std::vector<ProductEntry> products;                       // all a < b < c triples

    const HomBasis& hom(std::int64_t a, std::int64_t b) const { return homs.at({a, b}); }

    const ProductEntry* find_product(const MorphismGen& g1, const MorphismGen& g2) const {
        for (const auto& e : products)
            if (e.src1.a == g1.a && e.src1.b == g1.b && e.src1.K == g1.K && e.src2.a == g2.a &&
                e.src2.b == g2.b && e.src2.K == g2.K)
                return &e;
        return nullptr;
    }
};

/// Builds Mo_E(P) for E = (L_q, ..., L_{q+R}), R = Σ q_j - 1: objects, hom
/// bases, and the full m2 table with exact weights. Product triples are
/// evaluated on the worker pool.
inline CategoryData build_category(const Weights& w, std::int64_t base, int chart = 0,
                                   std::optional<std::vector<std::int64_t>> representative = {}) {
    CategoryData cat;
    cat.weights = w;
    cat.base = base;
    cat.chart = chart;
    const std::vector<std::int64_t> u = representative ? *representative : gcd_representative(w);
    const std::int64_t R = exceptional_max_R(w);
    for (std::int64_t a = base; a <= base + R; ++a)
        cat.objects.push_back(lift_with_representative(w, a, u));
    for (std::int64_t a = base; a <= base + R; ++a)
        for (std::int64_t b = a; b <= base + R; ++b) cat.homs[{a, b}] = hom_basis(w, a, b, chart);

    std::vector<std::pair<const MorphismGen*, const MorphismGen*>> tasks;
    for (std::int64_t a = base; a <= base + R; ++a)
        for (std::int64_t b = a + 1; b <= base + R; ++b)
            for (std::int64_t c = b + 1; c <= base + R; ++c)
                for (const auto& g1 : cat.hom(a, b).gens)
                    for (const auto& g2 : cat.hom(b, c).gens) tasks.emplace_back(&g1, &g2);

    cat.products.resize(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        auto [dst, weight] = compose(w, *tasks[i].first, *tasks[i].second);
        cat.products[i] = ProductEntry{*tasks[i].first, *tasks[i].second, std::move(dst),
                                       std::move(weight)};
    });
    return cat;
}

/// Exact associativity of the m2 table: for every composable quadruple the
/// two association orders give the same target and, by pe_eq, the same weight.
inline bool check_associativity(const CategoryData& cat) {
    const Weights& w = cat.weights;
    const std::int64_t lo = cat.base;
    const std::int64_t hi = cat.base + exceptional_max_R(w);
    for (std::int64_t a = lo; a <= hi; ++a)
        for (std::int64_t b = a; b <= hi; ++b)
            for (std::int64_t c = b; c <= hi; ++c)
                for (std::int64_t d = c; d <= hi; ++d)
                    for (const auto& g1 : cat.hom(a, b).gens)
                        for (const auto& g2 : cat.hom(b, c).gens)
                            for (const auto& g3 : cat.hom(c, d).gens) {
                                const auto [t12, w12] = compose(w, g1, g2);
                                const auto [left, wl] = compose(w, t12, g3);
                                const auto [t23, w23] = compose(w, g2, g3);
                                const auto [right, wr] = compose(w, g1, t23);
                                if (left.K != right.K || left.a != right.a || left.b != right.b)
                                    return false;
                                if (!pe_eq(w12 * wl, w23 * wr)) return false;
                            }
    return true;
}

} // namespace wpshms
