#pragma once

/// Mirror-side generators: the monomial-type sections psi_{ab;K}, their
/// max-modulus rescaling constants c_{ab;K}, and the generator-wise functor
/// V_{ab;K} -> e_{ab;K} = c·psi. Phases e^{i K·y} are carried as the integer
/// label K only; all identities here factor into an exact modulus identity
/// times equality of phase labels.
///
/// |psi_{ab;K}| at x in chart i is
///   ((2Πq - Σ_{l!=i} q_l x^{il})/2Πq)^{q_i k_i / 2Πq}
///   · Π_{l!=i} (q_l x^{il} / 2Πq)^{q_l k_l / 2Πq},
/// with 0^0 = 1 for vanishing exponents, so it extends to the closed polytope.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wpshms/category.hpp"

namespace wpshms {

/// Exact |psi_{ab;K}(x)| as a product of prime powers.
inline PosExact psi_abs_at(const Weights& w, std::int64_t a, std::int64_t b, const LatticeK& K,
                           int chart, const Vec& x) {
    const std::int64_t d = (a == b) ? 0 : (b > a ? b - a : a - b);
    if (K.degree(w) != d) throw std::invalid_argument("psi_abs_at: K degree mismatch");
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    if (x.size() != labels.size()) throw std::invalid_argument("psi_abs_at: dimension mismatch");

    std::vector<std::pair<PosExact, Rational>> factors;
    auto push = [&](const Rational& base, std::int64_t qk) {
        if (qk == 0) return; // 0^0 = 1
        if (base <= 0) throw std::domain_error("psi_abs_at: nonpositive base under nonzero exponent");
        factors.emplace_back(factor_positive(base), Rational(qk, w.scale));
    };
    Rational boundary = w.scale;
    for (std::size_t j = 0; j < x.size(); ++j) boundary -= w.q[labels[j]] * x[j];
    push(boundary / w.scale, w.q[chart] * K.k[chart]);
    for (std::size_t j = 0; j < x.size(); ++j)
        push(w.q[labels[j]] * x[j] / w.scale, w.q[labels[j]] * K.k[labels[j]]);
    return pe_mul_pow(factors);
}

/// Rescaling constant c_{ab;K} = 1/|psi(v_{ab;K})|, which normalizes the
/// sup of |c·psi| over P to 1, attained exactly at v_{ab;K}.
inline PosExact rescale_const(const Weights& w, std::int64_t a, std::int64_t b, const LatticeK& K,
                              int chart = 0) {
    if (a == b) return PosExact::one(); // identity: e = 1
    if (a > b) throw std::invalid_argument("rescale_const: requires a <= b");
    const Vec v = intersection_point(w, a, b, K, chart);
    return psi_abs_at(w, a, b, K, chart, v).inverse();
}

/// Structure constant of e_{ab}·e_{bc} against the basis element e_{ac}:
/// c_ab·c_bc / c_ac with K_ac = K_ab + K_bc (psi itself is monomial, so
/// psi_ab·psi_bc = psi_ac on the nose).
inline PosExact mirror_structure_constant(const Weights& w, std::int64_t a, std::int64_t b,
                                          std::int64_t c, const LatticeK& K_ab,
                                          const LatticeK& K_bc, int chart = 0) {
    if (a == b) return PosExact::one();
    if (b == c) return PosExact::one();
    if (!(a < b && b < c))
        throw std::invalid_argument("mirror_structure_constant: requires a <= b <= c");
    const PosExact c_ab = rescale_const(w, a, b, K_ab, chart);
    const PosExact c_bc = rescale_const(w, b, c, K_bc, chart);
    const PosExact c_ac = rescale_const(w, a, c, K_ab + K_bc, chart);
    return c_ab * c_bc / c_ac;
}

/// Mirror generator e_{ab;K} = c·psi with its phase label.
struct MirrorGen {
    std::int64_t a = 0;
    std::int64_t b = 0;
    LatticeK K;
    PosExact c;
    int chart = 0;
    std::vector<std::int64_t> phase_K; // label of e^{i K·y}

    static MirrorGen of(const Weights& w, const MorphismGen& g) {
        MirrorGen m;
        m.a = g.a;
        m.b = g.b;
        m.K = g.K;
        m.chart = g.chart;
        m.c = rescale_const(w, g.a, g.b, g.K, g.chart);
        m.phase_K = g.K.k;
        return m;
    }
};

// ---------------------------------------------------------------------------
// Functor verification

struct FunctorCheckItem {
    std::string kind;                 // "product" or "pointwise"
    std::vector<std::int64_t> labels; // (a,b,c) for products, (a,b) for pointwise
    std::string expected;
    std::string got;
    bool pass = false;

    std::string label() const {
        std::string s = "(";
        for (std::size_t j = 0; j < labels.size(); ++j)
            s += (j ? "," : "") + std::to_string(labels[j]);
        return s + ")";
    }
};

struct FunctorReport {
    std::vector<FunctorCheckItem> items;

    bool pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& it : items) n += !it.pass;
        return n;
    }
};

/// Checks, in exact arithmetic, that the generator-wise functor intertwines
/// m2 with the mirror product (weight = c_ab·c_bc/c_ac for every table entry)
/// and that exp(-f_ab/2π) = c·|psi| pointwise at random interior points.
/// Sample points are drawn up front so results do not depend on the worker
/// count; items are then evaluated in parallel.
inline FunctorReport verify_functor(const CategoryData& cat, int samples_per_gen = 5,
                                    std::uint64_t seed = 0) {
    const Weights& w = cat.weights;

    struct PointTask {
        const MorphismGen* gen;
        Vec x;
    };
    std::mt19937_64 rng(seed);
    std::vector<PointTask> point_tasks;
    for (const auto& [pair, hom] : cat.homs)
        for (const auto& g : hom.gens) {
            if (g.is_identity()) continue; // identity maps to the constant 1
            for (int s = 0; s < samples_per_gen; ++s)
                point_tasks.push_back({&g, random_interior_point(w, g.chart, rng)});
        }

    FunctorReport rep;
    rep.items.resize(cat.products.size() + point_tasks.size());
    parallel_for(cat.products.size(), [&](std::size_t i) {
        const ProductEntry& e = cat.products[i];
        const PosExact mirror = mirror_structure_constant(w, e.src1.a, e.src1.b, e.src2.b,
                                                          e.src1.K, e.src2.K, e.src1.chart);
        FunctorCheckItem& item = rep.items[i];
        item.kind = "product";
        item.labels = {e.src1.a, e.src1.b, e.src2.b};
        item.expected = e.weight.str();
        item.got = mirror.str();
        item.pass = pe_eq(e.weight, mirror) && e.dst.K == e.src1.K + e.src2.K;
    });
    parallel_for(point_tasks.size(), [&](std::size_t i) {
        const MorphismGen& g = *point_tasks[i].gen;
        const Vec& x = point_tasks[i].x;
        const PosExact c = rescale_const(w, g.a, g.b, g.K, g.chart);
        const PosExact lhs =
            exp_of(-eval_potential(relative_potential(w, g.a, g.b, g.K, g.chart), x));
        const PosExact rhs = c * psi_abs_at(w, g.a, g.b, g.K, g.chart, x);
        FunctorCheckItem& item = rep.items[cat.products.size() + i];
        item.kind = "pointwise";
        item.labels = {g.a, g.b};
        item.expected = lhs.str();
        item.got = rhs.str();
        item.pass = pe_eq(lhs, rhs);
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Max-modulus scan

struct ScanReport {
    bool max_at_v_exact = false;  // pe_eq(c·|psi(v)|, 1)
    bool bounded_by_one = false;  // to_float <= 1 + 1e-12 on the whole grid
    bool strict_outside = false;  // to_float < 1 on every grid point off v's cell
    double margin_outside = 0.0;  // 1 - max|c·psi| over grid points off v's cell
    std::size_t grid_points = 0;

    bool pass() const { return max_at_v_exact && bounded_by_one && strict_outside; }
};

/// Scans |c·psi| on the barycentric grid t/m over P: verifies the sup is 1,
/// attained exactly (pe_eq) at v_{ab;K} and strictly below 1 away from its
/// grid cell.
inline ScanReport max_modulus_scan(const Weights& w, std::int64_t a, std::int64_t b,
                                   const LatticeK& K, int chart, int m) {
    if (a >= b) throw std::invalid_argument("max_modulus_scan: requires a < b");
    if (m < 2) throw std::invalid_argument("max_modulus_scan: grid too coarse");
    const std::size_t n = w.n();
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    const PosExact scale_c = rescale_const(w, a, b, K, chart);
    const Vec v = intersection_point(w, a, b, K, chart);

    // Barycentric position of v: tau_j = q_j k_j / (b-a) over all n+1 labels
    // (including the slack coordinate of the chart vertex).
    std::vector<Rational> tau;
    tau.push_back(Rational(w.q[chart] * K.k[chart], b - a));
    for (int l : labels) tau.push_back(Rational(w.q[l] * K.k[l], b - a));

    ScanReport rep;
    rep.max_at_v_exact = pe_eq(scale_c * psi_abs_at(w, a, b, K, chart, v), PosExact::one());
    rep.bounded_by_one = true;
    rep.strict_outside = true;
    double worst_outside = 0.0;

    // |c·psi| as a float; on the facets where an active base vanishes psi
    // extends by 0 (exponents are nonnegative), which PosExact cannot carry.
    auto float_val = [&](const Vec& x) -> double {
        Rational boundary = w.scale;
        for (std::size_t j = 0; j < n; ++j) boundary -= w.q[labels[j]] * x[j];
        if (boundary == 0 && w.q[chart] * K.k[chart] > 0) return 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] == 0 && w.q[labels[j]] * K.k[labels[j]] > 0) return 0.0;
        return to_float(scale_c * psi_abs_at(w, a, b, K, chart, x));
    };

    std::vector<std::int64_t> t(n, 0);
    auto visit = [&](const std::vector<std::int64_t>& tt, std::int64_t slack) {
        Vec x(n);
        for (std::size_t j = 0; j < n; ++j)
            x[j] = Rational(tt[j], m) * Rational(w.scale, w.q[labels[j]]);
        const double val = float_val(x);
        ++rep.grid_points;
        if (val > 1.0 + 1e-12) rep.bounded_by_one = false;
        bool in_cell = abs(Rational(slack, m) - tau[0]) * m <= 1;
        for (std::size_t j = 0; j < n && in_cell; ++j)
            in_cell = abs(Rational(tt[j], m) - tau[j + 1]) * m <= 1;
        if (!in_cell) worst_outside = std::max(worst_outside, val);
    };
    // Enumerate t >= 0 with Σ t_j <= m.
    auto rec = [&](auto&& self, std::size_t j, std::int64_t rem) -> void {
        if (j == n) {
            visit(t, rem);
            return;
        }
        for (std::int64_t tj = 0; tj <= rem; ++tj) {
            t[j] = tj;
            self(self, j + 1, rem - tj);
        }
        t[j] = 0;
    };
    rec(rec, 0, m);

    rep.margin_outside = 1.0 - worst_outside;
    rep.strict_outside = worst_outside < 1.0 - 1e-12;
    return rep;
}

} // namespace wpshms
