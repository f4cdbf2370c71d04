#pragma once

/// Floating-point side of the story: moment-map coordinates from the Kähler
/// potential, the affine gradient fields of the potential differences, RK4
/// trajectories, and assembly of gradient trees with their disk areas.
///
/// All flows are integrated in moment coordinates x, where the field of
/// V_{ab;K} is affine: 2π((b-a) x^{il}/(2Πq) - k_l) = λ (x - v), with
/// λ = 2π(b-a)/(2Πq) and v the intersection point.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wpshms/category.hpp"

namespace wpshms {

using VecD = std::vector<double>;

inline VecD to_doubles(const Vec& x) {
    VecD out;
    out.reserve(x.size());
    for (const auto& r : x) out.push_back(rational_to_double(r));
    return out;
}

namespace detail {

// exponents t_l = 2 (q0...qn / q_l) xcheck_l and a log-sum-exp shift
inline std::vector<double> chart_exponents(const Weights& w, int chart, const VecD& xcheck) {
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    if (xcheck.size() != labels.size())
        throw std::invalid_argument("chart coordinates have wrong dimension");
    std::vector<double> t(xcheck.size());
    for (std::size_t j = 0; j < xcheck.size(); ++j)
        t[j] = static_cast<double>(w.scale) / static_cast<double>(w.q[labels[j]]) * xcheck[j];
    return t;
}

} // namespace detail

/// Kähler potential of the chart, log(1 + Σ_{j!=i} e^{2(Πq/q_j) xcheck_j}),
/// evaluated with log-sum-exp stabilization.
inline double kahler_potential(const Weights& w, int chart, const VecD& xcheck) {
    const auto t = detail::chart_exponents(w, chart, xcheck);
    double m = 0.0; // the "1 +" term has exponent 0
    for (double tj : t) m = std::max(m, tj);
    double s = std::exp(-m);
    for (double tj : t) s += std::exp(tj - m);
    return m + std::log(s);
}

/// Moment map x^{il} = ∂φ/∂xcheck_l; its image is the open simplex
/// { x > 0, Σ q_l x^{il} < 2Πq }.
inline VecD moment_map(const Weights& w, int chart, const VecD& xcheck) {
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    const auto t = detail::chart_exponents(w, chart, xcheck);
    double m = 0.0;
    for (double tj : t) m = std::max(m, tj);
    double denom = std::exp(-m);
    for (double tj : t) denom += std::exp(tj - m);
    VecD x(t.size());
    for (std::size_t j = 0; j < t.size(); ++j)
        x[j] = static_cast<double>(w.scale) / static_cast<double>(w.q[labels[j]]) *
               (std::exp(t[j] - m) / denom);
    return x;
}

/// Inverse of the moment map by damped Newton iteration on the strictly
/// convex potential. Throws for non-interior targets or non-convergence.
inline VecD inverse_moment(const Weights& w, int chart, const VecD& x, double tol = 1e-12,
                           int max_iter = 100) {
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    const std::size_t n = x.size();
    double load = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] <= 0.0) throw std::domain_error("inverse_moment: point not interior");
        load += static_cast<double>(w.q[labels[j]]) * x[j];
    }
    if (load >= static_cast<double>(w.scale))
        throw std::domain_error("inverse_moment: point not interior");

    auto residual_norm = [&](const VecD& xc) {
        const VecD fx = moment_map(w, chart, xc);
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) r += (fx[j] - x[j]) * (fx[j] - x[j]);
        return std::sqrt(r);
    };

    VecD xc(n, 0.0);
    double res = residual_norm(xc);
    for (int iter = 0; iter < max_iter; ++iter) {
        if (res < tol) return xc;
        // Jacobian J_lm = (scale/q_l)(scale/q_m) u_l (δ_lm - u_m), the
        // Hessian of the potential, SPD on the interior.
        const auto t = detail::chart_exponents(w, chart, xc);
        double m = 0.0;
        for (double tj : t) m = std::max(m, tj);
        double denom = std::exp(-m);
        for (double tj : t) denom += std::exp(tj - m);
        std::vector<double> u(n);
        for (std::size_t j = 0; j < n; ++j) u[j] = std::exp(t[j] - m) / denom;
        std::vector<std::vector<double>> J(n, std::vector<double>(n));
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k) {
                const double sl = static_cast<double>(w.scale) / static_cast<double>(w.q[labels[l]]);
                const double sk = static_cast<double>(w.scale) / static_cast<double>(w.q[labels[k]]);
                J[l][k] = sl * sk * u[l] * ((l == k ? 1.0 : 0.0) - u[k]);
            }
        const VecD fx = moment_map(w, chart, xc);
        VecD rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs[j] = x[j] - fx[j];
        // solve J step = rhs by Gaussian elimination with partial pivoting
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::fabs(J[r][col]) > std::fabs(J[piv][col])) piv = r;
            std::swap(J[piv], J[col]);
            std::swap(rhs[piv], rhs[col]);
            if (J[col][col] == 0.0) throw std::runtime_error("inverse_moment: singular Jacobian");
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                const double f = J[r][col] / J[col][col];
                for (std::size_t k = col; k < n; ++k) J[r][k] -= f * J[col][k];
                rhs[r] -= f * rhs[col];
            }
        }
        VecD step(n);
        for (std::size_t j = 0; j < n; ++j) step[j] = rhs[j] / J[j][j];
        // damped update
        double alpha = 1.0;
        for (int back = 0; back < 40; ++back) {
            VecD trial(n);
            for (std::size_t j = 0; j < n; ++j) trial[j] = xc[j] + alpha * step[j];
            const double tres = residual_norm(trial);
            if (tres < res) {
                xc = std::move(trial);
                res = tres;
                break;
            }
            alpha *= 0.5;
            if (back == 39) throw std::runtime_error("inverse_moment: line search failed");
        }
    }
    if (res < tol) return xc;
    throw std::runtime_error("inverse_moment: did not converge");
}

/// The affine gradient field of V_{ab;K}: 2π((b-a) x_l / (2Πq) - k_l).
inline VecD gradient_field(const Weights& w, std::int64_t a, std::int64_t b, const LatticeK& K,
                           int chart, const VecD& x) {
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    VecD g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        g[j] = 2.0 * std::numbers::pi *
               (static_cast<double>(b - a) / static_cast<double>(w.scale) * x[j] -
                static_cast<double>(K.k[labels[j]]));
    return g;
}

struct Trajectory {
    std::vector<std::pair<double, VecD>> samples; // (t, x)
    double lambda = 0.0;                          // 2π(b-a)/(2Πq)
    VecD fixed_point;                             // v_{ab;K}
};

/// Fixed-step RK4 integration of the affine field; the closed form is
/// x(t) = v + e^{λt}(x0 - v).
inline Trajectory integrate_trajectory(const Weights& w, std::int64_t a, std::int64_t b,
                                       const LatticeK& K, int chart, const VecD& x0, double dt,
                                       int steps) {
    if (dt <= 0.0) throw std::invalid_argument("integrate_trajectory: dt must be positive");
    Trajectory tr;
    tr.lambda = 2.0 * std::numbers::pi * static_cast<double>(b - a) / static_cast<double>(w.scale);
    tr.fixed_point = (a == b) ? x0 : to_doubles(intersection_point(w, a, b, K, chart));
    auto field = [&](const VecD& x) { return gradient_field(w, a, b, K, chart, x); };
    const std::size_t n = x0.size();
    VecD x = x0;
    tr.samples.emplace_back(0.0, x);
    for (int s = 1; s <= steps; ++s) {
        const VecD k1 = field(x);
        VecD tmp(n);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * dt * k1[j];
        const VecD k2 = field(tmp);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * dt * k2[j];
        const VecD k3 = field(tmp);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + dt * k3[j];
        const VecD k4 = field(tmp);
        for (std::size_t j = 0; j < n; ++j)
            x[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        tr.samples.emplace_back(s * dt, x);
    }
    return tr;
}

/// Float evaluation of a potential (companion of the exact eval_potential);
/// zero-coefficient terms are skipped, matching the 0·log 0 convention.
inline double potential_value(const Potential& p, const VecD& x) {
    double acc = to_float(p.constant);
    double boundary = static_cast<double>(p.scale);
    for (std::size_t j = 0; j < x.size(); ++j)
        boundary -= static_cast<double>(p.ql[j]) * x[j];
    if (p.coeff_boundary != 0) acc += rational_to_double(p.coeff_boundary) * std::log(boundary);
    for (std::size_t j = 0; j < x.size(); ++j)
        if (p.coeff[j] != 0)
            acc += rational_to_double(p.coeff[j]) * std::log(static_cast<double>(p.ql[j]) * x[j]);
    return acc;
}

struct GradientTree {
    VecD v_ab, v_bc;      // leaf intersection points
    VecD v_ac_exact;      // exact root, as doubles
    VecD meet_numeric;    // root recovered by integrating grad(f_ab + f_bc)
    double meet_residual = 0.0;
    double edge_rk4_error = 0.0;     // RK4 vs closed form along the leaf edges
    double edge_collinearity = 0.0;  // max distance of samples from the straight edge
    double area_numeric = 0.0;       // float (f_ab + f_bc)(v_ac), in f/2π units
    double area_exact_float = 0.0;   // to_float of the exact LogValue
    Trajectory edge_ab, edge_bc;     // leaf-edge trajectories, for CSV export
};

/// Builds the gradient tree of (V_ab, V_bc): leaf edges flow straight from
/// v_ab and v_bc to the root v_ac, where grad(f_ab + f_bc) vanishes; the
/// numeric root comes from backward integration of the combined field.
inline GradientTree build_gradient_tree(const Weights& w, std::int64_t a, std::int64_t b,
                                        std::int64_t c, const LatticeK& K_ab,
                                        const LatticeK& K_bc, int chart = 0, double dt = 1e-3) {
    if (!(a < b && b < c)) throw std::invalid_argument("build_gradient_tree: requires a < b < c");
    GradientTree tree;
    const std::size_t n = w.n();
    tree.v_ab = to_doubles(intersection_point(w, a, b, K_ab, chart));
    tree.v_bc = to_doubles(intersection_point(w, b, c, K_bc, chart));
    const Vec v_ac = intersection_point(w, a, c, K_ab + K_bc, chart);
    tree.v_ac_exact = to_doubles(v_ac);

    const double l1 = 2.0 * std::numbers::pi * static_cast<double>(b - a) / w.scale;
    const double l2 = 2.0 * std::numbers::pi * static_cast<double>(c - b) / w.scale;

    // Root: backward flow of the combined field contracts to the stationary
    // point at rate λ1+λ2.
    VecD z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = 0.5 * (tree.v_ab[j] + tree.v_bc[j]);
    for (int s = 0; s < 1'000'000; ++s) {
        double move = 0.0;
        VecD g(n);
        for (std::size_t j = 0; j < n; ++j)
            g[j] = l1 * (z[j] - tree.v_ab[j]) + l2 * (z[j] - tree.v_bc[j]);
        for (std::size_t j = 0; j < n; ++j) {
            const double d = -dt * g[j]; // backward time
            z[j] += d;
            move += std::fabs(d);
        }
        if (move < 1e-15) break;
    }
    tree.meet_numeric = z;
    for (std::size_t j = 0; j < n; ++j)
        tree.meet_residual =
            std::max(tree.meet_residual, std::fabs(z[j] - tree.v_ac_exact[j]));

    // Leaf edges: start just off the critical point toward the root and flow
    // for the time that scales the offset back to 1.
    auto run_edge = [&](const VecD& v, double lambda, std::int64_t ea, std::int64_t eb,
                        const LatticeK& K) {
        Trajectory tr;
        double dist = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            dist = std::max(dist, std::fabs(tree.v_ac_exact[j] - v[j]));
        if (dist == 0.0) { // degenerate zero-length edge
            tr.lambda = lambda;
            tr.fixed_point = v;
            tr.samples.emplace_back(0.0, v);
            return tr;
        }
        const double delta = 1e-3;
        VecD x0(n);
        for (std::size_t j = 0; j < n; ++j)
            x0[j] = v[j] + delta * (tree.v_ac_exact[j] - v[j]);
        const double total_t = std::log(1.0 / delta) / lambda;
        const int steps = static_cast<int>(std::ceil(total_t / dt));
        tr = integrate_trajectory(w, ea, eb, K, chart, x0, total_t / steps, steps);
        // error against the closed form and straightness of the edge
        for (const auto& [t, x] : tr.samples) {
            for (std::size_t j = 0; j < n; ++j) {
                const double closed = v[j] + std::exp(lambda * t) * (x0[j] - v[j]);
                tree.edge_rk4_error = std::max(tree.edge_rk4_error, std::fabs(x[j] - closed));
            }
            // distance from the segment's line via projection
            double num = 0.0, den = 0.0;
            VecD dir(n);
            for (std::size_t j = 0; j < n; ++j) {
                dir[j] = tree.v_ac_exact[j] - v[j];
                num += (x[j] - v[j]) * dir[j];
                den += dir[j] * dir[j];
            }
            const double s = num / den;
            double off = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p = v[j] + s * dir[j];
                off = std::max(off, std::fabs(x[j] - p));
            }
            tree.edge_collinearity = std::max(tree.edge_collinearity, off);
        }
        return tr;
    };
    tree.edge_ab = run_edge(tree.v_ab, l1, a, b, K_ab);
    tree.edge_bc = run_edge(tree.v_bc, l2, b, c, K_bc);

    // Disk area: float route vs the exact LogValue.
    const Potential f_ab = relative_potential(w, a, b, K_ab, chart);
    const Potential f_bc = relative_potential(w, b, c, K_bc, chart);
    tree.area_numeric =
        potential_value(f_ab, tree.v_ac_exact) + potential_value(f_bc, tree.v_ac_exact);
    tree.area_exact_float = to_float(eval_potential(f_ab, v_ac) + eval_potential(f_bc, v_ac));
    return tree;
}

} // namespace wpshms
