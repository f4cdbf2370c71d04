#pragma once

/// Weights, stacky vectors, moment polytopes, chart-to-chart transforms and
/// local orbifold group orders for the weighted projective space P(q0,...,qn).
///
/// Chart i carries affine coordinates x^{il}, l != i, in which the polytope is
/// the simplex { x >= 0, Σ_{l!=i} q_l x^{il} <= 2 q0...qn }. Its vertices are
/// the images of the torus fixed points of the maximal cones, and we keep them
/// labeled by cone so chart transforms are pinned by vertex correspondence.

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpshms/exact.hpp"

namespace wpshms {

using Vec = std::vector<Rational>;
using Mat = std::vector<std::vector<Rational>>; // row-major, small and dense

struct Weights {
    std::vector<std::int64_t> q; // q0,...,qn
    std::int64_t l = 1;          // lcm(q)
    std::int64_t prodq = 1;      // q0*...*qn
    std::int64_t scale = 2;      // 2*q0*...*qn, the polytope bound

    std::size_t n() const { return q.size() - 1; }
};

inline Weights build_weights(const std::vector<std::int64_t>& q) {
    if (q.size() < 2) throw std::invalid_argument("weights: need at least two entries");
    std::int64_t g = 0;
    for (std::int64_t qi : q) {
        if (qi < 1) throw std::invalid_argument("weights: entries must be positive");
        g = std::gcd(g, qi);
    }
    if (g != 1) throw std::invalid_argument("weights: gcd must be 1");
    Weights w;
    w.q = q;
    Int l = 1, prod = 1;
    for (std::int64_t qi : q) {
        l = boost::multiprecision::lcm(l, Int(qi));
        prod *= qi;
    }
    if (2 * prod > Int(std::numeric_limits<std::int64_t>::max()))
        throw std::invalid_argument("weights: product too large");
    w.l = l.convert_to<std::int64_t>();
    w.prodq = prod.convert_to<std::int64_t>();
    w.scale = 2 * w.prodq;
    return w;
}

// ---------------------------------------------------------------------------
// Small exact linear algebra (dimensions here are <= n+1, n tiny).

namespace linalg {

inline Rational det(Mat m) {
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

inline Mat identity(std::size_t n) {
    Mat id(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

inline Mat inverse(Mat m) {
    const std::size_t n = m.size();
    Mat inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) throw std::domain_error("matrix not invertible");
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        const Rational f = m[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            m[c][k] /= f;
            inv[c][k] /= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const Rational g = m[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= g * m[c][k];
                inv[r][k] -= g * inv[c][k];
            }
        }
    }
    return inv;
}

inline Mat mul(const Mat& a, const Mat& b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    Mat out(n, Vec(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
    return out;
}

inline Vec mul(const Mat& a, const Vec& x) {
    Vec out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
    return out;
}

/// Covolume of the lattice spanned by integer row vectors, via row-style
/// Hermite reduction (no Smith normal form needed).
inline Int lattice_covolume(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) throw std::invalid_argument("lattice_covolume: no generators");
    const std::size_t dim = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            // Euclidean steps until rows[i][c] vanishes.
            while (rows[i][c] != 0) {
                if (rows[r][c] == 0) {
                    std::swap(rows[r], rows[i]);
                    continue;
                }
                const Int f = rows[i][c] / rows[r][c];
                for (std::size_t k = 0; k < dim; ++k) rows[i][k] -= f * rows[r][k];
                if (rows[i][c] != 0) std::swap(rows[r], rows[i]);
            }
        }
        if (rows[r][c] != 0) ++r;
    }
    if (r != dim) throw std::domain_error("lattice_covolume: generators not full rank");
    Int covol = 1;
    for (std::size_t i = 0; i < dim; ++i) covol *= rows[i][i];
    return abs(covol);
}

} // namespace linalg

// ---------------------------------------------------------------------------

/// Stacky vectors b_0,...,b_n in the basis e_1,...,e_n of Q^n:
/// b_0 = -(l/q0)(e_1+...+e_n), b_i = (l/qi) e_i. They satisfy Σ q_i b_i = 0.
inline std::vector<Vec> stacky_vectors(const Weights& w) {
    const std::size_t n = w.n();
    std::vector<Vec> b(n + 1, Vec(n, 0));
    for (std::size_t k = 0; k < n; ++k) b[0][k] = Rational(-w.l, w.q[0]);
    for (std::size_t i = 1; i <= n; ++i) b[i][i - 1] = Rational(w.l, w.q[i]);
    // Defining relation, exact.
    for (std::size_t k = 0; k < n; ++k) {
        Rational s = 0;
        for (std::size_t i = 0; i <= n; ++i) s += w.q[i] * b[i][k];
        if (s != 0) throw std::logic_error("stacky vectors violate sum relation");
    }
    return b;
}

struct Chart {
    int index = 0;
    // vertices[k] = chart-i coordinates of the torus fixed point of cone
    // sigma_k; vertices[index] is the origin, vertices[k] = v^{ik} otherwise.
    std::vector<Vec> vertices;
    // stacky_basis[j] = b_{(i)j}, the stacky vectors b_k for k != index in
    // ascending k order.
    std::vector<Vec> stacky_basis;

    /// Coordinate labels l != index in ascending order: x^{i,labels[j]} is the
    /// j-th chart coordinate.
    std::vector<int> coord_labels() const {
        std::vector<int> out;
        for (int l = 0; l < static_cast<int>(vertices.size()); ++l)
            if (l != index) out.push_back(l);
        return out;
    }
};

inline Chart chart_polytope(const Weights& w, int i) {
    const int n = static_cast<int>(w.n());
    if (i < 0 || i > n) throw std::out_of_range("chart index out of range");
    Chart c;
    c.index = i;
    c.vertices.assign(n + 1, Vec(n, 0));
    int coord = 0;
    for (int k = 0; k <= n; ++k) {
        if (k == i) continue;
        c.vertices[k][coord] = Rational(w.scale, w.q[k]); // v^{ik}
        ++coord;
    }
    const auto b = stacky_vectors(w);
    for (int k = 0; k <= n; ++k)
        if (k != i) c.stacky_basis.push_back(b[k]);
    return c;
}

/// Order of the local orbifold group N/N_{sigma_i}, computed as the lattice
/// index [N : N_{sigma_i}] = |det(b_{(i)1}...b_{(i)n})| / covolume(N).
inline std::int64_t local_group_order(const Weights& w, int i) {
    const std::size_t n = w.n();
    if (i < 0 || i > static_cast<int>(n)) throw std::out_of_range("chart index out of range");
    const auto b = stacky_vectors(w);
    // The b_k are integer vectors (q_k | l); N is the lattice they generate.
    std::vector<std::vector<Int>> gens;
    for (const auto& v : b) {
        std::vector<Int> row;
        for (const auto& x : v) {
            if (denominator(x) != 1) throw std::logic_error("stacky vector not integral");
            row.push_back(numerator(x));
        }
        gens.push_back(std::move(row));
    }
    const Int covol = linalg::lattice_covolume(gens);

    Mat m(n, Vec(n, 0));
    std::size_t col = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        if (static_cast<int>(k) == i) continue;
        for (std::size_t r = 0; r < n; ++r) m[r][col] = b[k][r];
        ++col;
    }
    Rational d = linalg::det(m);
    if (d < 0) d = -d;
    const Rational idx = d / Rational(covol);
    if (denominator(idx) != 1) throw std::logic_error("lattice index not integral");
    const std::int64_t order = numerator(idx).convert_to<std::int64_t>();
    if (order != w.q[i]) throw std::logic_error("local group order disagrees with weight");
    return order;
}

struct ChartTransform {
    int from = 0;
    int to = 0;
    Mat linear;
    Vec offset;

    Vec apply(const Vec& x) const {
        Vec y = linalg::mul(linear, x);
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += offset[k];
        return y;
    }
};

/// Affine map from chart-i to chart-j coordinates, pinned by the vertex
/// correspondence vertex-of-cone-sigma_k -> vertex-of-cone-sigma_k.
inline ChartTransform chart_transform(const Weights& w, int i, int j) {
    const std::size_t n = w.n();
    ChartTransform t;
    t.from = i;
    t.to = j;
    if (i == j) {
        t.linear = linalg::identity(n);
        t.offset = Vec(n, 0);
        return t;
    }
    const Chart ci = chart_polytope(w, i);
    const Chart cj = chart_polytope(w, j);
    // T(0) = cj.vertices[i]; columns of V are the chart-i vertices v^{ik},
    // columns of U the corresponding cj.vertices[k] - T(0), k != i.
    Mat V(n, Vec(n, 0)), U(n, Vec(n, 0));
    std::size_t col = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        if (static_cast<int>(k) == i) continue;
        for (std::size_t r = 0; r < n; ++r) {
            V[r][col] = ci.vertices[k][r];
            U[r][col] = cj.vertices[k][r] - cj.vertices[i][r];
        }
        ++col;
    }
    t.linear = linalg::mul(U, linalg::inverse(V));
    t.offset = cj.vertices[i];
    return t;
}

/// Chart-form polytope membership: x >= 0 and Σ q_l x^{il} <= 2 q0...qn.
inline bool in_closed_polytope(const Weights& w, int chart, const Vec& x) {
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < 0) return false;
        s += w.q[labels[j]] * x[j];
    }
    return s <= w.scale;
}

inline bool in_open_polytope(const Weights& w, int chart, const Vec& x) {
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] <= 0) return false;
        s += w.q[labels[j]] * x[j];
    }
    return s < w.scale;
}

/// Random interior rational point, drawn in barycentric coordinates with
/// small positive integer weights (small denominators keep the downstream
/// factorizations cheap).
inline Vec random_interior_point(const Weights& w, int chart, std::mt19937_64& rng) {
    const std::size_t n = w.n();
    std::uniform_int_distribution<std::int64_t> dist(1, 48);
    std::vector<std::int64_t> t(n + 1);
    std::int64_t total = dist(rng); // slack keeps the point off the boundary
    for (std::size_t j = 0; j < n + 1; ++j) {
        t[j] = dist(rng);
        total += t[j];
    }
    const Chart c = chart_polytope(w, chart);
    const auto labels = c.coord_labels();
    Vec x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = Rational(t[j], total) * Rational(w.scale, w.q[labels[j]]);
    return x;
}

} // namespace wpshms
