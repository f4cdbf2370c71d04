#pragma once

/// Named verification suites behind `verify --suite ...`: each suite checks
/// one family of identities for a given weight vector and reports per-item
/// pass/fail. Items are independent and evaluated on the worker pool.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wpshms/flow.hpp"
#include "wpshms/json_io.hpp"
#include "wpshms/mirror.hpp"

namespace wpshms {

struct SuiteItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<SuiteItem> items;

    bool pass() const {
        return std::all_of(items.begin(), items.end(), [](const SuiteItem& i) { return i.pass; });
    }
};

namespace suites {

inline std::string detailed_label(const LatticeK& K) {
    std::string s = "K=(";
    for (std::size_t j = 0; j < K.k.size(); ++j) s += (j ? "," : "") + std::to_string(K.k[j]);
    return s + ")";
}

/// |weighted_compositions| against the box-enumeration oracle, d <= 30.
inline SuiteResult dims(const Weights& w) {
    SuiteResult res{"dims", {}};
    for (std::int64_t d = 0; d <= 30; ++d) {
        const auto count = static_cast<std::int64_t>(weighted_compositions(w, d).size());
        const auto oracle = hilbert_dim_oracle(w, d);
        res.items.push_back({"d=" + std::to_string(d),
                             count == oracle,
                             std::to_string(count) + " vs oracle " + std::to_string(oracle)});
    }
    return res;
}

/// The exceptional bound, both directions: no interior generator for any
/// 0 < d <= Σq-1, and K=(1,...,1) interior at d = Σq.
inline SuiteResult exceptional(const Weights& w) {
    SuiteResult res{"exceptional", {}};
    const std::int64_t R = exceptional_max_R(w);
    for (std::int64_t d = 1; d <= R; ++d) {
        bool interior_free = true;
        for (const auto& K : weighted_compositions(w, d))
            if (K.interior()) interior_free = false;
        res.items.push_back({"boundary d=" + std::to_string(d), interior_free, ""});
    }
    const LatticeK ones{std::vector<std::int64_t>(w.q.size(), 1)};
    const auto all = weighted_compositions(w, R + 1);
    const bool found = std::find(all.begin(), all.end(), ones) != all.end();
    res.items.push_back({"interior at d=" + std::to_string(R + 1),
                         found && ones.interior(),
                         "K=(1,...,1)"});
    return res;
}

/// Exact m2 associativity over the category.
inline SuiteResult assoc(const Weights& w, std::int64_t base, int chart) {
    SuiteResult res{"assoc", {}};
    const CategoryData cat = build_category(w, base, chart);
    res.items.push_back({"all quadruples", check_associativity(cat), ""});
    return res;
}

/// Mirror compatibility: m2 weights equal c_ab·c_bc/c_ac, exp(-f/2π) = c|psi|
/// pointwise, and |c·psi| attains its sup 1 exactly at the intersection point
/// (grid scan at the configured resolution).
inline SuiteResult functor(const Weights& w, std::int64_t base, int chart, std::uint64_t seed,
                           int grid = 50) {
    SuiteResult res{"functor", {}};
    const CategoryData cat = build_category(w, base, chart);
    const FunctorReport rep = verify_functor(cat, 5, seed);
    for (const auto& it : rep.items)
        res.items.push_back({it.kind + " " + it.label(), it.pass,
                             it.pass ? "" : it.expected + " vs " + it.got});

    std::vector<const MorphismGen*> gens;
    for (const auto& [key, h] : cat.homs)
        for (const auto& g : h.gens)
            if (!g.is_identity()) gens.push_back(&g);
    std::vector<SuiteItem> scan_items(gens.size());
    parallel_for(gens.size(), [&](std::size_t i) {
        const MorphismGen& g = *gens[i];
        const ScanReport scan = max_modulus_scan(w, g.a, g.b, g.K, g.chart, grid);
        scan_items[i] = {"max-modulus (" + std::to_string(g.a) + "," + std::to_string(g.b) + ") " +
                             detailed_label(g.K),
                         scan.pass(),
                         "margin " + std::to_string(scan.margin_outside)};
    });
    res.items.insert(res.items.end(), scan_items.begin(), scan_items.end());
    return res;
}

/// Exact section ratio: v_ac divides [v_ab, v_bc] in the ratio c-b : b-a.
inline SuiteResult ratio(const Weights& w, std::int64_t base, int chart) {
    SuiteResult res{"ratio", {}};
    const CategoryData cat = build_category(w, base, chart);
    for (const auto& e : cat.products) {
        if (e.src1.is_identity() || e.src2.is_identity()) continue;
        std::ostringstream name;
        name << "(" << e.src1.a << "," << e.src1.b << "," << e.src2.b << ")";
        res.items.push_back({name.str(),
                             ratio_check(w, e.src1.a, e.src1.b, e.src2.b, e.src1.K, e.src2.K,
                                         chart),
                             ""});
    }
    return res;
}

/// Chart independence: hom dimensions and the multiset of product weights
/// computed natively in every chart agree, and chart transforms carry the
/// intersection points onto each other.
inline SuiteResult charts(const Weights& w, std::int64_t base) {
    SuiteResult res{"charts", {}};
    const CategoryData ref = build_category(w, base, 0);
    std::multiset<std::string> ref_weights;
    for (const auto& e : ref.products) ref_weights.insert(e.weight.str());
    for (int i = 1; i <= static_cast<int>(w.n()); ++i) {
        const CategoryData cat = build_category(w, base, i);
        bool dims_ok = true;
        for (const auto& [key, h] : ref.homs) dims_ok &= cat.hom(key.first, key.second).dim() == h.dim();
        res.items.push_back({"hom dims chart " + std::to_string(i), dims_ok, ""});

        std::multiset<std::string> ws;
        for (const auto& e : cat.products) ws.insert(e.weight.str());
        res.items.push_back({"product weights chart " + std::to_string(i), ws == ref_weights, ""});

        const ChartTransform t = chart_transform(w, 0, i);
        bool points_ok = true;
        for (const auto& [key, h] : ref.homs)
            for (const auto& g : h.gens) {
                if (!g.v) continue;
                const Vec mapped = t.apply(*g.v);
                const Vec native = intersection_point(w, g.a, g.b, g.K, i);
                points_ok &= mapped == native;
            }
        res.items.push_back({"transformed points chart " + std::to_string(i), points_ok, ""});
    }
    return res;
}

/// Numeric suite: RK4 against the closed form, tree roots against the exact
/// intersection points, numeric areas against exact LogValues, and the moment
/// map against finite differences of the potential.
inline SuiteResult flow(const Weights& w, std::int64_t base, int chart, std::uint64_t seed) {
    SuiteResult res{"flow", {}};
    const CategoryData cat = build_category(w, base, chart);
    double worst_meet = 0.0, worst_rk4 = 0.0, worst_area = 0.0;
    for (const auto& e : cat.products) {
        if (e.src1.is_identity() || e.src2.is_identity()) continue;
        const GradientTree tree = build_gradient_tree(w, e.src1.a, e.src1.b, e.src2.b, e.src1.K,
                                                      e.src2.K, chart);
        worst_meet = std::max(worst_meet, tree.meet_residual);
        worst_rk4 = std::max(worst_rk4, tree.edge_rk4_error);
        worst_area = std::max(worst_area, std::fabs(tree.area_numeric - tree.area_exact_float));
    }
    res.items.push_back({"tree meeting residual", worst_meet < 1e-8, std::to_string(worst_meet)});
    res.items.push_back({"rk4 vs closed form", worst_rk4 < 1e-8, std::to_string(worst_rk4)});
    res.items.push_back({"numeric area vs exact", worst_area < 1e-9, std::to_string(worst_area)});

    // moment map = gradient of the potential, against central differences
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-1.5, 1.5);
    const std::size_t n = w.n();
    double worst_fd = 0.0;
    const double h = 1e-5;
    for (int s = 0; s < 100; ++s) {
        VecD xc(n);
        for (auto& v : xc) v = box(rng);
        const VecD mm = moment_map(w, chart, xc);
        for (std::size_t j = 0; j < n; ++j) {
            VecD hi = xc, lo = xc;
            hi[j] += h;
            lo[j] -= h;
            const double fd =
                (kahler_potential(w, chart, hi) - kahler_potential(w, chart, lo)) / (2.0 * h);
            worst_fd = std::max(worst_fd, std::fabs(fd - mm[j]));
        }
    }
    res.items.push_back({"moment map vs finite differences", worst_fd < 1e-6,
                         std::to_string(worst_fd)});

    // roundtrip through the Newton inverse
    double worst_rt = 0.0;
    for (int s = 0; s < 100; ++s) {
        const Vec xq = random_interior_point(w, chart, rng);
        const VecD x = to_doubles(xq);
        const VecD back = moment_map(w, chart, inverse_moment(w, chart, x));
        for (std::size_t j = 0; j < n; ++j)
            worst_rt = std::max(worst_rt, std::fabs(back[j] - x[j]));
    }
    res.items.push_back({"inverse moment roundtrip", worst_rt < 1e-10, std::to_string(worst_rt)});
    return res;
}

} // namespace suites

/// Runs one named suite, or every suite for "all".
inline std::vector<SuiteResult> run_suites(const std::string& which, const Weights& w,
                                           std::int64_t base, int chart, std::uint64_t seed,
                                           int grid = 50) {
    std::vector<SuiteResult> out;
    const bool all = which == "all";
    if (all || which == "dims") out.push_back(suites::dims(w));
    if (all || which == "exceptional") out.push_back(suites::exceptional(w));
    if (all || which == "assoc") out.push_back(suites::assoc(w, base, chart));
    if (all || which == "functor") out.push_back(suites::functor(w, base, chart, seed, grid));
    if (all || which == "ratio") out.push_back(suites::ratio(w, base, chart));
    if (all || which == "charts") out.push_back(suites::charts(w, base));
    if (all || which == "flow") out.push_back(suites::flow(w, base, chart, seed));
    if (out.empty()) throw std::invalid_argument("unknown suite: " + which);
    return out;
}

inline json to_json(const std::vector<SuiteResult>& results) {
    json out = json::array();
    for (const auto& r : results) {
        json items = json::array();
        json failures = json::array();
        for (const auto& it : r.items) {
            json j{{"name", it.name}, {"pass", it.pass}};
            if (!it.detail.empty()) j["detail"] = it.detail;
            items.push_back(j);
            if (!it.pass) failures.push_back(j);
        }
        out.push_back(json{{"suite", r.suite},
                           {"pass", r.pass()},
                           {"items", items},
                           {"failures", failures}});
    }
    return out;
}

} // namespace wpshms
