// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its tolerance and wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "wpshms/flow.hpp"
#include "wpshms/json_io.hpp"
#include "wpshms/mirror.hpp"
#include "wpshms/verify.hpp"

using namespace wpshms;

namespace {

int g_failures = 0;

struct Criterion {
    int number;
    std::string name;
    double budget_ms;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    Criterion(int num, std::string label, double budget)
        : number(num), name(std::move(label)), budget_ms(budget) {}

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }

    ~Criterion() {
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        if (ms > budget_ms) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
        }
        std::ostringstream line;
        line << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name << "  ("
             << ms << " ms, budget " << budget_ms << " ms)";
        if (!ok) line << "  -- " << detail;
        std::cout << line.str() << "\n";
        if (!ok) ++g_failures;
    }
};

LatticeK K(std::initializer_list<std::int64_t> v) { return LatticeK{std::vector<std::int64_t>(v)}; }

const std::vector<std::vector<std::int64_t>> kCorpus = {
    {1, 1}, {3, 2}, {2, 3}, {1, 1, 2}, {1, 2, 3}, {1, 1, 1, 1}};

std::vector<std::vector<std::int64_t>> random_weights(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> qd(1, 6);
    std::uniform_int_distribution<int> nd(1, 3);
    std::vector<std::vector<std::int64_t>> out;
    while (out.size() < count) {
        std::vector<std::int64_t> q(nd(rng) + 1);
        std::int64_t g = 0;
        for (auto& qi : q) {
            qi = qd(rng);
            g = std::gcd(g, qi);
        }
        if (g == 1) out.push_back(q);
    }
    return out;
}

std::string weights_str(const std::vector<std::int64_t>& q) {
    std::string s = "(";
    for (std::size_t j = 0; j < q.size(); ++j) s += (j ? "," : "") + std::to_string(q[j]);
    return s + ")";
}

void criterion_1() {
    Criterion c{1, "polytope reproduction", 1.0};
    const Chart p32 = chart_polytope(build_weights({3, 2}), 0);
    c.expect(p32.vertices[0] == Vec{0} && p32.vertices[1] == Vec{6}, "P(3,2) != [0,6]");
    const Chart p112 = chart_polytope(build_weights({1, 1, 2}), 0);
    c.expect(p112.vertices[0] == Vec{0, 0} && p112.vertices[1] == Vec{4, 0} &&
                 p112.vertices[2] == Vec{0, 2},
             "P(1,1,2) triangle mismatch");
}

void criterion_2() {
    Criterion c{2, "hom dimensions and labels for P(1,1,2)", 10.0};
    const Weights w = build_weights({1, 1, 2});
    const std::vector<std::set<std::vector<std::int64_t>>> expected_labels = {
        {{1, 0, 0}, {0, 1, 0}},
        {{2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {0, 0, 1}},
        {{3, 0, 0}, {2, 1, 0}, {1, 2, 0}, {0, 3, 0}, {1, 0, 1}, {0, 1, 1}}};
    const std::vector<std::size_t> dims = {2, 4, 6};
    for (std::int64_t d = 1; d <= 3; ++d) {
        const auto basis = hom_basis(w, 0, d);
        c.expect(basis.dim() == dims[d - 1],
                 "dim at distance " + std::to_string(d) + " is " + std::to_string(basis.dim()));
        std::set<std::vector<std::int64_t>> labels;
        for (const auto& g : basis.gens) {
            labels.insert(g.K.k);
            c.expect(!g.K.interior(), "interior label below the bound");
            c.expect(g.degree == 0, "nonzero degree");
        }
        c.expect(labels == expected_labels[d - 1], "labels differ at distance " + std::to_string(d));
    }
}

void criterion_3() {
    Criterion c{3, "hom dimensions vs oracle on 50 random weights, d <= 30", 5000.0};
    for (const auto& q : random_weights(50, 20260810)) {
        const Weights w = build_weights(q);
        for (std::int64_t d = 0; d <= 30; ++d) {
            const auto count = static_cast<std::int64_t>(weighted_compositions(w, d).size());
            const auto oracle = hilbert_dim_oracle(w, d);
            if (count != oracle) {
                c.expect(false, weights_str(q) + " d=" + std::to_string(d));
                return;
            }
        }
    }
}

void criterion_4() {
    Criterion c{4, "exceptional bound, both directions", 1000.0};
    auto check = [&](const std::vector<std::int64_t>& q) {
        const Weights w = build_weights(q);
        const std::int64_t R = exceptional_max_R(w);
        for (std::int64_t d = 1; d <= R; ++d)
            for (const auto& k : weighted_compositions(w, d))
                if (k.interior()) c.expect(false, "interior label in " + weights_str(q));
        const LatticeK ones{std::vector<std::int64_t>(q.size(), 1)};
        const auto at_sum = weighted_compositions(w, R + 1);
        c.expect(std::find(at_sum.begin(), at_sum.end(), ones) != at_sum.end() &&
                     ones.interior(),
                 "(1,...,1) missing at sum(q) in " + weights_str(q));
    };
    for (const auto& q : kCorpus) check(q);
    for (const auto& q : random_weights(50, 20260810)) check(q);
}

void criterion_5() {
    Criterion c{5, "intersection-point and ratio identities", 1000.0};
    for (const auto& q : kCorpus) {
        const Weights w = build_weights(q);
        const CategoryData cat = build_category(w, 0);
        for (const auto& e : cat.products) {
            if (e.src1.is_identity() || e.src2.is_identity()) continue;
            if (!ratio_check(w, e.src1.a, e.src1.b, e.src2.b, e.src1.K, e.src2.K, cat.chart))
                c.expect(false, "ratio failed in " + weights_str(q));
        }
    }
    c.expect(intersection_point(build_weights({1, 1, 2}), 0, 3, K({0, 1, 1}), 0) ==
                 Vec{Rational(4, 3), Rational(4, 3)},
             "tree meeting point (4/3,4/3)");
}

void criterion_6() {
    Criterion c{6, "exact associativity over the corpus", 5000.0};
    for (const auto& q : kCorpus) {
        const CategoryData cat = build_category(build_weights(q), 0);
        if (!check_associativity(cat)) c.expect(false, "associativity in " + weights_str(q));
    }
}

void criterion_7() {
    Criterion c{7, "mirror compatibility (main theorem at desk scale)", 10000.0};
    for (const auto& q : kCorpus) {
        const CategoryData cat = build_category(build_weights(q), 0);
        const FunctorReport rep = verify_functor(cat, 5, 20260810);
        if (!rep.pass())
            c.expect(false, weights_str(q) + " " + std::to_string(rep.failures()) + " failures");
    }
    const Weights w32 = build_weights({3, 2});
    const MorphismGen ab{0, 2, K({0, 1}), intersection_point(w32, 0, 2, K({0, 1}), 0), 0, 0};
    const MorphismGen bc{2, 5, K({1, 0}), intersection_point(w32, 2, 5, K({1, 0}), 0), 0, 0};
    const auto [dst, weight] = compose(w32, ab, bc);
    c.expect(weight == PosExact::from_exponents({{2, Rational(1, 6)},
                                                 {3, Rational(1, 4)},
                                                 {5, Rational(-5, 12)}}),
             "named P(3,2) triple weight");
    c.expect(dst.K == K({1, 1}), "named triple target");
}

void criterion_8() {
    Criterion c{8, "max-modulus scans for P(3,2) and P(1,1,2)", 30000.0};
    for (const auto& q : {std::vector<std::int64_t>{3, 2}, {1, 1, 2}}) {
        const Weights w = build_weights(q);
        const int m = w.n() == 1 ? 100 : 50;
        for (std::int64_t d = 1; d <= exceptional_max_R(w); ++d)
            for (const auto& k : weighted_compositions(w, d)) {
                const ScanReport rep = max_modulus_scan(w, 0, d, k, 0, m);
                if (!rep.max_at_v_exact) c.expect(false, "c|psi(v)| != 1 in " + weights_str(q));
                if (!rep.bounded_by_one) c.expect(false, "|c psi| > 1+1e-12 in " + weights_str(q));
                if (!rep.strict_outside)
                    c.expect(false, "max not isolated at v in " + weights_str(q));
            }
    }
}

void criterion_9() {
    Criterion c{9, "flow suite tolerances", 30000.0};
    for (const auto& q : {std::vector<std::int64_t>{3, 2}, {1, 1, 2}, {1, 2, 3}}) {
        const SuiteResult res = suites::flow(build_weights(q), 0, 0, 20260810);
        for (const auto& item : res.items)
            if (!item.pass)
                c.expect(false, weights_str(q) + " " + item.name + " = " + item.detail);
    }
}

void criterion_10() {
    Criterion c{10, "chart independence for P(1,1,2) and P(1,2,3)", 5000.0};
    for (const auto& q : {std::vector<std::int64_t>{1, 1, 2}, {1, 2, 3}}) {
        const SuiteResult res = suites::charts(build_weights(q), 0);
        for (const auto& item : res.items)
            if (!item.pass) c.expect(false, weights_str(q) + " " + item.name);
    }
}

void criterion_11() {
    Criterion c{11, "lift independence for P(3,2)", 1000.0};
    const Weights w = build_weights({3, 2});
    const CategoryData ref = build_category(w, 0);
    const CategoryData alt = build_category(w, 0, 0, std::vector<std::int64_t>{3, -4});
    json ref_products = json::array(), alt_products = json::array();
    for (const auto& e : ref.products) ref_products.push_back(to_json(e.weight));
    for (const auto& e : alt.products) alt_products.push_back(to_json(e.weight));
    c.expect(ref_products.dump() == alt_products.dump(), "product weights differ between lifts");
}

} // namespace

int main() {
    factor_positive(2); // warm the prime sieve outside any timed window
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures == 0) {
        std::cout << "all 11 acceptance criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " acceptance criteria failed\n";
    return 1;
}
