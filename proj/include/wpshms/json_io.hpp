#pragma once

/// JSON views of the exact types. Plain nlohmann::json keeps object keys
/// sorted and the emitters below fix all array orders (lexicographic K,
/// ascending primes), so dumps are byte-deterministic for a fixed input.

#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "wpshms/category.hpp"
#include "wpshms/mirror.hpp"

namespace wpshms {

using json = nlohmann::json;

namespace detail {

inline std::int64_t to_i64(const Int& v) {
    if (v > Int(std::numeric_limits<std::int64_t>::max()) ||
        v < Int(std::numeric_limits<std::int64_t>::min()))
        throw std::overflow_error("json: integer exceeds 64 bits");
    return v.convert_to<std::int64_t>();
}

inline json exponent_triples(const PrimeExponents& m) {
    json arr = json::array();
    for (const auto& [p, r] : m)
        arr.push_back({p, to_i64(numerator(r)), to_i64(denominator(r))});
    return arr;
}

} // namespace detail

inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// PosExact as a sorted array of [prime, num, den] exponent triples.
inline json to_json(const PosExact& v) { return detail::exponent_triples(v.exponents()); }

inline json to_json(const LogValue& v) { return detail::exponent_triples(v.terms()); }

inline json to_json(const MorphismGen& g) {
    return json{{"a", g.a}, {"b", g.b}, {"K", g.K.k}, {"degree", g.degree}};
}

inline json point_json(const Vec& x) {
    json arr = json::array();
    for (const auto& r : x) arr.push_back(rational_str(r));
    return arr;
}

inline json to_json(const CategoryData& cat) {
    json out;
    out["weights"] = cat.weights.q;
    out["base"] = cat.base;
    out["chart"] = cat.chart;
    json objects = json::array();
    for (const auto& s : cat.objects) objects.push_back({{"a", s.a}, {"Ka", s.Ka}});
    out["objects"] = objects;
    json homs = json::array();
    for (const auto& [key, h] : cat.homs)
        for (const auto& g : h.gens) homs.push_back(to_json(g));
    out["homs"] = homs;
    json products = json::array();
    for (const auto& e : cat.products) {
        json p;
        p["src1"] = to_json(e.src1);
        p["src2"] = to_json(e.src2);
        p["dst"] = to_json(e.dst);
        p["weight"] = to_json(e.weight);
        p["approx"] = to_float(e.weight);
        products.push_back(std::move(p));
    }
    out["products"] = products;
    return out;
}

/// The byte-exact serialization used by the CLI and the golden tests.
inline std::string category_dump(const CategoryData& cat) { return to_json(cat).dump(2) + "\n"; }

inline json info_json(const Weights& w) {
    json out;
    out["weights"] = w.q;
    out["n"] = w.n();
    out["lcm"] = w.l;
    out["scale"] = w.scale;
    out["exceptional_max_R"] = exceptional_max_R(w);
    json charts = json::array();
    for (int i = 0; i <= static_cast<int>(w.n()); ++i) {
        const Chart c = chart_polytope(w, i);
        json jc;
        jc["index"] = i;
        jc["group_order"] = local_group_order(w, i);
        json verts = json::array();
        for (const auto& v : c.vertices) verts.push_back(point_json(v));
        jc["vertices"] = verts;
        charts.push_back(std::move(jc));
    }
    out["charts"] = charts;
    json b = json::array();
    for (const auto& v : stacky_vectors(w)) b.push_back(point_json(v));
    out["stacky_vectors"] = b;
    return out;
}

inline json to_json(const FunctorReport& rep) {
    json items = json::array();
    for (const auto& it : rep.items) {
        json j{{"kind", it.kind}, {"expected", it.expected}, {"got", it.got}, {"pass", it.pass}};
        j[it.kind == "product" ? "triple" : "pair"] = it.labels;
        items.push_back(std::move(j));
    }
    return json{{"pass", rep.pass()}, {"failures", rep.failures()}, {"items", items}};
}

} // namespace wpshms
