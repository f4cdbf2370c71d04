#pragma once

/// Plot emission: polytope with labeled generator dots and gradient-tree
/// segments (n <= 2), and section-graph plots over one fiber period (n = 1).
/// Output is plain SVG 1.1 with no external assets, or the same geometry as
/// CSV rows.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "wpshms/category.hpp"

namespace wpshms {

struct PlotDot {
    double x = 0.0, y = 0.0;
    std::string label;
};

struct PlotSegment {
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
};

struct PlotData {
    std::vector<PlotSegment> outline;
    std::vector<PlotSegment> segments;
    std::vector<PlotDot> dots;
    std::string x_label, y_label;
};

namespace detail {

inline std::string k_label(const LatticeK& K) {
    std::string s = "(";
    for (std::size_t j = 0; j < K.k.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(K.k[j]);
    }
    return s + ")";
}

inline double coord(const Vec& v, std::size_t j) {
    return j < v.size() ? rational_to_double(v[j]) : 0.0;
}

} // namespace detail

/// Polytope outline, the generator dots of distance `dist`, and the gradient
/// trees of every split dist = d1 + d2. Chart coordinates; n must be 1 or 2.
inline PlotData polytope_plot(const Weights& w, int chart, std::int64_t dist) {
    const std::size_t n = w.n();
    if (n > 2) throw std::invalid_argument("plots require n <= 2");
    if (dist < 1) throw std::invalid_argument("plot distance must be positive");
    PlotData data;
    data.x_label = "x1";
    data.y_label = n == 2 ? "x2" : "";

    const Chart c = chart_polytope(w, chart);
    std::vector<std::pair<double, double>> verts;
    verts.emplace_back(0.0, 0.0);
    for (int k = 0; k <= static_cast<int>(n); ++k) {
        if (k == chart) continue;
        verts.emplace_back(detail::coord(c.vertices[k], 0), detail::coord(c.vertices[k], 1));
    }
    if (n == 1) {
        data.outline.push_back({verts[0].first, 0.0, verts[1].first, 0.0});
    } else {
        data.outline.push_back({verts[0].first, verts[0].second, verts[1].first, verts[1].second});
        data.outline.push_back({verts[1].first, verts[1].second, verts[2].first, verts[2].second});
        data.outline.push_back({verts[2].first, verts[2].second, verts[0].first, verts[0].second});
    }

    for (const auto& K : weighted_compositions(w, dist)) {
        const Vec v = intersection_point(w, 0, dist, K, chart);
        data.dots.push_back({detail::coord(v, 0), detail::coord(v, 1), detail::k_label(K)});
    }

    for (std::int64_t d1 = 1; d1 < dist; ++d1) {
        const std::int64_t d2 = dist - d1;
        for (const auto& K_ab : weighted_compositions(w, d1))
            for (const auto& K_bc : weighted_compositions(w, d2)) {
                const Vec v_ab = intersection_point(w, 0, d1, K_ab, chart);
                const Vec v_bc = intersection_point(w, d1, dist, K_bc, chart);
                const Vec v_ac = intersection_point(w, 0, dist, K_ab + K_bc, chart);
                data.segments.push_back({detail::coord(v_ab, 0), detail::coord(v_ab, 1),
                                         detail::coord(v_ac, 0), detail::coord(v_ac, 1)});
                data.segments.push_back({detail::coord(v_bc, 0), detail::coord(v_bc, 1),
                                         detail::coord(v_ac, 0), detail::coord(v_ac, 1)});
            }
    }
    return data;
}

/// Graphs of the section lifts y/2π = (a/2Πq)·x - Ka over one chart edge,
/// wrapped modulo the fiber period q_i (in 2π units). n must be 1.
inline PlotData sections_plot(const Weights& w, int chart, std::int64_t a_lo, std::int64_t a_hi) {
    if (w.n() != 1) throw std::invalid_argument("section plots require n = 1");
    if (a_lo > a_hi) throw std::invalid_argument("empty section range");
    PlotData data;
    data.x_label = "x";
    data.y_label = "y / 2pi";
    const Chart c = chart_polytope(w, chart);
    const int other = c.coord_labels()[0];
    const double len = static_cast<double>(w.scale) / static_cast<double>(w.q[other]);
    const double period = static_cast<double>(w.q[chart]);
    data.outline.push_back({0.0, 0.0, len, 0.0});
    data.outline.push_back({0.0, period, len, period});

    for (std::int64_t a = a_lo; a <= a_hi; ++a) {
        const LagrangianLift s = canonical_lift(w, a);
        const double slope = static_cast<double>(a) / static_cast<double>(w.scale);
        const double y0 = -static_cast<double>(s.Ka[other]);
        auto wrap = [&](double y) { return y - period * std::floor(y / period); };

        // split y = slope*x + y0 (mod period) at the wrap crossings
        double x = 0.0;
        while (x < len) {
            const double yw = wrap(slope * x + y0);
            double x_next = len;
            if (slope > 0.0)
                x_next = std::min(len, x + (period - yw) / slope);
            else if (slope < 0.0)
                x_next = std::min(len, x + (yw > 0.0 ? yw : period) / -slope);
            if (x_next <= x + 1e-12 * len) // crossing landed within float fuzz of x
                x_next = std::min(len, x + period / std::fabs(slope));
            data.segments.push_back({x, yw, x_next, yw + slope * (x_next - x)});
            x = x_next;
        }
        data.dots.push_back({0.0, wrap(y0), "s_" + std::to_string(a) + ";" +
                                                detail::k_label(LatticeK{s.Ka})});
    }
    return data;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string render_svg(const PlotData& data, const std::string& title) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    auto grow = [&](double x, double y) {
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
            return;
        }
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto& s : data.outline) {
        grow(s.x1, s.y1);
        grow(s.x2, s.y2);
    }
    for (const auto& s : data.segments) {
        grow(s.x1, s.y1);
        grow(s.x2, s.y2);
    }
    for (const auto& d : data.dots) grow(d.x, d.y);
    const double span_x = std::max(xmax - xmin, 1e-9);
    const double span_y = std::max(ymax - ymin, 1e-9);
    const double margin = 48.0, size = 520.0;
    const double sc = size / std::max(span_x, span_y);
    auto px = [&](double x) { return margin + (x - xmin) * sc; };
    auto py = [&](double y) { return margin + (ymax - y) * sc; }; // flip y

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << (2 * margin + span_x * sc) << "\" height=\"" << (2 * margin + span_y * sc + 20)
        << "\">\n";
    svg << "  <title>" << title << "</title>\n";
    for (const auto& s : data.outline)
        svg << "  <line x1=\"" << px(s.x1) << "\" y1=\"" << py(s.y1) << "\" x2=\"" << px(s.x2)
            << "\" y2=\"" << py(s.y2) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (const auto& s : data.segments)
        svg << "  <line x1=\"" << px(s.x1) << "\" y1=\"" << py(s.y1) << "\" x2=\"" << px(s.x2)
            << "\" y2=\"" << py(s.y2) << "\" stroke=\"#3366cc\" stroke-width=\"1.2\"/>\n";
    for (const auto& d : data.dots) {
        svg << "  <circle cx=\"" << px(d.x) << "\" cy=\"" << py(d.y)
            << "\" r=\"4\" fill=\"black\"/>\n";
        if (!d.label.empty())
            svg << "  <text x=\"" << px(d.x) + 6 << "\" y=\"" << py(d.y) - 6
                << "\" font-size=\"11\" font-family=\"monospace\">" << d.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

/// CSV rows kind,label,x1,y1,x2,y2 (dots leave the second point empty).
inline std::string render_csv(const PlotData& data) {
    std::ostringstream csv;
    csv.precision(12);
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char ch : s) out += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
        return out + "\"";
    };
    csv << "kind,label,x1,y1,x2,y2\r\n";
    for (const auto& s : data.outline)
        csv << "outline,," << s.x1 << "," << s.y1 << "," << s.x2 << "," << s.y2 << "\r\n";
    for (const auto& s : data.segments)
        csv << "segment,," << s.x1 << "," << s.y1 << "," << s.x2 << "," << s.y2 << "\r\n";
    for (const auto& d : data.dots)
        csv << "dot," << quote(d.label) << "," << d.x << "," << d.y << ",,\r\n";
    return csv.str();
}

} // namespace wpshms
