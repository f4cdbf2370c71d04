// Command-line front end: info, category, verify, flow, plot.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpshms/flow.hpp"
#include "wpshms/json_io.hpp"
#include "wpshms/plot.hpp"
#include "wpshms/verify.hpp"

namespace {

struct RunConfig {
    std::vector<std::int64_t> weights;
    std::int64_t base = 0;
    int chart = 0;
    std::string out;
    std::string format = "json";
    std::string suite = "all";
    int grid = 50;
    std::uint64_t seed = 0;
};

std::vector<std::int64_t> parse_weights(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("weights: empty entry");
        out.push_back(std::stoll(tok));
    }
    return out;
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << bytes;
}

int cmd_info(const RunConfig& cfg) {
    const wpshms::Weights w = wpshms::build_weights(cfg.weights);
    if (cfg.format == "json") {
        write_output(cfg.out, wpshms::info_json(w).dump(2) + "\n");
        return 0;
    }
    std::ostringstream txt;
    txt << "weights      ";
    for (std::size_t j = 0; j < w.q.size(); ++j) txt << (j ? "," : "") << w.q[j];
    txt << "\n"
        << "dimension    " << w.n() << "\n"
        << "lcm          " << w.l << "\n"
        << "scale        " << w.scale << "\n"
        << "max R        " << wpshms::exceptional_max_R(w) << "\n";
    for (int i = 0; i <= static_cast<int>(w.n()); ++i) {
        const wpshms::Chart c = wpshms::chart_polytope(w, i);
        txt << "chart " << i << "  group order " << wpshms::local_group_order(w, i)
            << "  vertices";
        for (const auto& v : c.vertices) {
            txt << "  (";
            for (std::size_t j = 0; j < v.size(); ++j)
                txt << (j ? "," : "") << wpshms::rational_str(v[j]);
            txt << ")";
        }
        txt << "\n";
    }
    write_output(cfg.out, txt.str());
    return 0;
}

int cmd_category(const RunConfig& cfg) {
    const wpshms::Weights w = wpshms::build_weights(cfg.weights);
    const wpshms::CategoryData cat = wpshms::build_category(w, cfg.base, cfg.chart);
    write_output(cfg.out, wpshms::category_dump(cat));
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const wpshms::Weights w = wpshms::build_weights(cfg.weights);
    const auto results =
        wpshms::run_suites(cfg.suite, w, cfg.base, cfg.chart, cfg.seed, cfg.grid);
    bool ok = true;
    for (const auto& r : results) ok &= r.pass();
    if (cfg.format == "json") {
        write_output(cfg.out, wpshms::to_json(results).dump(2) + "\n");
    } else {
        std::ostringstream txt;
        for (const auto& r : results) {
            std::size_t passed = 0;
            for (const auto& it : r.items) passed += it.pass;
            txt << (r.pass() ? "PASS" : "FAIL") << "  " << r.suite << "  (" << passed << "/"
                << r.items.size() << ")\n";
            for (const auto& it : r.items)
                if (!it.pass) txt << "      failed: " << it.name << "  " << it.detail << "\n";
        }
        write_output(cfg.out, txt.str());
    }
    return ok ? 0 : 1;
}

int cmd_flow(const RunConfig& cfg) {
    const wpshms::Weights w = wpshms::build_weights(cfg.weights);
    const wpshms::CategoryData cat = wpshms::build_category(w, cfg.base, cfg.chart);

    wpshms::json trees = wpshms::json::array();
    std::string csv;
    for (const auto& e : cat.products) {
        if (e.src1.is_identity() || e.src2.is_identity()) continue;
        const wpshms::GradientTree tree = wpshms::build_gradient_tree(
            w, e.src1.a, e.src1.b, e.src2.b, e.src1.K, e.src2.K, cfg.chart);
        wpshms::json jt;
        jt["a"] = e.src1.a;
        jt["b"] = e.src1.b;
        jt["c"] = e.src2.b;
        jt["K_ab"] = e.src1.K.k;
        jt["K_bc"] = e.src2.K.k;
        jt["v_ab"] = tree.v_ab;
        jt["v_bc"] = tree.v_bc;
        jt["v_ac"] = tree.v_ac_exact;
        jt["meet_numeric"] = tree.meet_numeric;
        jt["meet_residual"] = tree.meet_residual;
        jt["edge_rk4_error"] = tree.edge_rk4_error;
        jt["area_numeric"] = tree.area_numeric;
        jt["area_exact"] = tree.area_exact_float;
        trees.push_back(std::move(jt));
        if (csv.empty()) {
            std::ostringstream s;
            s.precision(15);
            s << "t";
            for (std::size_t j = 0; j < w.n(); ++j) s << ",x" << (j + 1);
            s << "\r\n";
            for (const auto& [t, x] : tree.edge_ab.samples) {
                s << t;
                for (double xj : x) s << "," << xj;
                s << "\r\n";
            }
            csv = s.str();
        }
    }
    if (trees.empty()) {
        std::cerr << "flow: category has no composable non-identity products\n";
        return 1;
    }
    const std::string prefix = cfg.out.empty() ? "flow" : cfg.out;
    write_output(prefix + ".json", wpshms::json{{"trees", trees}}.dump(2) + "\n");
    write_output(prefix + ".csv", csv);
    std::cout << "wrote " << prefix << ".json and " << prefix << ".csv ("
              << trees.size() << " trees)\n";
    return 0;
}

int cmd_plot(const RunConfig& cfg, std::optional<std::int64_t> dist,
             const std::string& sections) {
    const wpshms::Weights w = wpshms::build_weights(cfg.weights);
    if (w.n() > 2) throw std::invalid_argument("plots require n <= 2");
    wpshms::PlotData data;
    std::string title;
    if (!sections.empty()) {
        if (w.n() != 1) throw std::invalid_argument("section plots require n = 1");
        const auto dots = sections.find("..");
        if (dots == std::string::npos)
            throw std::invalid_argument("sections range must look like 0..4");
        const std::int64_t lo = std::stoll(sections.substr(0, dots));
        const std::int64_t hi = std::stoll(sections.substr(dots + 2));
        data = wpshms::sections_plot(w, cfg.chart, lo, hi);
        title = "section lifts " + sections;
    } else if (dist) {
        data = wpshms::polytope_plot(w, cfg.chart, *dist);
        title = "generators at distance " + std::to_string(*dist);
    } else {
        throw std::invalid_argument("plot needs --dist or --sections");
    }
    const std::string bytes =
        cfg.format == "csv" ? wpshms::render_csv(data) : wpshms::render_svg(data, title);
    std::string path = cfg.out;
    if (path.empty()) path = cfg.format == "csv" ? "plot.csv" : "plot.svg";
    write_output(path, bytes);
    std::cout << "wrote " << path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted-projective-space mirror symmetry toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string weights_csv;
    std::optional<std::int64_t> plot_dist;
    std::string plot_sections;

    auto add_common = [&](CLI::App* sub, bool needs_weights = true) {
        auto* opt = sub->add_option("--weights", weights_csv, "comma-separated positive weights");
        if (needs_weights) opt->required();
        sub->add_option("--base", cfg.base, "lowest object label q");
        sub->add_option("--chart", cfg.chart, "chart index");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json|text|csv|svg")
            ->check(CLI::IsMember({"json", "text", "csv", "svg"}));
        sub->add_option("--grid", cfg.grid, "grid resolution per axis");
        sub->add_option("--seed", cfg.seed, "seed for random rational sampling");
    };

    auto* info = app.add_subcommand("info", "weights, polytope vertices, group orders");
    add_common(info);
    auto* category = app.add_subcommand("category", "compute the category and emit JSON");
    add_common(category);
    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify);
    verify->add_option("--suite", cfg.suite,
                       "dims|exceptional|assoc|functor|ratio|charts|flow|all");
    auto* flow = app.add_subcommand("flow", "emit gradient-tree summary and a trajectory CSV");
    add_common(flow);
    auto* plot = app.add_subcommand("plot", "emit SVG/CSV plots");
    add_common(plot);
    plot->add_option("--dist", plot_dist, "generator distance b-a for polytope plots");
    plot->add_option("--sections", plot_sections, "label range a_lo..a_hi for section plots");

    try {
        app.parse(argc, argv);
        cfg.weights = parse_weights(weights_csv);
        if (info->parsed()) return cmd_info(cfg);
        if (category->parsed()) return cmd_category(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (flow->parsed()) return cmd_flow(cfg);
        if (plot->parsed()) return cmd_plot(cfg, plot_dist, plot_sections);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
