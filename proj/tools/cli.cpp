#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hyperlay/error.hpp"
#include "hyperlay/layout.hpp"
#include "hyperlay/model.hpp"
#include "hyperlay/render.hpp"

namespace hyperlay::cli {

namespace {

namespace fs = std::filesystem;

struct Invocation {
    std::string input;
    std::string format = "json";
    std::string output;
    std::string dump;
    std::optional<std::uint64_t> seed;
    double width = 1000.0;
    double height = 700.0;
    std::optional<double> oval_aspect;
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> mdc_rounds;
    std::optional<std::size_t> swap_attempts;
    std::optional<std::size_t> post_swap_iters;
    std::optional<double> threshold;
    bool labels = false;
    bool metrics = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Writes every file to a sibling temporary first and renames only once all
// writes succeeded, so a failure leaves no partial output behind.
void write_outputs(const std::vector<std::pair<std::string, std::string>>& files) {
    std::vector<fs::path> temps;
    try {
        for (const auto& [path, body] : files) {
            fs::path tmp = fs::path(path);
            tmp += ".tmp";
            temps.push_back(tmp);
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write '" + path + "'");
            out << body;
            out.close();
            if (!out) throw Error("cannot write '" + path + "'");
        }
        for (std::size_t i = 0; i < files.size(); ++i) fs::rename(temps[i], files[i].first);
    } catch (...) {
        std::error_code ec;
        for (const auto& t : temps) fs::remove(t, ec);
        throw;
    }
}

std::uint64_t seed_from_env() {
    const char* env = std::getenv("HYPERLAY_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::string text(env);
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.front() == '-') throw UsageError("HYPERLAY_SEED must be an unsigned 64-bit integer");
    return value;
}

LayoutConfig build_config(const Invocation& inv, std::uint64_t seed) {
    LayoutConfig cfg = LayoutConfig::for_canvas(inv.width, inv.height, seed);
    if (inv.oval_aspect) {
        const Oval& o = cfg.outer_oval;
        cfg.outer_oval = Oval(o.center(), o.semi_axis_x(), o.semi_axis_x() * *inv.oval_aspect);
        cfg.inner_oval = cfg.outer_oval.scaled(0.5);
    }
    if (inv.iterations) cfg.max_iteration = *inv.iterations;
    if (inv.mdc_rounds) cfg.mdc_rounds = *inv.mdc_rounds;
    if (inv.swap_attempts) cfg.swap_attempts = *inv.swap_attempts;
    if (inv.post_swap_iters) cfg.post_swap_iterations = *inv.post_swap_iters;
    if (inv.threshold) cfg.energy_threshold = *inv.threshold;
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

int execute(const Invocation& inv, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto format = input_format_from_name(inv.format);
    if (!format) throw UsageError("--format must be json or edgelist");
    const std::uint64_t seed = inv.seed ? *inv.seed : seed_from_env();
    const LayoutConfig cfg = build_config(inv, seed);

    const Hypergraph h = parse_hypergraph(read_input(inv.input), *format);
    const BundledGraph g = bundle(h);
    const LayoutState s = run_layout(g, cfg);
    const StyledLayout styled = assign_styles(g, s, StyleSpec{}, cfg.canvas_width, cfg.canvas_height);
    const LayoutMetrics metrics = collect_metrics(g, s);

    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back(inv.output, render_svg(styled, SvgOptions{inv.labels}));
    if (!inv.dump.empty()) files.emplace_back(inv.dump, dump_layout(styled, *s.crossing_report, metrics, cfg));
    write_outputs(files);

    if (inv.metrics) {
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << "authors: " << metrics.authors << "\n"
            << "papers: " << metrics.hyperedges << " -> " << metrics.papers << "\n"
            << "nodes: " << metrics.authors + metrics.hyperedges << " -> " << metrics.authors + metrics.papers << "\n"
            << "crossings: " << metrics.crossings_before << " -> " << metrics.crossings_after << "\n"
            << "wall_time_s: " << seconds << "\n";
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Invocation inv;
    CLI::App app{"Mixed-coordinate hypergraph layout: papers on an oval, authors inside, SVG out.", "hyperlay"};
    app.add_option("-i,--input", inv.input, "Input file, or - for stdin")->required();
    app.add_option("--format", inv.format, "Input format: json or edgelist")
        ->check(CLI::IsMember({"json", "edgelist"}))
        ->capture_default_str();
    app.add_option("-o,--output", inv.output, "SVG output path")->required();
    app.add_option("--dump", inv.dump, "Also write the layout as JSON to this path");
    app.add_option("--seed", inv.seed, "RNG seed (falls back to HYPERLAY_SEED, then 0)");
    app.add_option("--width", inv.width, "Canvas width")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--height", inv.height, "Canvas height")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--oval-aspect", inv.oval_aspect, "Outer oval semi-axis ratio y/x (default: canvas ratio)")
        ->check(CLI::PositiveNumber);
    app.add_option("--iterations", inv.iterations, "Max force iterations of the first relaxation (default 500)")
        ->check(CLI::PositiveNumber);
    app.add_option("--mdc-rounds", inv.mdc_rounds, "Discrete optimization rounds (default 50)")
        ->check(CLI::PositiveNumber);
    app.add_option("--swap-attempts", inv.swap_attempts, "Swap attempts per round (default 100)")
        ->check(CLI::PositiveNumber);
    app.add_option("--post-swap-iters", inv.post_swap_iters, "Force iterations after a swap (default 50)")
        ->check(CLI::PositiveNumber);
    app.add_option("--threshold", inv.threshold, "Relative energy decrease that ends relaxation (default 1e-3)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--labels", inv.labels, "Draw author names and paper labels");
    app.add_flag("--metrics", inv.metrics, "Print run metrics to stdout");

    std::vector<std::string> argv_storage{"hyperlay"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "hyperlay: " << e.what() << "\n" << "Run with --help for usage.\n";
        return exit_usage;
    }

    try {
        return execute(inv, out);
    } catch (const UsageError& e) {
        err << "hyperlay: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "hyperlay: " << e.what() << "\n";
        return exit_failure;
    }
}

}  // namespace hyperlay::cli
