#include "hyperlay/render.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "hyperlay/error.hpp"

namespace hyperlay {

using nlohmann::json;

const std::string& StyleSpec::paper_color(std::size_t cardinality) const {
    if (auto it = cardinality_palette.find(cardinality); it != cardinality_palette.end()) return it->second;
    if (cardinality_palette.empty() || extension_palette.empty() || cardinality < cardinality_palette.rbegin()->first) {
        throw ConfigError("no color defined for cardinality " + std::to_string(cardinality));
    }
    const std::size_t past = cardinality - cardinality_palette.rbegin()->first - 1;
    return extension_palette[past % extension_palette.size()];
}

double StyleSpec::paper_radius(std::size_t multiplicity) const {
    return base_paper_radius * std::sqrt(static_cast<double>(multiplicity));
}

std::string_view node_kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::author: return "author";
        case NodeKind::pendant_author: return "pendant_author";
        case NodeKind::paper: return "paper";
    }
    return "author";
}

namespace {

NodeKind node_kind_from_name(std::string_view name) {
    if (name == "author") return NodeKind::author;
    if (name == "pendant_author") return NodeKind::pendant_author;
    if (name == "paper") return NodeKind::paper;
    throw ValidationError("unknown node kind '" + std::string(name) + "'");
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

// Fixed three decimals, with negative zero folded into "0.000".
std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("expected [x, y]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json oval_json(const Oval& o) {
    return {{"center", point_json(o.center())}, {"semi_axis_x", o.semi_axis_x()}, {"semi_axis_y", o.semi_axis_y()}};
}

}  // namespace

StyledLayout assign_styles(const BundledGraph& g, const LayoutState& s, const StyleSpec& spec, double width,
                           double height) {
    if (!s.pendants_placed()) throw ArgumentError("styles need a completed layout");
    StyledLayout sl;
    sl.width = width;
    sl.height = height;

    std::vector<std::string> paper_fill;
    paper_fill.reserve(g.papers.size());
    for (const auto& p : g.papers) paper_fill.push_back(spec.paper_color(p.cardinality));

    for (const Link& l : g.links) {
        sl.links.push_back({l.author, l.paper, author_position(g, s, l.author), s.paper_position(l.paper),
                            paper_fill[l.paper]});
    }
    for (const auto& p : g.papers) {
        StyledNode n;
        n.id = "p" + std::to_string(p.index);
        n.kind = NodeKind::paper;
        n.index = p.index;
        n.position = s.paper_position(p.index);
        n.radius = spec.paper_radius(p.multiplicity);
        n.fill = paper_fill[p.index];
        n.label = join(p.labels, "; ");
        n.bundled_labels = p.labels;
        n.cardinality = p.cardinality;
        n.multiplicity = p.multiplicity;
        sl.nodes.push_back(std::move(n));
    }
    for (const auto& a : g.authors) {
        StyledNode n;
        n.id = "a" + std::to_string(a.index);
        n.kind = a.pendant ? NodeKind::pendant_author : NodeKind::author;
        n.index = a.index;
        n.position = author_position(g, s, a.index);
        n.radius = spec.author_radius();
        n.fill = spec.author_color;
        n.label = a.id;
        sl.nodes.push_back(std::move(n));
    }
    return sl;
}

std::string render_svg(const StyledLayout& sl, const SvgOptions& options) {
    const std::string w = fixed3(sl.width);
    const std::string h = fixed3(sl.height);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w + "\" height=\"" + h +
           "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\" fill=\"#ffffff\"/>\n";
    for (const auto& l : sl.links) {
        out += "<line x1=\"" + fixed3(l.author_pos.x) + "\" y1=\"" + fixed3(l.author_pos.y) + "\" x2=\"" +
               fixed3(l.paper_pos.x) + "\" y2=\"" + fixed3(l.paper_pos.y) + "\" stroke=\"" + l.stroke +
               "\" stroke-width=\"1.500\"/>\n";
    }
    for (const auto& n : sl.nodes) {
        out += "<circle cx=\"" + fixed3(n.position.x) + "\" cy=\"" + fixed3(n.position.y) + "\" r=\"" +
               fixed3(n.radius) + "\" fill=\"" + n.fill + "\"/>\n";
    }
    if (options.labels) {
        for (const auto& n : sl.nodes) {
            if (n.label.empty()) continue;
            out += "<text x=\"" + fixed3(n.position.x + n.radius + 2.0) + "\" y=\"" + fixed3(n.position.y) +
                   "\" font-family=\"sans-serif\" font-size=\"10\">" + xml_escape(n.label) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

LayoutMetrics collect_metrics(const BundledGraph& g, const LayoutState& s) {
    LayoutMetrics m;
    m.authors = g.authors.size();
    m.hyperedges = g.hyperedge_count;
    m.papers = g.papers.size();
    const std::size_t final_total = s.crossing_report ? s.crossing_report->total : 0;
    m.crossings_before = s.stats.crossings_after_first_relax.value_or(final_total);
    m.crossings_after = final_total;
    m.first_relax_iterations = s.stats.first_relax_iterations;
    m.force_iterations = s.stats.force_iterations;
    m.swaps_accepted = s.stats.swaps_accepted;
    m.final_energy = s.energy_current.value_or(0.0);
    return m;
}

std::string dump_layout(const StyledLayout& sl, const CrossingReport& report, const LayoutMetrics& metrics,
                        const LayoutConfig& cfg) {
    json nodes = json::array();
    for (const auto& n : sl.nodes) {
        nodes.push_back({{"id", n.id},
                         {"kind", node_kind_name(n.kind)},
                         {"index", n.index},
                         {"x", n.position.x},
                         {"y", n.position.y},
                         {"radius", n.radius},
                         {"color", n.fill},
                         {"label", n.label},
                         {"labels", n.bundled_labels},
                         {"cardinality", n.cardinality},
                         {"multiplicity", n.multiplicity}});
    }
    json links = json::array();
    for (const auto& l : sl.links) {
        links.push_back({{"author", l.author},
                         {"paper", l.paper},
                         {"author_pos", point_json(l.author_pos)},
                         {"paper_pos", point_json(l.paper_pos)},
                         {"color", l.stroke}});
    }
    json doc = {
        {"schema", layout_dump_schema},
        {"canvas", {{"width", sl.width}, {"height", sl.height}}},
        {"node_count", sl.nodes.size()},
        {"nodes", std::move(nodes)},
        {"links", std::move(links)},
        {"crossings", {{"total", report.total}, {"per_paper", report.per_paper}}},
        {"metrics",
         {{"authors", metrics.authors},
          {"hyperedges", metrics.hyperedges},
          {"papers", metrics.papers},
          {"crossings_before", metrics.crossings_before},
          {"crossings_after", metrics.crossings_after},
          {"first_relax_iterations", metrics.first_relax_iterations},
          {"force_iterations", metrics.force_iterations},
          {"swaps_accepted", metrics.swaps_accepted},
          {"final_energy", metrics.final_energy}}},
        {"config",
         {{"outer_oval", oval_json(cfg.outer_oval)},
          {"inner_oval", oval_json(cfg.inner_oval)},
          {"fr_constant", cfg.fr_constant},
          {"initial_temperature", cfg.initial_temperature},
          {"cooling", cfg.cooling},
          {"temperature_floor", cfg.temperature_floor},
          {"energy_threshold", cfg.energy_threshold},
          {"max_iteration", cfg.max_iteration},
          {"mdc_rounds", cfg.mdc_rounds},
          {"swap_attempts", cfg.swap_attempts},
          {"post_swap_iterations", cfg.post_swap_iterations},
          {"pendant_radius_factor", cfg.pendant_radius_factor}}},
        {"seed", cfg.seed},
    };
    return doc.dump(2) + "\n";
}

LayoutDump load_layout_dump(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw ParseError("malformed layout dump", 1, byte + 1, byte);
    }
    try {
        if (doc.at("schema").get<int>() != layout_dump_schema) throw ValidationError("unsupported layout dump schema");
        LayoutDump d;
        d.layout.width = doc.at("canvas").at("width").get<double>();
        d.layout.height = doc.at("canvas").at("height").get<double>();
        for (const auto& j : doc.at("links")) {
            d.layout.links.push_back({j.at("author").get<std::size_t>(), j.at("paper").get<std::size_t>(),
                                      point_from(j.at("author_pos")), point_from(j.at("paper_pos")),
                                      j.at("color").get<std::string>()});
        }
        for (const auto& j : doc.at("nodes")) {
            StyledNode n;
            n.id = j.at("id").get<std::string>();
            n.kind = node_kind_from_name(j.at("kind").get<std::string>());
            n.index = j.at("index").get<std::size_t>();
            n.position = {j.at("x").get<double>(), j.at("y").get<double>()};
            n.radius = j.at("radius").get<double>();
            n.fill = j.at("color").get<std::string>();
            n.label = j.at("label").get<std::string>();
            n.bundled_labels = j.at("labels").get<std::vector<std::string>>();
            n.cardinality = j.at("cardinality").get<std::size_t>();
            n.multiplicity = j.at("multiplicity").get<std::size_t>();
            d.layout.nodes.push_back(std::move(n));
        }
        if (doc.at("node_count").get<std::size_t>() != d.layout.nodes.size()) {
            throw ValidationError("node_count does not match the node list");
        }
        d.report.total = doc.at("crossings").at("total").get<std::size_t>();
        d.report.per_paper = doc.at("crossings").at("per_paper").get<std::vector<std::size_t>>();
        const json& m = doc.at("metrics");
        d.metrics.authors = m.at("authors").get<std::size_t>();
        d.metrics.hyperedges = m.at("hyperedges").get<std::size_t>();
        d.metrics.papers = m.at("papers").get<std::size_t>();
        d.metrics.crossings_before = m.at("crossings_before").get<std::size_t>();
        d.metrics.crossings_after = m.at("crossings_after").get<std::size_t>();
        d.metrics.first_relax_iterations = m.at("first_relax_iterations").get<std::size_t>();
        d.metrics.force_iterations = m.at("force_iterations").get<std::size_t>();
        d.metrics.swaps_accepted = m.at("swaps_accepted").get<std::size_t>();
        d.metrics.final_energy = m.at("final_energy").get<double>();
        d.seed = doc.at("seed").get<std::uint64_t>();
        return d;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("layout dump does not match schema: ") + e.what());
    }
}

}  // namespace hyperlay
