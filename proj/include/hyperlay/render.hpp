#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hyperlay/geometry.hpp"
#include "hyperlay/layout.hpp"
#include "hyperlay/model.hpp"

namespace hyperlay {

struct StyleSpec {
    std::map<std::size_t, std::string> cardinality_palette{
        {1, "#1f4e9c"},  // blue
        {2, "#1a7a3a"},  // dark green
        {3, "#7fd24a"},  // light green
        {4, "#f2d21f"},  // yellow
    };
    /// Cardinalities above the palette cycle through these.
    std::vector<std::string> extension_palette{"#e0731f", "#c8322d", "#8c564b", "#17becf", "#7f7f7f"};
    std::string author_color = "#6a2d8f";
    double base_paper_radius = 6.0;
    double author_radius_factor = 0.7;

    /// Throws ConfigError when no color is defined for `cardinality`.
    const std::string& paper_color(std::size_t cardinality) const;
    double paper_radius(std::size_t multiplicity) const;
    double author_radius() const { return base_paper_radius * author_radius_factor; }
};

enum class NodeKind { author, pendant_author, paper };

std::string_view node_kind_name(NodeKind kind);

struct StyledNode {
    std::string id;
    NodeKind kind = NodeKind::author;
    /// Author or paper index, depending on kind.
    std::size_t index = 0;
    Point position;
    double radius = 0.0;
    std::string fill;
    std::string label;
    /// Paper-nodes only: labels of every bundled original.
    std::vector<std::string> bundled_labels;
    std::size_t cardinality = 0;
    std::size_t multiplicity = 0;

    friend bool operator==(const StyledNode&, const StyledNode&) = default;
};

struct StyledLink {
    std::size_t author = 0;
    std::size_t paper = 0;
    Point author_pos;
    Point paper_pos;
    std::string stroke;

    friend bool operator==(const StyledLink&, const StyledLink&) = default;
};

/// Drawn in order: links, then paper-nodes, then author-nodes.
struct StyledLayout {
    double width = 0.0;
    double height = 0.0;
    std::vector<StyledLink> links;
    std::vector<StyledNode> nodes;

    friend bool operator==(const StyledLayout&, const StyledLayout&) = default;
};

StyledLayout assign_styles(const BundledGraph& g, const LayoutState& s, const StyleSpec& spec,
                           double width, double height);

struct SvgOptions {
    bool labels = false;
};

std::string render_svg(const StyledLayout& sl, const SvgOptions& options = {});

/// Run summary written alongside the layout in the JSON dump.
struct LayoutMetrics {
    std::size_t authors = 0;
    std::size_t hyperedges = 0;
    std::size_t papers = 0;
    std::size_t crossings_before = 0;
    std::size_t crossings_after = 0;
    std::size_t first_relax_iterations = 0;
    std::size_t force_iterations = 0;
    std::size_t swaps_accepted = 0;
    double final_energy = 0.0;

    friend bool operator==(const LayoutMetrics&, const LayoutMetrics&) = default;
};

LayoutMetrics collect_metrics(const BundledGraph& g, const LayoutState& s);

inline constexpr int layout_dump_schema = 1;

std::string dump_layout(const StyledLayout& sl, const CrossingReport& report, const LayoutMetrics& metrics,
                        const LayoutConfig& cfg);

struct LayoutDump {
    StyledLayout layout;
    CrossingReport report;
    LayoutMetrics metrics;
    std::uint64_t seed = 0;
};

/// Reads back a document produced by dump_layout. Throws ParseError or
/// ValidationError.
LayoutDump load_layout_dump(std::string_view json);

}  // namespace hyperlay
