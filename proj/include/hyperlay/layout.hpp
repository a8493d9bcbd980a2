#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hyperlay/geometry.hpp"
#include "hyperlay/model.hpp"

namespace hyperlay {

/// Every tunable of the layout pipeline. Use `LayoutConfig::for_canvas` to get
/// the defaults for a canvas size, then override fields as needed.
struct LayoutConfig {
    double canvas_width = 1000.0;
    double canvas_height = 700.0;
    /// Carries the paper-node slots.
    Oval outer_oval;
    /// Initial author positions.
    Oval inner_oval;

    double fr_constant = 0.9;
    double initial_temperature = 70.0;
    /// Multiplicative per iteration.
    double cooling = 0.95;
    /// Temperature never drops below initial_temperature * this.
    double temperature_floor = 1e-3;
    /// Relative energy decrease below which relaxation stops.
    double energy_threshold = 1e-3;

    std::size_t max_iteration = 500;
    /// Number of discrete-phase rounds.
    std::size_t mdc_rounds = 50;
    /// Swap attempts per round.
    std::size_t swap_attempts = 100;
    /// Relaxation budget after a committed swap.
    std::size_t post_swap_iterations = 50;

    /// Pendant distance as a fraction of the slot spacing.
    double pendant_radius_factor = 0.35;
    std::uint64_t seed = 0;

    /// Defaults: outer oval 0.42 of the canvas on each axis, inner oval half of
    /// it, initial temperature 0.1 * min(width, height).
    static LayoutConfig for_canvas(double width, double height, std::uint64_t seed = 0);

    /// Throws ConfigError when an invariant is broken.
    void validate() const;
};

struct LayoutStats {
    std::size_t relax_calls = 0;
    std::size_t force_iterations = 0;
    /// Iterations of the first (Max_iteration budget) relaxation.
    std::size_t first_relax_iterations = 0;
    /// True when the first relaxation stopped on the energy threshold.
    bool first_relax_converged = false;
    std::size_t swap_attempts = 0;
    std::size_t swaps_tried = 0;
    std::size_t swaps_accepted = 0;
    std::optional<std::size_t> crossings_after_first_relax;

    friend bool operator==(const LayoutStats&, const LayoutStats&) = default;
};

/// Mutable state of one layout run.
struct LayoutState {
    /// slot_of_paper[p] is the slot index of paper-node p.
    std::vector<std::size_t> slot_of_paper;
    /// Slot positions on the outer oval.
    std::vector<Point> slots;
    /// Parallel to BundledGraph::free_authors.
    std::vector<Point> free_positions;
    /// Parallel to BundledGraph::pendant_authors; empty until placement.
    std::vector<Point> pendant_positions;

    /// Energy of the last two force evaluations.
    std::optional<double> energy_previous;
    std::optional<double> energy_current;
    std::optional<CrossingReport> crossing_report;

    std::mt19937_64 rng;
    LayoutStats stats;

    Point paper_position(std::size_t paper) const { return slots[slot_of_paper[paper]]; }
    bool pendants_placed() const noexcept { return placed_; }

    friend bool operator==(const LayoutState&, const LayoutState&) = default;

private:
    bool placed_ = false;
    friend LayoutState place_pendants(const BundledGraph&, LayoutState, const LayoutConfig&);
};

/// Position of any author-node; pendants must already be placed.
Point author_position(const BundledGraph& g, const LayoutState& s, std::size_t author);

/// Segments for all links between free authors and papers. Pendant links are
/// excluded from crossing work.
std::vector<LinkSegment> free_link_segments(const BundledGraph& g, const LayoutState& s);

CrossingReport count_layout_crossings(const BundledGraph& g, const LayoutState& s);

LayoutState initial_positioning(const BundledGraph& g, const LayoutConfig& cfg);

/// k = C * sqrt(area / (free authors + paper-nodes))
double ideal_distance(const BundledGraph& g, const LayoutConfig& cfg);

inline double attraction_magnitude(double d, double k) noexcept { return d * d / k; }
inline double repulsion_magnitude(double d, double k) noexcept { return k * k / d; }

/// Net force on each free author, parallel to BundledGraph::free_authors.
std::vector<Point> compute_forces(const BundledGraph& g, const LayoutState& s, const LayoutConfig& cfg);

struct RelaxResult {
    std::size_t iterations = 0;
    bool converged = false;
};

/// Force-directed relaxation of the free authors. Stops when the relative
/// energy decrease drops below the threshold or after `budget` iterations.
LayoutState relax(const BundledGraph& g, LayoutState s, const LayoutConfig& cfg, std::size_t budget,
                  RelaxResult* result = nullptr);

/// Two distinct paper-nodes, each drawn with weight (share + 1). nullopt when
/// fewer than two paper-nodes exist.
std::optional<std::pair<std::size_t, std::size_t>> choose_swap_candidates(const CrossingReport& report,
                                                                          std::mt19937_64& rng);

/// Change in total crossings if p1 and p2 exchanged slots.
long long swap_delta(const BundledGraph& g, const LayoutState& s, std::size_t p1, std::size_t p2);

/// One discrete round: try swaps until one lowers the crossing count (after
/// the follow-up relaxation) or the attempt budget runs out.
LayoutState mixed_discrete_continuous(const BundledGraph& g, LayoutState s, const LayoutConfig& cfg);

LayoutState place_pendants(const BundledGraph& g, LayoutState s, const LayoutConfig& cfg);

/// pendant_radius_factor times the shortest chord between neighbouring slots,
/// capped so pendants stay on the canvas.
double pendant_radius(const BundledGraph& g, const LayoutState& s, const LayoutConfig& cfg);

LayoutState run_layout(const BundledGraph& g, const LayoutConfig& cfg);

}  // namespace hyperlay
