#include "hyperlay/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hyperlay/error.hpp"

namespace hyperlay {

namespace {

constexpr double min_distance = 1e-9;
constexpr double energy_floor = 1e-12;
constexpr double degrees = std::numbers::pi / 180.0;
constexpr double pendant_fan_step = 15.0 * degrees;
constexpr double pendant_retreat_step = 5.0 * degrees;
constexpr int max_candidate_redraws = 16;

double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Unbiased integer in [0, n), n > 0. Independent of the standard library's
// distribution implementations so seeds reproduce across toolchains.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

// Direction used when two nodes coincide: fixed per (i, j) pair.
Point pair_direction(std::size_t i, std::size_t j) {
    std::uint64_t h = (static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL) ^
                      (static_cast<std::uint64_t>(j) * 0xc2b2ae3d27d4eb4fULL);
    double angle = static_cast<double>(h % 3600) * (2.0 * std::numbers::pi / 3600.0);
    return {std::cos(angle), std::sin(angle)};
}

// Unit vector from `to` towards `from` plus the clamped distance between them.
std::pair<Point, double> separation(Point from, Point to, std::size_t i, std::size_t j) {
    Point v = from - to;
    double d = norm(v);
    if (d < min_distance) return {pair_direction(i, j), min_distance};
    return {(1.0 / d) * v, d};
}

double energy_of(const std::vector<Point>& forces) {
    double e = 0.0;
    for (Point f : forces) e += squared_norm(f);
    return e;
}

bool oval_inside(const Oval& inner, const Oval& outer) {
    constexpr int samples = 720;
    for (Point p : oval_slots(samples, inner, 0.0)) {
        if (outer.implicit(p) >= 0.0) return false;
    }
    return true;
}

// Distance from the outer oval's bounding box to the nearest canvas edge.
double canvas_margin(const LayoutConfig& cfg) {
    const Oval& o = cfg.outer_oval;
    Point c = o.center();
    return std::min({c.x - o.semi_axis_x(), cfg.canvas_width - c.x - o.semi_axis_x(), c.y - o.semi_axis_y(),
                     cfg.canvas_height - c.y - o.semi_axis_y()});
}

void ensure_layout_preconditions(const BundledGraph& g, const LayoutState& s) {
    if (s.slot_of_paper.size() != g.papers.size() || s.free_positions.size() != g.free_authors.size()) {
        throw ArgumentError("layout state does not match the graph");
    }
}

}  // namespace

LayoutConfig LayoutConfig::for_canvas(double width, double height, std::uint64_t seed) {
    if (!(width > 0.0) || !(height > 0.0)) throw ConfigError("canvas dimensions must be positive");
    LayoutConfig cfg;
    cfg.canvas_width = width;
    cfg.canvas_height = height;
    cfg.outer_oval = Oval({width / 2.0, height / 2.0}, 0.42 * width, 0.42 * height);
    cfg.inner_oval = cfg.outer_oval.scaled(0.5);
    cfg.initial_temperature = 0.1 * std::min(width, height);
    cfg.seed = seed;
    return cfg;
}

void LayoutConfig::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(canvas_width) || !positive(canvas_height)) throw ConfigError("canvas dimensions must be positive");
    if (!positive(fr_constant)) throw ConfigError("force constant must be positive");
    if (!positive(initial_temperature)) throw ConfigError("initial temperature must be positive");
    if (!(cooling > 0.0 && cooling < 1.0)) throw ConfigError("cooling must lie in (0, 1)");
    if (!(temperature_floor > 0.0 && temperature_floor <= 1.0)) throw ConfigError("temperature floor must lie in (0, 1]");
    if (!positive(energy_threshold)) throw ConfigError("energy threshold must be positive");
    if (!positive(pendant_radius_factor)) throw ConfigError("pendant radius factor must be positive");
    if (max_iteration < 1 || mdc_rounds < 1 || swap_attempts < 1 || post_swap_iterations < 1) {
        throw ConfigError("iteration counts must be at least 1");
    }
    if (!(canvas_margin(*this) > 0.0)) throw ConfigError("outer oval must lie strictly inside the canvas");
    if (!oval_inside(inner_oval, outer_oval)) throw ConfigError("inner oval must lie strictly inside the outer oval");
}

Point author_position(const BundledGraph& g, const LayoutState& s, std::size_t author) {
    const std::size_t slot = g.class_slot[author];
    if (g.authors[author].pendant) {
        if (!s.pendants_placed()) throw ArgumentError("pendant authors have not been placed yet");
        return s.pendant_positions[slot];
    }
    return s.free_positions[slot];
}

std::vector<LinkSegment> free_link_segments(const BundledGraph& g, const LayoutState& s) {
    std::vector<LinkSegment> segments;
    segments.reserve(g.links.size());
    for (const Link& l : g.links) {
        if (g.authors[l.author].pendant) continue;
        segments.push_back({s.free_positions[g.class_slot[l.author]], s.paper_position(l.paper), l.author, l.paper});
    }
    return segments;
}

CrossingReport count_layout_crossings(const BundledGraph& g, const LayoutState& s) {
    return count_crossings(free_link_segments(g, s), g.papers.size());
}

LayoutState initial_positioning(const BundledGraph& g, const LayoutConfig& cfg) {
    if (g.papers.empty()) throw ArgumentError("layout needs at least one paper-node");
    LayoutState s;
    s.rng.seed(cfg.seed);
    s.slots = oval_slots(g.papers.size(), cfg.outer_oval, 0.0);
    s.slot_of_paper.resize(g.papers.size());
    for (std::size_t p = 0; p < g.papers.size(); ++p) s.slot_of_paper[p] = p;

    double offset = 2.0 * std::numbers::pi * unit_interval(s.rng);
    if (!g.free_authors.empty()) s.free_positions = oval_slots(g.free_authors.size(), cfg.inner_oval, offset);
    return s;
}

double ideal_distance(const BundledGraph& g, const LayoutConfig& cfg) {
    const double active = static_cast<double>(g.free_authors.size() + g.papers.size());
    return cfg.fr_constant * std::sqrt(cfg.canvas_width * cfg.canvas_height / std::max(active, 1.0));
}

std::vector<Point> compute_forces(const BundledGraph& g, const LayoutState& s, const LayoutConfig& cfg) {
    ensure_layout_preconditions(g, s);
    const double k = ideal_distance(g, cfg);
    const std::size_t n = g.free_authors.size();
    std::vector<Point> force(n);

    for (const Link& l : g.links) {
        if (g.authors[l.author].pendant) continue;
        const std::size_t i = g.class_slot[l.author];
        auto [away, d] = separation(s.free_positions[i], s.paper_position(l.paper), i, n + l.paper);
        force[i] -= attraction_magnitude(d, k) * away;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto [away, d] = separation(s.free_positions[i], s.free_positions[j], i, j);
            Point push = repulsion_magnitude(d, k) * away;
            force[i] += push;
            force[j] -= push;
        }
        for (std::size_t p = 0; p < g.papers.size(); ++p) {
            auto [away, d] = separation(s.free_positions[i], s.paper_position(p), i, n + p);
            force[i] += repulsion_magnitude(d, k) * away;
        }
    }
    return force;
}

LayoutState relax(const BundledGraph& g, LayoutState s, const LayoutConfig& cfg, std::size_t budget,
                  RelaxResult* result) {
    ensure_layout_preconditions(g, s);
    RelaxResult r;
    double temperature = cfg.initial_temperature;
    const double floor = cfg.initial_temperature * cfg.temperature_floor;
    ++s.stats.relax_calls;

    while (r.iterations < budget) {
        std::vector<Point> force = compute_forces(g, s, cfg);
        const double energy = energy_of(force);
        s.energy_previous = s.energy_current;
        s.energy_current = energy;
        ++r.iterations;
        ++s.stats.force_iterations;
        if (s.energy_previous) {
            double decrease = std::abs(*s.energy_previous - energy) / std::max(energy, energy_floor);
            if (decrease < cfg.energy_threshold) {
                r.converged = true;
                break;
            }
        }
        for (std::size_t i = 0; i < force.size(); ++i) {
            const double len = norm(force[i]);
            if (!(len > 0.0) || !std::isfinite(len)) continue;
            Point& pos = s.free_positions[i];
            pos += (std::min(len, temperature) / len) * force[i];
            pos.x = std::clamp(pos.x, 0.0, cfg.canvas_width);
            pos.y = std::clamp(pos.y, 0.0, cfg.canvas_height);
        }
        temperature = std::max(temperature * cfg.cooling, floor);
    }
    if (result) *result = r;
    return s;
}

std::optional<std::pair<std::size_t, std::size_t>> choose_swap_candidates(const CrossingReport& report,
                                                                          std::mt19937_64& rng) {
    const std::size_t m = report.per_paper.size();
    if (m < 2) return std::nullopt;
    std::uint64_t total_weight = 0;
    for (std::size_t share : report.per_paper) total_weight += share + 1;

    auto draw = [&] {
        std::uint64_t r = uniform_below(rng, total_weight);
        for (std::size_t p = 0; p < m; ++p) {
            const std::uint64_t w = report.per_paper[p] + 1;
            if (r < w) return p;
            r -= w;
        }
        return m - 1;
    };

    const std::size_t first = draw();
    std::size_t second = draw();
    for (int redraw = 0; second == first && redraw < max_candidate_redraws; ++redraw) second = draw();
    if (second == first) {
        const std::size_t r = uniform_below(rng, m - 1);
        second = r < first ? r : r + 1;
    }
    return std::pair{first, second};
}

long long swap_delta(const BundledGraph& g, const LayoutState& s, std::size_t p1, std::size_t p2) {
    if (p1 == p2 || p1 >= g.papers.size() || p2 >= g.papers.size()) {
        throw ArgumentError("swap_delta needs two distinct valid paper-nodes");
    }
    std::vector<LinkSegment> segments = free_link_segments(g, s);
    std::vector<std::size_t> touched;
    std::vector<bool> is_touched(segments.size(), false);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].paper == p1 || segments[i].paper == p2) {
            touched.push_back(i);
            is_touched[i] = true;
        }
    }

    // Pairs with at least one touched link; each unordered pair once.
    auto count_affected = [&] {
        long long count = 0;
        for (std::size_t t = 0; t < touched.size(); ++t) {
            const LinkSegment& a = segments[touched[t]];
            for (std::size_t j = 0; j < segments.size(); ++j) {
                if (is_touched[j] && j <= touched[t]) continue;
                const LinkSegment& b = segments[j];
                if (links_may_cross(a, b) && segments_cross(a.author_pos, a.paper_pos, b.author_pos, b.paper_pos)) {
                    ++count;
                }
            }
        }
        return count;
    };

    const long long before = count_affected();
    const Point pos1 = s.paper_position(p1);
    const Point pos2 = s.paper_position(p2);
    for (std::size_t i : touched) segments[i].paper_pos = segments[i].paper == p1 ? pos2 : pos1;
    return count_affected() - before;
}

LayoutState mixed_discrete_continuous(const BundledGraph& g, LayoutState s, const LayoutConfig& cfg) {
    if (!s.crossing_report) s.crossing_report = count_layout_crossings(g, s);
    const std::size_t before = s.crossing_report->total;
    if (before == 0) return s;

    for (std::size_t attempt = 0; attempt < cfg.swap_attempts; ++attempt) {
        ++s.stats.swap_attempts;
        auto candidates = choose_swap_candidates(*s.crossing_report, s.rng);
        if (!candidates) break;
        auto [p1, p2] = *candidates;
        if (swap_delta(g, s, p1, p2) >= 0) continue;

        LayoutState trial = s;
        std::swap(trial.slot_of_paper[p1], trial.slot_of_paper[p2]);
        ++trial.stats.swaps_tried;
        trial = relax(g, std::move(trial), cfg, cfg.post_swap_iterations);
        CrossingReport after = count_layout_crossings(g, trial);
        if (after.total < before) {
            trial.crossing_report = std::move(after);
            ++trial.stats.swaps_accepted;
            return trial;
        }
        // Relaxation undid the gain: keep the old drawing, carry the counters.
        s.stats = trial.stats;
    }
    return s;
}

double pendant_radius(const BundledGraph& g, const LayoutState& s, const LayoutConfig& cfg) {
    (void)g;
    double spacing = std::min(cfg.outer_oval.semi_axis_x(), cfg.outer_oval.semi_axis_y());
    if (s.slots.size() >= 2) {
        spacing = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < s.slots.size(); ++i) {
            spacing = std::min(spacing, norm(s.slots[(i + 1) % s.slots.size()] - s.slots[i]));
        }
    }
    return std::min(cfg.pendant_radius_factor * spacing, 0.9 * canvas_margin(cfg));
}

LayoutState place_pendants(const BundledGraph& g, LayoutState s, const LayoutConfig& cfg) {
    ensure_layout_preconditions(g, s);
    const double radius = pendant_radius(g, s, cfg);
    const Point center = cfg.outer_oval.center();
    std::vector<std::size_t> fan_count(g.papers.size(), 0);
    s.pendant_positions.assign(g.pendant_authors.size(), Point{});

    for (std::size_t i = 0; i < g.pendant_authors.size(); ++i) {
        const std::size_t paper = g.pendant_paper[g.pendant_authors[i]];
        const Point anchor = s.paper_position(paper);
        const Point outward = anchor - center;
        const double base = std::atan2(outward.y, outward.x);

        // Fan order: 0, +15, -15, +30, -30, ... degrees.
        const std::size_t k = fan_count[paper]++;
        const double magnitude = static_cast<double>((k + 1) / 2) * pendant_fan_step;
        double offset = k % 2 == 1 ? magnitude : -magnitude;

        auto candidate = [&](double off) {
            return anchor + radius * Point{std::cos(base + off), std::sin(base + off)};
        };
        Point pos = candidate(offset);
        while (point_oval_class(pos, cfg.outer_oval) != OvalSide::outside && offset != 0.0) {
            offset = std::abs(offset) <= pendant_retreat_step ? 0.0 : offset - std::copysign(pendant_retreat_step, offset);
            pos = candidate(offset);
        }
        s.pendant_positions[i] = pos;
    }
    s.placed_ = true;
    return s;
}

LayoutState run_layout(const BundledGraph& g, const LayoutConfig& cfg) {
    cfg.validate();
    LayoutState s = initial_positioning(g, cfg);

    RelaxResult first;
    s = relax(g, std::move(s), cfg, cfg.max_iteration, &first);
    s.stats.first_relax_iterations = first.iterations;
    s.stats.first_relax_converged = first.converged;

    s.crossing_report = count_layout_crossings(g, s);
    s.stats.crossings_after_first_relax = s.crossing_report->total;

    for (std::size_t round = 0; round < cfg.mdc_rounds; ++round) {
        s = mixed_discrete_continuous(g, std::move(s), cfg);
    }
    return place_pendants(g, std::move(s), cfg);
}

}  // namespace hyperlay
