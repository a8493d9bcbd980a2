#pragma once

// Test-only generators and oracles. Nothing here calls into the code paths it
// is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlay/geometry.hpp"
#include "hyperlay/model.hpp"

namespace hyperlay::testing {

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline std::string author_name(std::size_t i) {
    return "author_" + std::string(i < 10 ? "0" : "") + std::to_string(i);
}

/// Random hypergraph with every author used, hyperedge sizes in [1, max_card].
inline Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t authors, std::size_t edges,
                                    std::size_t max_card = 4) {
    Hypergraph h;
    for (std::size_t a = 0; a < authors; ++a) h.authors.push_back(author_name(a));
    std::vector<std::size_t> order(authors);
    for (std::size_t a = 0; a < authors; ++a) order[a] = a;
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t next_unused = 0;
    for (std::size_t e = 0; e < edges; ++e) {
        std::size_t size = 1 + pick(rng, std::min(max_card, authors));
        std::set<std::size_t> members;
        // Spread the remaining unused authors over the remaining edges.
        std::size_t remaining_edges = edges - e;
        std::size_t unused = authors - next_unused;
        std::size_t must = (unused + remaining_edges - 1) / remaining_edges;
        size = std::max(size, std::min(must, max_card));
        while (members.size() < size && next_unused < authors && members.size() < must) {
            members.insert(order[next_unused++]);
        }
        while (members.size() < size) members.insert(pick(rng, authors));
        h.hyperedges.emplace_back(members.begin(), members.end());
    }
    // Any author still unused gets a singleton edge of its own.
    while (next_unused < authors) h.hyperedges.push_back({order[next_unused++]});
    return h;
}

/// A dataset with the reference shape: 33 authors, 48 hyperedges of sizes
/// 1-4 whose member sets collapse to 30 distinct sets, every author used,
/// one connected component.
inline Hypergraph twin_dataset(std::uint64_t seed) {
    constexpr std::size_t authors = 33;
    constexpr std::size_t distinct = 30;
    constexpr std::size_t total = 48;
    const std::vector<std::size_t> sizes = {1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2,
                                            2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4};
    std::mt19937_64 rng(seed);
    for (;;) {
        std::vector<std::vector<std::size_t>> sets;
        std::set<std::vector<std::size_t>> seen;
        std::vector<bool> covered(authors, false);
        std::size_t next_new = 0;
        std::vector<std::size_t> order = sizes;
        std::shuffle(order.begin() + 1, order.end(), rng);
        // Put the largest sets first so the component can grow from them.
        std::stable_sort(order.begin(), order.end(), [](auto a, auto b) { return (a >= 3) > (b >= 3); });
        bool ok = true;
        for (std::size_t size : order) {
            std::vector<std::size_t> members;
            for (int tries = 0; tries < 200; ++tries) {
                std::set<std::size_t> m;
                if (!sets.empty()) {
                    std::vector<std::size_t> covered_list;
                    for (std::size_t a = 0; a < authors; ++a) {
                        if (covered[a]) covered_list.push_back(a);
                    }
                    m.insert(covered_list[pick(rng, covered_list.size())]);
                }
                while (m.size() < size && next_new < authors) m.insert(next_new++);
                while (m.size() < size) m.insert(pick(rng, authors));
                members.assign(m.begin(), m.end());
                if (!seen.count(members)) break;
                members.clear();
            }
            if (members.empty()) {
                ok = false;
                break;
            }
            seen.insert(members);
            for (std::size_t a : members) covered[a] = true;
            sets.push_back(members);
        }
        if (!ok || std::count(covered.begin(), covered.end(), true) != static_cast<long>(authors) ||
            sets.size() != distinct) {
            continue;
        }
        std::vector<std::vector<std::size_t>> edges = sets;
        while (edges.size() < total) edges.push_back(sets[pick(rng, sets.size())]);
        std::shuffle(edges.begin(), edges.end(), rng);

        Hypergraph h;
        // Author order is first appearance, as a parser would produce it.
        std::vector<long> renamed(authors, -1);
        std::size_t next_id = 0;
        for (auto& e : edges) {
            std::shuffle(e.begin(), e.end(), rng);
            for (auto& a : e) {
                if (renamed[a] < 0) renamed[a] = static_cast<long>(next_id++);
                a = static_cast<std::size_t>(renamed[a]);
            }
        }
        for (std::size_t a = 0; a < authors; ++a) h.authors.push_back(author_name(a));
        h.hyperedges = std::move(edges);
        return h;
    }
}

inline std::string to_json(const Hypergraph& h) {
    nlohmann::json doc;
    doc["authors"] = h.authors;
    doc["hyperedges"] = h.hyperedges;
    return doc.dump();
}

inline std::string to_edgelist(const Hypergraph& h) {
    std::string out;
    for (const auto& e : h.hyperedges) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i > 0) out += ' ';
            out += h.authors[e[i]];
        }
        out += '\n';
    }
    return out;
}

/// Number of distinct member sets, by brute-force pairwise comparison.
inline std::size_t brute_force_distinct_sets(const std::vector<std::vector<std::size_t>>& edges) {
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        bool repeated = false;
        for (std::size_t j = 0; j < i && !repeated; ++j) {
            if (edges[i].size() != edges[j].size()) continue;
            bool same = true;
            for (std::size_t a : edges[i]) {
                if (std::find(edges[j].begin(), edges[j].end(), a) == edges[j].end()) same = false;
            }
            repeated = same;
        }
        if (!repeated) ++distinct;
    }
    return distinct;
}

/// Parametric intersection: solve p + t r = q + u s and require 0 < t, u < 1.
inline bool parametric_cross(Point p1, Point p2, Point q1, Point q2) {
    const double rx = p2.x - p1.x, ry = p2.y - p1.y;
    const double sx = q2.x - q1.x, sy = q2.y - q1.y;
    const double denom = rx * sy - ry * sx;
    if (denom == 0.0) return false;
    const double qpx = q1.x - p1.x, qpy = q1.y - p1.y;
    const double t = (qpx * sy - qpy * sx) / denom;
    const double u = (qpx * ry - qpy * rx) / denom;
    return t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0;
}

struct OracleReport {
    std::size_t total = 0;
    std::vector<std::size_t> per_paper;
};

/// Double loop over ordered pairs, halved at the end.
inline OracleReport oracle_crossings(const std::vector<LinkSegment>& links, std::size_t papers) {
    OracleReport r;
    r.per_paper.assign(papers, 0);
    std::size_t ordered = 0;
    for (std::size_t i = 0; i < links.size(); ++i) {
        for (std::size_t j = 0; j < links.size(); ++j) {
            if (i == j) continue;
            const auto& a = links[i];
            const auto& b = links[j];
            if (a.author == b.author || a.paper == b.paper) continue;
            if (!parametric_cross(a.author_pos, a.paper_pos, b.author_pos, b.paper_pos)) continue;
            ++ordered;
            ++r.per_paper[a.paper];
        }
    }
    r.total = ordered / 2;
    return r;
}

}  // namespace hyperlay::testing
