#include "hyperlay/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "hyperlay/error.hpp"

namespace hyperlay {

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<std::size_t>& v) const noexcept {
        std::size_t h = v.size();
        for (std::size_t x : v) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Hypergraph parse_edgelist(std::string_view input) {
    Hypergraph h;
    std::unordered_map<std::string, std::size_t> index_of;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= input.size()) {
        std::size_t end = input.find('\n', pos);
        if (end == std::string_view::npos) end = input.size();
        std::string_view line = input.substr(pos, end - pos);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        std::vector<std::size_t> edge;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_space(line[i])) ++i;
            std::size_t start = i;
            while (i < line.size() && !is_space(line[i])) ++i;
            if (start == i) break;
            std::string token(line.substr(start, i - start));
            auto [it, inserted] = index_of.emplace(token, h.authors.size());
            if (inserted) h.authors.push_back(token);
            if (std::find(edge.begin(), edge.end(), it->second) != edge.end()) {
                throw ValidationError("duplicate author '" + token + "' in hyperedge on line " +
                                      std::to_string(line_no));
            }
            edge.push_back(it->second);
        }
        if (!edge.empty()) h.hyperedges.push_back(std::move(edge));
        if (end == input.size()) break;
        pos = end + 1;
    }
    return h;
}

Hypergraph parse_json(std::string_view input) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(input.begin(), input.end());
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports the 1-based position of the offending byte.
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, column] = line_and_column(input, byte);
        throw ParseError("malformed JSON", line, column, byte);
    }
    if (!doc.is_object()) throw ValidationError("top-level JSON value must be an object");
    if (!doc.contains("authors") || !doc["authors"].is_array()) {
        throw ValidationError("'authors' must be an array of strings");
    }
    if (!doc.contains("hyperedges") || !doc["hyperedges"].is_array()) {
        throw ValidationError("'hyperedges' must be an array of index arrays");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "authors" && key != "hyperedges" && key != "labels") {
            throw ValidationError("unknown key '" + key + "'");
        }
    }

    Hypergraph h;
    for (const auto& a : doc["authors"]) {
        if (!a.is_string()) throw ValidationError("author identifiers must be strings");
        h.authors.push_back(a.get<std::string>());
    }
    std::size_t edge_no = 0;
    for (const auto& e : doc["hyperedges"]) {
        if (!e.is_array()) throw ValidationError("hyperedge " + std::to_string(edge_no) + " is not an array");
        std::vector<std::size_t> edge;
        for (const auto& v : e) {
            if (v.is_number_unsigned()) {
                edge.push_back(v.get<std::size_t>());
            } else if (v.is_number_integer()) {
                throw ReferenceError("hyperedge " + std::to_string(edge_no) + " references negative author index");
            } else {
                throw ValidationError("hyperedge " + std::to_string(edge_no) + " holds a non-integer author index");
            }
        }
        h.hyperedges.push_back(std::move(edge));
        ++edge_no;
    }
    if (doc.contains("labels")) {
        const auto& labels = doc["labels"];
        if (!labels.is_array()) throw ValidationError("'labels' must be an array");
        for (const auto& l : labels) {
            if (l.is_null()) {
                h.labels.emplace_back();
            } else if (l.is_string()) {
                h.labels.emplace_back(l.get<std::string>());
            } else {
                throw ValidationError("labels must be strings or null");
            }
        }
    }
    return h;
}

}  // namespace

void Hypergraph::validate() const {
    std::unordered_set<std::string_view> seen;
    for (const auto& a : authors) {
        if (!seen.insert(a).second) throw ValidationError("duplicate author identifier '" + a + "'");
    }
    if (!labels.empty() && labels.size() != hyperedges.size()) {
        throw ValidationError("'labels' must have one entry per hyperedge");
    }
    std::vector<bool> used(authors.size(), false);
    for (std::size_t e = 0; e < hyperedges.size(); ++e) {
        const auto& edge = hyperedges[e];
        if (edge.empty()) throw ValidationError("hyperedge " + std::to_string(e) + " is empty");
        for (std::size_t a : edge) {
            if (a >= authors.size()) {
                throw ReferenceError("hyperedge " + std::to_string(e) + " references unknown author index " +
                                     std::to_string(a));
            }
        }
        std::vector<std::size_t> sorted = edge;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ValidationError("hyperedge " + std::to_string(e) + " repeats an author");
        }
        for (std::size_t a : edge) used[a] = true;
    }
    for (std::size_t a = 0; a < authors.size(); ++a) {
        if (!used[a]) throw ValidationError("author '" + authors[a] + "' belongs to no hyperedge");
    }
}

Hypergraph parse_hypergraph(std::string_view input, InputFormat format) {
    Hypergraph h = format == InputFormat::json ? parse_json(input) : parse_edgelist(input);
    h.validate();
    return h;
}

std::optional<InputFormat> input_format_from_name(std::string_view name) {
    if (name == "json") return InputFormat::json;
    if (name == "edgelist") return InputFormat::edgelist;
    return std::nullopt;
}

BundledGraph bundle(const Hypergraph& h) {
    BundledGraph g;
    g.hyperedge_count = h.hyperedges.size();

    std::unordered_map<std::vector<std::size_t>, std::size_t, VectorHash> paper_of;
    for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
        std::vector<std::size_t> key = h.hyperedges[e];
        std::sort(key.begin(), key.end());
        auto [it, inserted] = paper_of.emplace(key, g.papers.size());
        if (inserted) {
            PaperNode p;
            p.index = g.papers.size();
            p.cardinality = key.size();
            p.members = std::move(key);
            g.papers.push_back(std::move(p));
        }
        PaperNode& paper = g.papers[it->second];
        ++paper.multiplicity;
        if (e < h.labels.size() && h.labels[e]) paper.labels.push_back(*h.labels[e]);
    }

    std::vector<std::size_t> degree(h.authors.size(), 0);
    std::vector<std::size_t> last_paper(h.authors.size(), 0);
    for (const auto& p : g.papers) {
        for (std::size_t a : p.members) {
            g.links.push_back({a, p.index});
            ++degree[a];
            last_paper[a] = p.index;
        }
    }

    g.class_slot.resize(h.authors.size());
    g.pendant_paper.assign(h.authors.size(), 0);
    for (std::size_t a = 0; a < h.authors.size(); ++a) {
        bool pendant = degree[a] == 1;
        g.authors.push_back({a, h.authors[a], pendant});
        if (pendant) {
            g.class_slot[a] = g.pendant_authors.size();
            g.pendant_authors.push_back(a);
            g.pendant_paper[a] = last_paper[a];
        } else {
            g.class_slot[a] = g.free_authors.size();
            g.free_authors.push_back(a);
        }
    }
    return g;
}

std::vector<std::vector<std::size_t>> unbundle(const BundledGraph& g) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& p : g.papers) {
        for (std::size_t i = 0; i < p.multiplicity; ++i) out.push_back(p.members);
    }
    return out;
}

DegreeProfile degree_profile(const BundledGraph& g) {
    DegreeProfile d;
    d.publications.assign(g.authors.size(), 0);
    for (const auto& p : g.papers) ++d.papers_by_cardinality[p.cardinality];
    for (const Link& l : g.links) d.publications[l.author] += g.papers[l.paper].multiplicity;
    return d;
}

}  // namespace hyperlay
