#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlay {

/// Authors plus a multiset of hyperedges (papers), as read from input.
///
/// Hyperedges hold author indices in input order. The same member set may
/// appear any number of times; bundling collapses those duplicates.
struct Hypergraph {
    std::vector<std::string> authors;
    std::vector<std::vector<std::size_t>> hyperedges;
    /// Either empty or parallel to `hyperedges`.
    std::vector<std::optional<std::string>> labels;

    /// Throws ReferenceError or ValidationError when an invariant is broken.
    void validate() const;
};

enum class InputFormat { json, edgelist };

/// Parses `json` (`{"authors": [...], "hyperedges": [[...]], "labels": [...]}`)
/// or `edgelist` (one hyperedge per line, whitespace separated author names,
/// `#` comments). Author order is first appearance; hyperedge order is input
/// order. Every listed author must occur in some hyperedge.
Hypergraph parse_hypergraph(std::string_view input, InputFormat format);

std::optional<InputFormat> input_format_from_name(std::string_view name);

struct AuthorNode {
    std::size_t index = 0;
    std::string id;
    bool pendant = false;
};

struct PaperNode {
    std::size_t index = 0;
    /// Sorted ascending.
    std::vector<std::size_t> members;
    std::size_t cardinality = 0;
    std::size_t multiplicity = 0;
    /// Labels of the bundled originals that carried one, in input order.
    std::vector<std::string> labels;
};

struct Link {
    std::size_t author = 0;
    std::size_t paper = 0;

    friend bool operator==(const Link&, const Link&) = default;
};

/// Star expansion of a hypergraph after merging hyperedges that are equal
/// as sets. Authors split into free (non-pendant) and pendant classes.
struct BundledGraph {
    std::vector<AuthorNode> authors;
    std::vector<PaperNode> papers;
    /// Paper-major, member ascending.
    std::vector<Link> links;

    /// Author indices by class, ascending.
    std::vector<std::size_t> free_authors;
    std::vector<std::size_t> pendant_authors;
    /// Position of each author inside its class list.
    std::vector<std::size_t> class_slot;
    /// For pendant authors, the single paper they attach to.
    std::vector<std::size_t> pendant_paper;

    std::size_t hyperedge_count = 0;

    std::size_t node_count() const noexcept { return authors.size() + papers.size(); }
};

BundledGraph bundle(const Hypergraph& h);

/// Expands each paper-node back into `multiplicity` copies of its member set.
std::vector<std::vector<std::size_t>> unbundle(const BundledGraph& g);

struct DegreeProfile {
    /// cardinality -> number of paper-nodes with that cardinality
    std::map<std::size_t, std::size_t> papers_by_cardinality;
    /// per author: sum of multiplicities of incident paper-nodes
    std::vector<std::size_t> publications;
};

DegreeProfile degree_profile(const BundledGraph& g);

}  // namespace hyperlay
