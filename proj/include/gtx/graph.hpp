#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtx/errors.hpp"

namespace gtx {

using Id = std::int64_t;
using Symbol = std::string;

/// A finite alphabet of node and edge label symbols.
struct LabelAlphabet {
    std::set<Symbol> node_labels;
    std::set<Symbol> edge_labels;

    bool operator==(const LabelAlphabet&) const = default;
};

struct Node {
    Id id = 0;
    std::optional<Symbol> label;  // absent = unlabelled
    std::optional<bool> rooted;   // absent = rootedness undefined
};

struct Edge {
    Id id = 0;
    Id src = 0;
    Id tgt = 0;
    Symbol label;
};

/// A finite directed graph with partial node labels, total edge labels and
/// partial rootedness. Nodes and edges are kept sorted by id, so iteration
/// order is deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(LabelAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

    const LabelAlphabet& alphabet() const { return alphabet_; }
    void set_alphabet(LabelAlphabet a) { alphabet_ = std::move(a); }

    void add_node(Id id, std::optional<Symbol> label = std::nullopt,
                  std::optional<bool> rooted = std::nullopt);
    void add_edge(Id id, Id src, Id tgt, Symbol label);

    void remove_node(Id id);  // caller keeps incident edges consistent
    void remove_edge(Id id);

    bool has_node(Id id) const { return node_idx_.count(id) != 0; }
    bool has_edge(Id id) const { return edge_idx_.count(id) != 0; }

    const Node& node(Id id) const;
    const Edge& edge(Id id) const;
    Node& node(Id id);
    Edge& edge(Id id);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t size() const { return nodes_.size() + edges_.size(); }
    bool empty() const { return nodes_.empty() && edges_.empty(); }

    Id max_node_id() const { return nodes_.empty() ? -1 : nodes_.back().id; }
    Id max_edge_id() const { return edges_.empty() ? -1 : edges_.back().id; }

    int indegree(Id node) const;
    int outdegree(Id node) const;
    int degree(Id node) const { return indegree(node) + outdegree(node); }

    bool totally_labelled() const;
    bool totally_rooted() const;

    std::vector<Id> node_ids() const;
    std::vector<Id> edge_ids() const;
    std::vector<Id> root_ids() const;  // nodes with rooted == true, ascending

    bool operator==(const Graph& other) const;

private:
    LabelAlphabet alphabet_;
    std::vector<Node> nodes_;  // sorted by id
    std::vector<Edge> edges_;  // sorted by id
    std::unordered_map<Id, std::size_t> node_idx_;
    std::unordered_map<Id, std::size_t> edge_idx_;

    void reindex_nodes(std::size_t from);
    void reindex_edges(std::size_t from);
};

struct DegreeStats {
    int max_degree = 0;
    int root_count = 0;
};

DegreeStats degree_stats(const Graph& g);

/// Checks the structural invariants of `g` over alphabet `a`. Returns one
/// message per violation; an empty list means the graph is valid.
std::vector<std::string> validate_graph(const Graph& g, const LabelAlphabet& a);

/// Connected components (undirected), as sets of node ids. Components are
/// ordered by their smallest node id.
std::vector<std::vector<Id>> connected_components(const Graph& g);

} // namespace gtx
