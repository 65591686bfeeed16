#include "gtx/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

namespace gtx {

void Graph::add_node(Id id, std::optional<Symbol> label, std::optional<bool> rooted) {
    if (has_node(id)) throw Error("duplicate node id " + std::to_string(id));
    Node n{id, std::move(label), rooted};
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const Node& a, Id b) { return a.id < b; });
    std::size_t pos = static_cast<std::size_t>(it - nodes_.begin());
    nodes_.insert(it, std::move(n));
    reindex_nodes(pos);
}

void Graph::add_edge(Id id, Id src, Id tgt, Symbol label) {
    if (has_edge(id)) throw Error("duplicate edge id " + std::to_string(id));
    Edge e{id, src, tgt, std::move(label)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& a, Id b) { return a.id < b; });
    std::size_t pos = static_cast<std::size_t>(it - edges_.begin());
    edges_.insert(it, std::move(e));
    reindex_edges(pos);
}

void Graph::remove_node(Id id) {
    auto it = node_idx_.find(id);
    if (it == node_idx_.end()) throw Error("no node " + std::to_string(id));
    std::size_t pos = it->second;
    nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(pos));
    node_idx_.erase(it);
    reindex_nodes(pos);
}

void Graph::remove_edge(Id id) {
    auto it = edge_idx_.find(id);
    if (it == edge_idx_.end()) throw Error("no edge " + std::to_string(id));
    std::size_t pos = it->second;
    edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(pos));
    edge_idx_.erase(it);
    reindex_edges(pos);
}

void Graph::reindex_nodes(std::size_t from) {
    for (std::size_t i = from; i < nodes_.size(); ++i) node_idx_[nodes_[i].id] = i;
}

void Graph::reindex_edges(std::size_t from) {
    for (std::size_t i = from; i < edges_.size(); ++i) edge_idx_[edges_[i].id] = i;
}

const Node& Graph::node(Id id) const {
    auto it = node_idx_.find(id);
    if (it == node_idx_.end()) throw Error("no node " + std::to_string(id));
    return nodes_[it->second];
}

const Edge& Graph::edge(Id id) const {
    auto it = edge_idx_.find(id);
    if (it == edge_idx_.end()) throw Error("no edge " + std::to_string(id));
    return edges_[it->second];
}

Node& Graph::node(Id id) { return const_cast<Node&>(std::as_const(*this).node(id)); }
Edge& Graph::edge(Id id) { return const_cast<Edge&>(std::as_const(*this).edge(id)); }

int Graph::indegree(Id node) const {
    int d = 0;
    for (const Edge& e : edges_)
        if (e.tgt == node) ++d;
    return d;
}

int Graph::outdegree(Id node) const {
    int d = 0;
    for (const Edge& e : edges_)
        if (e.src == node) ++d;
    return d;
}

bool Graph::totally_labelled() const {
    return std::all_of(nodes_.begin(), nodes_.end(),
                       [](const Node& n) { return n.label.has_value(); });
}

bool Graph::totally_rooted() const {
    return std::all_of(nodes_.begin(), nodes_.end(),
                       [](const Node& n) { return n.rooted.has_value(); });
}

std::vector<Id> Graph::node_ids() const {
    std::vector<Id> ids;
    ids.reserve(nodes_.size());
    for (const Node& n : nodes_) ids.push_back(n.id);
    return ids;
}

std::vector<Id> Graph::edge_ids() const {
    std::vector<Id> ids;
    ids.reserve(edges_.size());
    for (const Edge& e : edges_) ids.push_back(e.id);
    return ids;
}

std::vector<Id> Graph::root_ids() const {
    std::vector<Id> ids;
    for (const Node& n : nodes_)
        if (n.rooted == true) ids.push_back(n.id);
    return ids;
}

bool Graph::operator==(const Graph& other) const {
    if (alphabet_ != other.alphabet_) return false;
    if (nodes_.size() != other.nodes_.size() || edges_.size() != other.edges_.size())
        return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& a = nodes_[i];
        const Node& b = other.nodes_[i];
        if (a.id != b.id || a.label != b.label || a.rooted != b.rooted) return false;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& a = edges_[i];
        const Edge& b = other.edges_[i];
        if (a.id != b.id || a.src != b.src || a.tgt != b.tgt || a.label != b.label)
            return false;
    }
    return true;
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats st;
    std::unordered_map<Id, int> deg;
    for (const Edge& e : g.edges()) {
        ++deg[e.src];
        ++deg[e.tgt];
    }
    for (const Node& n : g.nodes()) {
        auto it = deg.find(n.id);
        int d = it == deg.end() ? 0 : it->second;
        st.max_degree = std::max(st.max_degree, d);
        if (n.rooted == true) ++st.root_count;
    }
    return st;
}

std::vector<std::string> validate_graph(const Graph& g, const LabelAlphabet& a) {
    std::vector<std::string> out;
    for (const Node& n : g.nodes()) {
        if (n.label && a.node_labels.count(*n.label) == 0)
            out.push_back("node " + std::to_string(n.id) + ": label '" + *n.label +
                          "' not in alphabet");
    }
    for (const Edge& e : g.edges()) {
        if (!g.has_node(e.src))
            out.push_back("edge " + std::to_string(e.id) + ": source node " +
                          std::to_string(e.src) + " missing");
        if (!g.has_node(e.tgt))
            out.push_back("edge " + std::to_string(e.id) + ": target node " +
                          std::to_string(e.tgt) + " missing");
        if (a.edge_labels.count(e.label) == 0)
            out.push_back("edge " + std::to_string(e.id) + ": label '" + e.label +
                          "' not in alphabet");
    }
    return out;
}

std::vector<std::vector<Id>> connected_components(const Graph& g) {
    // union-find over node ids
    std::unordered_map<Id, Id> parent;
    for (const Node& n : g.nodes()) parent[n.id] = n.id;
    std::function<Id(Id)> find = [&](Id x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const Edge& e : g.edges()) {
        Id a = find(e.src), b = find(e.tgt);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<Id, std::vector<Id>> comps;
    for (const Node& n : g.nodes()) comps[find(n.id)].push_back(n.id);
    std::vector<std::vector<Id>> out;
    out.reserve(comps.size());
    for (auto& [root, ids] : comps) out.push_back(std::move(ids));
    return out;
}

} // namespace gtx
