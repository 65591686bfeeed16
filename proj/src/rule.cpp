#include "gtx/rule.hpp"

#include <algorithm>
#include <unordered_set>

namespace gtx {

std::vector<std::string> validate_rule(const Rule& r) {
    std::vector<std::string> out;
    auto graph_errs = [&](const Graph& g, const std::string& which) {
        for (auto& msg : validate_graph(g, r.left.alphabet()))
            out.push_back(which + ": " + msg);
    };
    graph_errs(r.left, "left");
    graph_errs(r.interface, "interface");
    graph_errs(r.right, "right");
    if (!r.left.totally_labelled() || !r.left.totally_rooted())
        out.push_back("left: must be totally labelled and totally rooted");
    if (!r.right.totally_labelled() || !r.right.totally_rooted())
        out.push_back("right: must be totally labelled and totally rooted");

    auto check_inclusion = [&](const Graph& big, const std::string& side) {
        for (const Node& n : r.interface.nodes()) {
            if (!big.has_node(n.id)) {
                out.push_back("interface node " + std::to_string(n.id) + " missing in " + side);
                continue;
            }
            const Node& b = big.node(n.id);
            if (n.label && b.label != n.label)
                out.push_back("interface node " + std::to_string(n.id) +
                              " label differs in " + side);
            if (n.rooted && b.rooted != n.rooted)
                out.push_back("interface node " + std::to_string(n.id) +
                              " rootedness differs in " + side);
        }
        for (const Edge& e : r.interface.edges()) {
            if (!big.has_edge(e.id)) {
                out.push_back("interface edge " + std::to_string(e.id) + " missing in " + side);
                continue;
            }
            const Edge& b = big.edge(e.id);
            if (b.src != e.src || b.tgt != e.tgt || b.label != e.label)
                out.push_back("interface edge " + std::to_string(e.id) +
                              " differs in " + side);
        }
    };
    check_inclusion(r.left, "left");
    check_inclusion(r.right, "right");
    return out;
}

Rule invert(const Rule& r) {
    // toggling the suffix keeps invert an involution on names too
    std::string name = r.name;
    const std::string suffix = "_inv";
    if (name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        name.resize(name.size() - suffix.size());
    else if (!name.empty())
        name += suffix;
    return Rule{std::move(name), r.right, r.interface, r.left};
}

Rule normalize(const Rule& r) {
    Graph k(r.interface.alphabet());
    for (const Node& n : r.interface.nodes()) k.add_node(n.id);
    return Rule{r.name, r.left, std::move(k), r.right};
}

bool is_normalized(const Rule& r) {
    if (r.interface.edge_count() != 0) return false;
    for (const Node& n : r.interface.nodes())
        if (n.label || n.rooted) return false;
    return true;
}

std::size_t rule_size(const Rule& r) {
    return std::max(r.left.size(), r.right.size());
}

bool rule_isomorphic(const Rule& r1, const Rule& r2) {
    if (r1.left.alphabet() != r2.left.alphabet()) return false;
    if (r1.interface.node_count() != r2.interface.node_count() ||
        r1.interface.edge_count() != r2.interface.edge_count())
        return false;
    std::unordered_set<Id> k2_nodes, k2_edges;
    for (const Node& n : r2.interface.nodes()) k2_nodes.insert(n.id);
    for (const Edge& e : r2.interface.edges()) k2_edges.insert(e.id);

    bool found = false;
    for_each_isomorphism(r1.left, r2.left, [&](const Morphism& f) {
        // f must carry K1 onto K2
        for (const Node& n : r1.interface.nodes())
            if (k2_nodes.count(f.node_map.at(n.id)) == 0) return false;
        for (const Edge& e : r1.interface.edges())
            if (k2_edges.count(f.edge_map.at(e.id)) == 0) return false;
        // g: R1 -> R2 agreeing with f on K1
        for_each_isomorphism(r1.right, r2.right, [&](const Morphism& g) {
            for (const Node& n : r1.interface.nodes())
                if (g.node_map.at(n.id) != f.node_map.at(n.id)) return false;
            for (const Edge& e : r1.interface.edges())
                if (g.edge_map.at(e.id) != f.edge_map.at(e.id)) return false;
            found = true;
            return true;
        });
        return found;
    });
    return found;
}

namespace {

void require_valid_match(const Rule& r, const Morphism& m, const Graph& host) {
    if (!is_morphism(r.left, m, host) || !is_injective(m))
        throw InvalidMatch("match is not an injective morphism from the left-hand side");
}

} // namespace

bool check_dangling(const Rule& r, const Morphism& m, const Graph& host) {
    require_valid_match(r, m, host);
    std::unordered_set<Id> deleted_nodes;
    for (const Node& n : r.left.nodes())
        if (!r.interface.has_node(n.id)) deleted_nodes.insert(m.node_map.at(n.id));
    if (deleted_nodes.empty()) return true;
    std::unordered_set<Id> image_edges;
    for (const auto& [k, v] : m.edge_map) image_edges.insert(v);
    for (const Edge& e : host.edges()) {
        if (image_edges.count(e.id)) continue;
        if (deleted_nodes.count(e.src) || deleted_nodes.count(e.tgt)) return false;
    }
    return true;
}

DerivationStep apply(const Rule& r, const Morphism& m, const Graph& host) {
    require_valid_match(r, m, host);
    if (!check_dangling(r, m, host))
        throw DanglingViolation("dangling condition fails for rule " + r.name);

    DerivationStep step;
    step.rule = r;
    step.match = m;
    step.host = host;

    // intermediate graph: delete the image of L \ K, undefine where K does
    Graph d = host;
    for (const Edge& e : r.left.edges())
        if (!r.interface.has_edge(e.id)) d.remove_edge(m.edge_map.at(e.id));
    for (const Node& n : r.left.nodes())
        if (!r.interface.has_node(n.id)) d.remove_node(m.node_map.at(n.id));
    for (const Node& n : r.interface.nodes()) {
        Node& img = d.node(m.node_map.at(n.id));
        if (!n.label) img.label.reset();
        if (!n.rooted) img.rooted.reset();
    }
    step.intermediate = d;

    // result graph: add R \ K disjointly, re-define from R
    Graph h = d;
    Morphism comatch;
    Id next_node = host.max_node_id() + 1;
    Id next_edge = host.max_edge_id() + 1;
    for (const Node& n : r.interface.nodes())
        comatch.node_map[n.id] = m.node_map.at(n.id);
    for (const Edge& e : r.interface.edges())
        comatch.edge_map[e.id] = m.edge_map.at(e.id);
    for (const Node& n : r.right.nodes()) {
        if (r.interface.has_node(n.id)) continue;
        h.add_node(next_node, n.label, n.rooted);
        comatch.node_map[n.id] = next_node;
        ++next_node;
    }
    for (const Edge& e : r.right.edges()) {
        if (r.interface.has_edge(e.id)) continue;
        h.add_edge(next_edge, comatch.node_map.at(e.src), comatch.node_map.at(e.tgt),
                   e.label);
        comatch.edge_map[e.id] = next_edge;
        ++next_edge;
    }
    for (const Node& n : r.interface.nodes()) {
        Node& img = h.node(m.node_map.at(n.id));
        const Node& rn = r.right.node(n.id);
        if (!n.label) img.label = rn.label;
        if (!n.rooted) img.rooted = rn.rooted;
    }
    step.result = h;
    step.comatch = comatch;

    // surviving host nodes keep their ids
    for (const Node& n : step.intermediate.nodes()) step.track[n.id] = n.id;
    return step;
}

std::vector<Morphism> applicable_matches(const Rule& r, const Graph& host) {
    std::vector<Morphism> out;
    for (const Morphism& m : find_morphisms(r.left, host, true))
        if (check_dangling(r, m, host)) out.push_back(m);
    return out;
}

std::vector<DerivationStep> successors(const std::vector<Rule>& rules, const Graph& g) {
    std::vector<DerivationStep> out;
    for (const Rule& r : rules)
        for (const Morphism& m : applicable_matches(r, g)) out.push_back(apply(r, m, g));
    return out;
}

} // namespace gtx
