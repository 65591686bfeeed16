#include "gtx/encoding.hpp"

#include <algorithm>

#include "gtx/morphism.hpp"

namespace gtx {

namespace {

void check_convention(const LabelAlphabet& a) {
    for (const Symbol& s : a.node_labels)
        if (a.edge_labels.count(s))
            throw AlphabetClash("node and edge label sets share symbol '" + s + "'");
    for (const Symbol& s : {kEncodedNodeLabel, kRootLoop0, kRootLoop1})
        if (a.node_labels.count(s) || a.edge_labels.count(s))
            throw AlphabetClash("alphabet uses reserved symbol '" + s + "'");
}

} // namespace

LabelAlphabet encode_alphabet(const LabelAlphabet& a) {
    check_convention(a);
    LabelAlphabet out;
    out.node_labels = {kEncodedNodeLabel};
    out.edge_labels = a.edge_labels;
    for (const Symbol& s : a.node_labels) out.edge_labels.insert(s);
    out.edge_labels.insert(kRootLoop0);
    out.edge_labels.insert(kRootLoop1);
    return out;
}

Graph encode_graph(const Graph& g) {
    Graph out(encode_alphabet(g.alphabet()));
    for (const Node& n : g.nodes()) out.add_node(n.id, kEncodedNodeLabel, false);
    for (const Edge& e : g.edges()) out.add_edge(3 * e.id, e.src, e.tgt, e.label);
    for (const Node& n : g.nodes()) {
        if (n.label) out.add_edge(3 * n.id + 1, n.id, n.id, *n.label);
        if (n.rooted)
            out.add_edge(3 * n.id + 2, n.id, n.id, *n.rooted ? kRootLoop1 : kRootLoop0);
    }
    return out;
}

Morphism encode_morphism(const Graph& src, const Morphism& m, const Graph& tgt) {
    (void)tgt;
    Morphism out;
    out.node_map = m.node_map;
    for (const auto& [e, img] : m.edge_map) out.edge_map[3 * e] = 3 * img;
    for (const Node& n : src.nodes()) {
        Id img = m.node_map.at(n.id);
        if (n.label) out.edge_map[3 * n.id + 1] = 3 * img + 1;
        if (n.rooted) out.edge_map[3 * n.id + 2] = 3 * img + 2;
    }
    return out;
}

Rule encode_rule(const Rule& r) {
    return Rule{r.name, encode_graph(r.left), encode_graph(r.interface),
                encode_graph(r.right)};
}

Graph decode_graph(const Graph& g) {
    struct Decoded {
        std::optional<Symbol> label;
        std::optional<bool> rooted;
    };
    std::map<Id, Decoded> nodes;
    for (const Node& n : g.nodes()) {
        if (n.label != kEncodedNodeLabel)
            throw NotInImage("node " + std::to_string(n.id) + " is not '_'-labelled", n.id);
        nodes[n.id] = {};
    }
    LabelAlphabet orig;
    std::vector<Edge> plain;
    for (const Edge& e : g.edges()) {
        switch (e.id % 3) {
            case 0:
                plain.push_back(e);
                break;
            case 1: {
                Id v = (e.id - 1) / 3;
                if (e.src != v || e.tgt != v)
                    throw NotInImage("label loop " + std::to_string(e.id) +
                                     " does not sit on node " + std::to_string(v), e.src);
                Decoded& d = nodes.at(v);
                if (d.label)
                    throw NotInImage("node " + std::to_string(v) + " carries two label loops",
                                     v);
                d.label = e.label;
                orig.node_labels.insert(e.label);
                break;
            }
            default: {
                Id v = (e.id - 2) / 3;
                if (e.src != v || e.tgt != v)
                    throw NotInImage("rootedness loop " + std::to_string(e.id) +
                                     " does not sit on node " + std::to_string(v), e.src);
                if (e.label != kRootLoop0 && e.label != kRootLoop1)
                    throw NotInImage("rootedness loop on node " + std::to_string(v) +
                                     " carries symbol '" + e.label + "'", v);
                Decoded& d = nodes.at(v);
                if (d.rooted)
                    throw NotInImage("node " + std::to_string(v) +
                                     " carries two rootedness loops", v);
                d.rooted = e.label == kRootLoop1;
                break;
            }
        }
    }
    // anything not 0/1 and not a recovered node symbol is an edge symbol
    for (const Symbol& s : g.alphabet().edge_labels) {
        if (s == kRootLoop0 || s == kRootLoop1) continue;
        if (!orig.node_labels.count(s)) orig.edge_labels.insert(s);
    }
    for (const Edge& e : plain)
        if (orig.node_labels.count(e.label))
            throw NotInImage("edge " + std::to_string(e.id) + " carries node symbol '" +
                             e.label + "'", e.src);
    Graph out(orig);
    for (const auto& [id, d] : nodes) out.add_node(id, d.label, d.rooted);
    for (const Edge& e : plain) out.add_edge(e.id / 3, e.src, e.tgt, e.label);
    return out;
}

namespace {

std::optional<Graph> try_decode_shape(const Graph& g, const LabelAlphabet& original,
                                      bool* shape_only) {
    struct Decoded {
        std::optional<Symbol> label;
        std::optional<bool> rooted;
    };
    std::map<Id, Decoded> nodes;
    for (const Node& n : g.nodes()) {
        if (n.label != kEncodedNodeLabel) return std::nullopt;
        nodes[n.id] = {};
    }
    std::vector<Edge> plain;
    for (const Edge& e : g.edges()) {
        bool root_symbol = e.label == kRootLoop0 || e.label == kRootLoop1;
        bool node_symbol = original.node_labels.count(e.label) != 0;
        if (root_symbol || node_symbol) {
            if (e.src != e.tgt) return std::nullopt;
            Decoded& d = nodes.at(e.src);
            if (node_symbol) {
                if (d.label) return std::nullopt;
                d.label = e.label;
            } else {
                if (d.rooted) return std::nullopt;
                d.rooted = e.label == kRootLoop1;
            }
        } else if (original.edge_labels.count(e.label)) {
            plain.push_back(e);
        } else {
            return std::nullopt;
        }
    }
    if (shape_only) return Graph{};  // caller only wanted the test
    Graph out(original);
    for (const auto& [id, d] : nodes) out.add_node(id, d.label, d.rooted);
    Id next = 0;
    for (const Edge& e : plain) out.add_edge(next++, e.src, e.tgt, e.label);
    return out;
}

} // namespace

Graph decode_graph(const Graph& g, const LabelAlphabet& original) {
    auto out = try_decode_shape(g, original, nullptr);
    if (!out)
        throw NotInImage("graph is not in the image of the encoding", -1);
    return *out;
}

bool decodable(const Graph& g, const LabelAlphabet& original) {
    bool flag = true;
    return try_decode_shape(g, original, &flag).has_value();
}

bool verify_compatibility(const Rule& r, const Graph& g) {
    std::vector<DerivationStep> plain = successors({r}, g);
    Rule er = encode_rule(r);
    std::vector<DerivationStep> enc = successors({er}, encode_graph(g));
    if (plain.size() != enc.size()) return false;
    std::vector<bool> used(enc.size(), false);
    for (const auto& s : plain) {
        Graph eresult = encode_graph(s.result);
        bool matched = false;
        for (std::size_t j = 0; j < enc.size(); ++j) {
            if (used[j]) continue;
            if (is_isomorphic(eresult, enc[j].result)) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace gtx
