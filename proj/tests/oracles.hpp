// Test-only oracles, kept independent of the library's search code: morphism
// counting by exhaustive enumeration of all map pairs, isomorphism by
// permutation search, and small random generators for property tests.
#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "gtx/graph.hpp"
#include "gtx/morphism.hpp"
#include "gtx/rule.hpp"

namespace oracle {

using namespace gtx;

// every total node map x edge map, checked against the morphism conditions
inline std::vector<Morphism> all_morphisms(const Graph& g, const Graph& h,
                                           bool injective_only) {
    std::vector<Morphism> found;
    std::vector<Id> gn = g.node_ids(), ge = g.edge_ids();
    std::vector<Id> hn = h.node_ids(), he = h.edge_ids();
    if (!gn.empty() && hn.empty()) return found;
    if (!ge.empty() && he.empty()) return found;

    std::vector<std::size_t> nassign(gn.size(), 0), eassign(ge.size(), 0);
    auto advance = [](std::vector<std::size_t>& v, std::size_t base) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (++v[i] < base) return true;
            v[i] = 0;
        }
        return false;
    };
    do {
        std::vector<std::size_t> ea(ge.size(), 0);
        do {
            Morphism m;
            for (std::size_t i = 0; i < gn.size(); ++i) m.node_map[gn[i]] = hn[nassign[i]];
            for (std::size_t i = 0; i < ge.size(); ++i) m.edge_map[ge[i]] = he[ea[i]];
            if (is_morphism(g, m, h) && (!injective_only || is_injective(m)))
                found.push_back(std::move(m));
        } while (!ge.empty() && advance(ea, he.size()));
    } while (!gn.empty() && advance(nassign, hn.size()));
    std::sort(found.begin(), found.end());
    return found;
}

// isomorphism by trying every node/edge bijection
inline bool isomorphic(const Graph& g, const Graph& h) {
    if (g.node_count() != h.node_count() || g.edge_count() != h.edge_count()) return false;
    std::vector<Id> gn = g.node_ids(), hn = h.node_ids();
    std::vector<Id> ge = g.edge_ids(), he = h.edge_ids();
    std::sort(hn.begin(), hn.end());
    do {
        Morphism m;
        for (std::size_t i = 0; i < gn.size(); ++i) m.node_map[gn[i]] = hn[i];
        bool nodes_ok = true;
        for (const Node& n : g.nodes()) {
            const Node& img = h.node(m.node_map[n.id]);
            if (n.label != img.label || n.rooted != img.rooted) {
                nodes_ok = false;
                break;
            }
        }
        if (!nodes_ok) continue;
        std::vector<Id> hp = he;
        std::sort(hp.begin(), hp.end());
        do {
            Morphism full = m;
            for (std::size_t i = 0; i < ge.size(); ++i) full.edge_map[ge[i]] = hp[i];
            bool ok = true;
            for (const Edge& e : g.edges()) {
                const Edge& img = h.edge(full.edge_map[e.id]);
                if (img.label != e.label || img.src != full.node_map[e.src] ||
                    img.tgt != full.node_map[e.tgt]) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        } while (std::next_permutation(hp.begin(), hp.end()));
    } while (std::next_permutation(hn.begin(), hn.end()));
    return false;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    int below(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
    bool chance(double p) {
        return std::uniform_real_distribution<double>(0, 1)(gen) < p;
    }
};

// random totally labelled, totally rooted graph over a small alphabet
inline Graph random_tlrg(Rng& rng, const LabelAlphabet& a, int max_nodes, int max_edges,
                         bool allow_roots = true) {
    Graph g(a);
    std::vector<Symbol> nl(a.node_labels.begin(), a.node_labels.end());
    std::vector<Symbol> el(a.edge_labels.begin(), a.edge_labels.end());
    int n = 1 + rng.below(max_nodes);
    for (int i = 0; i < n; ++i)
        g.add_node(i, nl[static_cast<std::size_t>(rng.below(static_cast<int>(nl.size())))],
                   allow_roots && rng.chance(0.25));
    int e = rng.below(max_edges + 1);
    for (int i = 0; i < e; ++i)
        g.add_edge(i, rng.below(n), rng.below(n),
                   el[static_cast<std::size_t>(rng.below(static_cast<int>(el.size())))]);
    return g;
}

// random rule: L random, K a partial chunk of it, R extends K
inline Rule random_rule(Rng& rng, const LabelAlphabet& a) {
    Graph left = random_tlrg(rng, a, 3, 3);
    Graph interface(a);
    for (const Node& n : left.nodes()) {
        if (!rng.chance(0.7)) continue;
        std::optional<Symbol> label = rng.chance(0.5) ? n.label : std::nullopt;
        std::optional<bool> rooted = rng.chance(0.5) ? n.rooted : std::nullopt;
        interface.add_node(n.id, label, rooted);
    }
    for (const Edge& e : left.edges())
        if (interface.has_node(e.src) && interface.has_node(e.tgt) && rng.chance(0.4))
            interface.add_edge(e.id, e.src, e.tgt, e.label);
    Graph right = interface;
    std::vector<Symbol> nl(a.node_labels.begin(), a.node_labels.end());
    std::vector<Symbol> el(a.edge_labels.begin(), a.edge_labels.end());
    for (const Node& n : interface.nodes()) {
        Node& rn = right.node(n.id);
        if (!rn.label)
            rn.label = nl[static_cast<std::size_t>(rng.below(static_cast<int>(nl.size())))];
        if (!rn.rooted) rn.rooted = rng.chance(0.25);
    }
    Id next_node = left.max_node_id() + 1;
    int extra = rng.below(3);
    for (int i = 0; i < extra; ++i)
        right.add_node(next_node + i,
                       nl[static_cast<std::size_t>(rng.below(static_cast<int>(nl.size())))],
                       rng.chance(0.25));
    std::vector<Id> rnodes = right.node_ids();
    Id next_edge = left.max_edge_id() + 1;
    int extra_e = rnodes.empty() ? 0 : rng.below(3);
    for (int i = 0; i < extra_e; ++i)
        right.add_edge(next_edge + i,
                       rnodes[static_cast<std::size_t>(rng.below(static_cast<int>(rnodes.size())))],
                       rnodes[static_cast<std::size_t>(rng.below(static_cast<int>(rnodes.size())))],
                       el[static_cast<std::size_t>(rng.below(static_cast<int>(el.size())))]);
    return Rule{"rnd", std::move(left), std::move(interface), std::move(right)};
}

// host with a guaranteed dangling-safe embedding of the rule's left side:
// the left side itself plus padding attached only to interface images
inline std::pair<Graph, Morphism> embed_left(Rng& rng, const Rule& r) {
    Graph host = r.left;
    Morphism match = identity_morphism(r.left);
    std::vector<Symbol> nl(host.alphabet().node_labels.begin(),
                           host.alphabet().node_labels.end());
    std::vector<Symbol> el(host.alphabet().edge_labels.begin(),
                           host.alphabet().edge_labels.end());
    Id next_node = host.max_node_id() + 1;
    Id next_edge = host.max_edge_id() + 1;
    int pad = rng.below(3);
    std::vector<Id> anchors;  // interface images plus fresh nodes
    for (const Node& n : r.interface.nodes()) anchors.push_back(n.id);
    for (int i = 0; i < pad; ++i) {
        host.add_node(next_node,
                      nl[static_cast<std::size_t>(rng.below(static_cast<int>(nl.size())))],
                      rng.chance(0.25));
        anchors.push_back(next_node);
        ++next_node;
    }
    if (anchors.size() >= 2) {
        int extra = rng.below(3);
        for (int i = 0; i < extra; ++i) {
            Id u = anchors[static_cast<std::size_t>(rng.below(static_cast<int>(anchors.size())))];
            Id v = anchors[static_cast<std::size_t>(rng.below(static_cast<int>(anchors.size())))];
            host.add_edge(next_edge++, u, v,
                          el[static_cast<std::size_t>(rng.below(static_cast<int>(el.size())))]);
        }
    }
    return {std::move(host), std::move(match)};
}

} // namespace oracle
