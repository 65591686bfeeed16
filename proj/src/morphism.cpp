#include "gtx/morphism.hpp"

#include <algorithm>
#include <unordered_set>

namespace gtx {

Morphism identity_morphism(const Graph& g) {
    Morphism m;
    for (const Node& n : g.nodes()) m.node_map[n.id] = n.id;
    for (const Edge& e : g.edges()) m.edge_map[e.id] = e.id;
    return m;
}

Morphism compose(const Morphism& g, const Morphism& h) {
    Morphism out;
    for (const auto& [k, v] : g.node_map) {
        auto it = h.node_map.find(v);
        if (it != h.node_map.end()) out.node_map[k] = it->second;
    }
    for (const auto& [k, v] : g.edge_map) {
        auto it = h.edge_map.find(v);
        if (it != h.edge_map.end()) out.edge_map[k] = it->second;
    }
    return out;
}

bool is_morphism(const Graph& src, const Morphism& m, const Graph& tgt) {
    if (m.node_map.size() != src.node_count() || m.edge_map.size() != src.edge_count())
        return false;
    for (const Node& n : src.nodes()) {
        auto it = m.node_map.find(n.id);
        if (it == m.node_map.end() || !tgt.has_node(it->second)) return false;
        const Node& img = tgt.node(it->second);
        if (n.label && img.label != n.label) return false;
        if (n.rooted && img.rooted != n.rooted) return false;
    }
    for (const Edge& e : src.edges()) {
        auto it = m.edge_map.find(e.id);
        if (it == m.edge_map.end() || !tgt.has_edge(it->second)) return false;
        const Edge& img = tgt.edge(it->second);
        if (img.label != e.label) return false;
        if (img.src != m.node_map.at(e.src) || img.tgt != m.node_map.at(e.tgt))
            return false;
    }
    return true;
}

bool is_injective(const Morphism& m) {
    std::unordered_set<Id> seen;
    for (const auto& [k, v] : m.node_map)
        if (!seen.insert(v).second) return false;
    seen.clear();
    for (const auto& [k, v] : m.edge_map)
        if (!seen.insert(v).second) return false;
    return true;
}

bool is_surjective(const Morphism& m, const Graph& tgt) {
    std::unordered_set<Id> nodes, edges;
    for (const auto& [k, v] : m.node_map) nodes.insert(v);
    for (const auto& [k, v] : m.edge_map) edges.insert(v);
    return nodes.size() == tgt.node_count() && edges.size() == tgt.edge_count();
}

bool undefinedness_preserving(const Graph& src, const Morphism& m, const Graph& tgt) {
    for (const Node& n : src.nodes()) {
        const Node& img = tgt.node(m.node_map.at(n.id));
        if (n.label.has_value() != img.label.has_value()) return false;
        if (n.rooted.has_value() != img.rooted.has_value()) return false;
    }
    return true;
}

namespace {

struct Searcher {
    const Graph& src;
    const Graph& tgt;
    bool injective;
    bool bijective = false;              // node/edge maps must be bijections
    bool undef_preserving = false;       // undefinedness must match exactly
    std::function<bool(const Morphism&)> emit;  // return true to stop

    std::vector<Id> src_nodes;           // assignment order
    std::map<Id, Id> node_map;
    std::unordered_set<Id> used_nodes;

    // incidence of src, precomputed
    std::unordered_map<Id, std::vector<const Edge*>> src_out, src_in;
    std::unordered_map<Id, std::vector<const Edge*>> tgt_out, tgt_in;

    explicit Searcher(const Graph& s, const Graph& t) : src(s), tgt(t) {
        for (const Edge& e : src.edges()) {
            src_out[e.src].push_back(&e);
            src_in[e.tgt].push_back(&e);
        }
        for (const Edge& e : tgt.edges()) {
            tgt_out[e.src].push_back(&e);
            tgt_in[e.tgt].push_back(&e);
        }
        // connectivity-first order keeps the search pruned; results are
        // sorted afterwards so the order here does not show
        std::unordered_set<Id> placed;
        std::vector<Id> order;
        for (const Node& n : src.nodes()) {
            if (placed.count(n.id)) continue;
            std::vector<Id> queue{n.id};
            placed.insert(n.id);
            while (!queue.empty()) {
                Id v = queue.front();
                queue.erase(queue.begin());
                order.push_back(v);
                auto push_nbrs = [&](const std::vector<const Edge*>& es, bool out) {
                    for (const Edge* e : es) {
                        Id w = out ? e->tgt : e->src;
                        if (!placed.count(w)) {
                            placed.insert(w);
                            queue.push_back(w);
                        }
                    }
                };
                push_nbrs(src_out[v], true);
                push_nbrs(src_in[v], false);
            }
        }
        src_nodes = std::move(order);
    }

    bool node_compatible(const Node& a, const Node& b) const {
        if (undef_preserving) {
            if (a.label != b.label || a.rooted != b.rooted) return false;
        } else {
            if (a.label && b.label != a.label) return false;
            if (a.rooted && b.rooted != a.rooted) return false;
        }
        if (injective) {
            // every src edge at a needs its own tgt edge at b
            auto cnt = [](const std::unordered_map<Id, std::vector<const Edge*>>& m, Id v) {
                auto it = m.find(v);
                return it == m.end() ? std::size_t{0} : it->second.size();
            };
            if (cnt(src_out, a.id) > cnt(tgt_out, b.id)) return false;
            if (cnt(src_in, a.id) > cnt(tgt_in, b.id)) return false;
        }
        return true;
    }

    bool run() {
        if (bijective && (src.node_count() != tgt.node_count() ||
                          src.edge_count() != tgt.edge_count()))
            return false;
        return assign_node(0);
    }

    bool assign_node(std::size_t k) {
        if (k == src_nodes.size()) return assign_edges();
        Id v = src_nodes[k];
        const Node& nv = src.node(v);
        for (const Node& w : tgt.nodes()) {
            if (injective && used_nodes.count(w.id)) continue;
            if (!node_compatible(nv, w)) continue;
            // partial edge check against already-assigned neighbours
            if (!edges_feasible(v, w.id)) continue;
            node_map[v] = w.id;
            used_nodes.insert(w.id);
            if (assign_node(k + 1)) return true;
            node_map.erase(v);
            used_nodes.erase(w.id);
        }
        return false;
    }

    // every src edge between assigned nodes must have at least one candidate
    bool edges_feasible(Id v, Id w) {
        auto candidate_exists = [&](const Edge* e, Id s, Id t) {
            auto it = tgt_out.find(s);
            if (it == tgt_out.end()) return false;
            for (const Edge* c : it->second)
                if (c->tgt == t && c->label == e->label) return true;
            return false;
        };
        for (const Edge* e : src_out[v]) {
            Id other = e->tgt;
            Id img = other == v ? w : (node_map.count(other) ? node_map[other] : -1);
            if (img < 0 && other != v) continue;
            if (!candidate_exists(e, w, img)) return false;
        }
        for (const Edge* e : src_in[v]) {
            Id other = e->src;
            if (other == v) continue;  // loop handled above
            if (!node_map.count(other)) continue;
            if (!candidate_exists(e, node_map[other], w)) return false;
        }
        return true;
    }

    bool assign_edges() {
        std::vector<const Edge*> es;
        es.reserve(src.edge_count());
        for (const Edge& e : src.edges()) es.push_back(&e);
        std::map<Id, Id> edge_map;
        std::unordered_set<Id> used_edges;
        std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
            if (k == es.size()) {
                Morphism m{node_map, edge_map};
                return emit(m);
            }
            const Edge* e = es[k];
            Id s = node_map[e->src], t = node_map[e->tgt];
            auto it = tgt_out.find(s);
            if (it == tgt_out.end()) return false;
            for (const Edge* c : it->second) {
                if (c->tgt != t || c->label != e->label) continue;
                if (injective && used_edges.count(c->id)) continue;
                edge_map[e->id] = c->id;
                used_edges.insert(c->id);
                if (go(k + 1)) return true;
                edge_map.erase(e->id);
                used_edges.erase(c->id);
            }
            return false;
        };
        return go(0);
    }
};

} // namespace

std::vector<Morphism> find_morphisms(const Graph& src, const Graph& tgt,
                                     bool injective_only) {
    if (src.alphabet() != tgt.alphabet())
        throw AlphabetMismatch("find_morphisms: graphs are over different alphabets");
    std::vector<Morphism> out;
    Searcher s(src, tgt);
    s.injective = injective_only;
    s.emit = [&](const Morphism& m) {
        out.push_back(m);
        return false;
    };
    s.run();
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool iso_precheck(const Graph& g, const Graph& h) {
    if (g.node_count() != h.node_count() || g.edge_count() != h.edge_count())
        return false;
    auto node_sig = [](const Graph& x) {
        std::vector<std::tuple<std::string, int, int, int>> sig;
        std::unordered_map<Id, int> ind, outd;
        for (const Edge& e : x.edges()) {
            ++outd[e.src];
            ++ind[e.tgt];
        }
        for (const Node& n : x.nodes()) {
            std::string l = n.label ? *n.label : "\x01";
            int r = n.rooted ? (*n.rooted ? 1 : 0) : -1;
            sig.emplace_back(l, r, ind[n.id], outd[n.id]);
        }
        std::sort(sig.begin(), sig.end());
        return sig;
    };
    if (node_sig(g) != node_sig(h)) return false;
    auto edge_sig = [](const Graph& x) {
        std::vector<std::string> sig;
        for (const Edge& e : x.edges()) sig.push_back(e.label + (e.src == e.tgt ? "@" : ""));
        std::sort(sig.begin(), sig.end());
        return sig;
    };
    return edge_sig(g) == edge_sig(h);
}

} // namespace

bool for_each_isomorphism(const Graph& g, const Graph& h,
                          const std::function<bool(const Morphism&)>& visit) {
    if (g.alphabet() != h.alphabet()) return false;
    if (!iso_precheck(g, h)) return false;
    Searcher s(g, h);
    s.injective = true;
    s.bijective = true;
    s.undef_preserving = true;
    s.emit = visit;
    return s.run();
}

std::optional<Morphism> is_isomorphic(const Graph& g, const Graph& h) {
    std::optional<Morphism> witness;
    for_each_isomorphism(g, h, [&](const Morphism& m) {
        witness = m;
        return true;
    });
    return witness;
}

std::uint64_t iso_hash(const Graph& g) {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    };
    auto str_hash = [](const std::string& s) {
        return std::hash<std::string>{}(s);
    };
    // Weisfeiler-Leman style colour refinement, a few rounds
    std::unordered_map<Id, std::uint64_t> colour;
    for (const Node& n : g.nodes()) {
        std::uint64_t c = 0xabcdef;
        c = mix(c, n.label ? str_hash(*n.label) : 7);
        c = mix(c, n.rooted ? (*n.rooted ? 2 : 1) : 0);
        colour[n.id] = c;
    }
    for (int round = 0; round < 3; ++round) {
        std::unordered_map<Id, std::uint64_t> next = colour;
        for (const Edge& e : g.edges()) {
            std::uint64_t el = str_hash(e.label);
            next[e.src] += mix(el, colour[e.tgt] * 3);
            next[e.tgt] += mix(el * 5, colour[e.src] * 7);
        }
        colour = std::move(next);
    }
    std::vector<std::uint64_t> cs;
    cs.reserve(colour.size());
    for (const auto& [id, c] : colour) cs.push_back(c);
    std::sort(cs.begin(), cs.end());
    std::uint64_t h = mix(g.node_count(), g.edge_count() * 31);
    for (std::uint64_t c : cs) h = mix(h, c);
    return h;
}

} // namespace gtx
