#include "gtx/engine.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>

#include "gtx/morphism.hpp"

namespace gtx {

bool is_fast(const Rule& r) {
    for (const auto& comp : connected_components(r.left)) {
        bool has_root = false;
        for (Id v : comp)
            if (r.left.node(v).rooted == true) {
                has_root = true;
                break;
            }
        if (!has_root) return false;
    }
    return true;
}

bool is_fast_system(const std::vector<Rule>& rules) {
    return std::all_of(rules.begin(), rules.end(), [](const Rule& r) { return is_fast(r); });
}

BoundsReport preserves_bounds(const Rule& r, const EngineConfig& cfg) {
    BoundsReport rep;
    long long bound = cfg.degree_bound ? *cfg.degree_bound
                                       : std::numeric_limits<long long>::max();
    rep.degree_ok = true;
    for (const Node& n : r.right.nodes()) {
        int dr = r.right.degree(n.id);
        if (r.interface.has_node(n.id)) {
            if (dr > r.left.degree(n.id)) rep.degree_ok = false;
        } else {
            if (dr > bound) rep.degree_ok = false;
        }
    }
    auto roots = [](const Graph& g) {
        int c = 0;
        for (const Node& n : g.nodes())
            if (n.rooted == true) ++c;
        return c;
    };
    rep.roots_ok = roots(r.right) <= roots(r.left);
    return rep;
}

// ---------------------------------------------------------------------------
// HostGraph

HostGraph::HostGraph(const Graph& g) : alphabet_(g.alphabet()) {
    nodes_.reserve(g.node_count());
    edges_.reserve(g.edge_count());
    for (const Node& n : g.nodes()) {
        std::uint16_t l = intern(n.label ? *n.label : "");
        std::int8_t r = n.rooted ? (*n.rooted ? 1 : 0) : -1;
        add_node_slot(n.id, l, r);
    }
    for (const Edge& e : g.edges())
        add_edge_slot(e.id, node_slot_.at(e.src), node_slot_.at(e.tgt), intern(e.label));
    next_node_id_ = g.max_node_id() + 1;
    next_edge_id_ = g.max_edge_id() + 1;
}

std::uint16_t HostGraph::intern(const Symbol& s) {
    auto it = symbol_idx_.find(s);
    if (it != symbol_idx_.end()) return it->second;
    auto idx = static_cast<std::uint16_t>(symbols_.size());
    symbols_.push_back(s);
    symbol_idx_.emplace(s, idx);
    return idx;
}

std::int32_t HostGraph::add_node_slot(Id id, std::uint16_t label, std::int8_t rooted) {
    auto slot = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(NodeRec{id, label, rooted, true, {}, {}});
    node_slot_[id] = slot;
    if (rooted == 1) roots_.insert(slot);
    ++live_nodes_;
    return slot;
}

std::int32_t HostGraph::add_edge_slot(Id id, std::int32_t src, std::int32_t tgt,
                                      std::uint16_t label) {
    auto slot = static_cast<std::int32_t>(edges_.size());
    edges_.push_back(EdgeRec{id, src, tgt, label, true});
    edge_slot_[id] = slot;
    nodes_[static_cast<std::size_t>(src)].out_edges.push_back(slot);
    nodes_[static_cast<std::size_t>(tgt)].in_edges.push_back(slot);
    ++live_edges_;
    return slot;
}

void HostGraph::remove_edge_slot(std::int32_t e) {
    EdgeRec& rec = edges_[static_cast<std::size_t>(e)];
    rec.alive = false;
    // ordered erase keeps incidence lists ascending by edge id
    auto drop = [e](std::vector<std::int32_t>& v) {
        auto it = std::find(v.begin(), v.end(), e);
        if (it != v.end()) v.erase(it);
    };
    drop(nodes_[static_cast<std::size_t>(rec.src)].out_edges);
    drop(nodes_[static_cast<std::size_t>(rec.tgt)].in_edges);
    edge_slot_.erase(rec.id);
    --live_edges_;
}

void HostGraph::remove_node_slot(std::int32_t v) {
    NodeRec& rec = nodes_[static_cast<std::size_t>(v)];
    rec.alive = false;
    if (rec.rooted == 1) roots_.erase(v);
    node_slot_.erase(rec.id);
    --live_nodes_;
}

Graph HostGraph::to_graph() const {
    Graph g(alphabet_);
    for (const NodeRec& n : nodes_) {
        if (!n.alive) continue;
        std::optional<Symbol> label;
        if (!symbols_[n.label].empty()) label = symbols_[n.label];
        std::optional<bool> rooted;
        if (n.rooted >= 0) rooted = n.rooted == 1;
        g.add_node(n.id, label, rooted);
    }
    for (const EdgeRec& e : edges_) {
        if (!e.alive) continue;
        g.add_edge(e.id, nodes_[static_cast<std::size_t>(e.src)].id,
                   nodes_[static_cast<std::size_t>(e.tgt)].id, symbols_[e.label]);
    }
    return g;
}

// ---------------------------------------------------------------------------
// engine internals with access to the host representation

struct EngineDetail {
    using NodeRec = HostGraph::NodeRec;
    using EdgeRec = HostGraph::EdgeRec;

    // Per component of a fast left-hand side: the anchor root and an edge
    // order that grows the component outward from it.
    struct Component {
        Id anchor = -1;
        std::vector<Id> edge_order;
    };

    static std::vector<Component> left_components(const Rule& r) {
        std::vector<Component> out;
        for (const auto& comp_nodes : connected_components(r.left)) {
            Component c;
            for (Id v : comp_nodes)
                if (r.left.node(v).rooted == true) {
                    c.anchor = v;
                    break;
                }
            std::unordered_set<Id> reached{c.anchor};
            std::unordered_set<Id> used;
            for (;;) {
                const Edge* next = nullptr;
                for (const Edge& e : r.left.edges()) {
                    if (used.count(e.id)) continue;
                    bool in_comp = std::find(comp_nodes.begin(), comp_nodes.end(), e.src) !=
                                   comp_nodes.end();
                    if (!in_comp) continue;
                    if (reached.count(e.src) || reached.count(e.tgt)) {
                        next = &e;
                        break;  // edges are id-sorted, first hit is smallest
                    }
                }
                if (!next) break;
                used.insert(next->id);
                c.edge_order.push_back(next->id);
                reached.insert(next->src);
                reached.insert(next->tgt);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    struct Search {
        const Rule& rule;
        HostGraph& host;
        const std::vector<Component>& comps;
        std::vector<Morphism>& out;
        std::size_t limit = 0;  // 0 = all

        // the left-hand side is tiny, so every lookup table is a flat
        // vector with linear search
        struct NodeReq {
            Id lnode = -1;
            std::int32_t label = -1;  // -1 free, -2 symbol absent from host
            std::int8_t rooted = -1;
            std::int32_t slot = -1;   // current assignment, -1 = none
        };
        std::vector<NodeReq> nodes;
        std::vector<std::pair<Id, std::int32_t>> edge_req;
        std::vector<std::pair<Id, std::int32_t>> edge_assign_v;

        void intern_requirements() {
            for (const Node& n : rule.left.nodes()) {
                NodeReq req;
                req.lnode = n.id;
                if (n.label) {
                    auto it = host.symbol_idx_.find(*n.label);
                    req.label = it == host.symbol_idx_.end() ? -2 : it->second;
                }
                if (n.rooted) req.rooted = *n.rooted ? 1 : 0;
                nodes.push_back(req);
            }
            for (const Edge& e : rule.left.edges()) {
                auto it = host.symbol_idx_.find(e.label);
                edge_req.emplace_back(e.id,
                                      it == host.symbol_idx_.end() ? -1 : it->second);
            }
        }

        NodeReq& req_of(Id lnode) {
            for (NodeReq& r : nodes)
                if (r.lnode == lnode) return r;
            throw Error("unknown left node");
        }

        bool node_used(std::int32_t slot) const {
            for (const NodeReq& r : nodes)
                if (r.slot == slot) return true;
            return false;
        }

        bool edge_used(std::int32_t eslot) const {
            for (const auto& [id, s] : edge_assign_v)
                if (s == eslot) return true;
            return false;
        }

        bool node_ok(const NodeReq& req, std::int32_t slot) {
            ++host.visited_;
            const NodeRec& h = host.nodes_[static_cast<std::size_t>(slot)];
            if (!h.alive || node_used(slot)) return false;
            if (req.label >= 0 && h.label != req.label) return false;
            if (req.label == -2) return false;
            if (req.rooted >= 0 && h.rooted != req.rooted) return false;
            return true;
        }

        bool full() const { return limit && out.size() >= limit; }

        void component(std::size_t ci) {
            if (ci == comps.size()) {
                finish();
                return;
            }
            NodeReq& anchor = req_of(comps[ci].anchor);
            std::vector<std::int32_t> anchors(host.roots_.begin(), host.roots_.end());
            for (std::int32_t slot : anchors) {
                if (full()) return;
                if (!node_ok(anchor, slot)) continue;
                anchor.slot = slot;
                edge(ci, 0);
                anchor.slot = -1;
            }
        }

        void edge(std::size_t ci, std::size_t k) {
            if (k == comps[ci].edge_order.size()) {
                component(ci + 1);
                return;
            }
            const Edge& le = rule.left.edge(comps[ci].edge_order[k]);
            std::int32_t want = -1;
            for (const auto& [id, w] : edge_req)
                if (id == le.id) want = w;
            if (want < 0) return;
            NodeReq& src_req = req_of(le.src);
            NodeReq& tgt_req = req_of(le.tgt);
            bool have_src = src_req.slot >= 0;
            // incidence lists stay ascending by edge id, so this iterates
            // extension candidates in the documented order
            const std::vector<std::int32_t>& cands =
                have_src ? host.nodes_[static_cast<std::size_t>(src_req.slot)].out_edges
                         : host.nodes_[static_cast<std::size_t>(tgt_req.slot)].in_edges;
            for (std::int32_t eslot : cands) {
                if (full()) return;
                ++host.visited_;
                const EdgeRec& he = host.edges_[static_cast<std::size_t>(eslot)];
                if (he.label != want) continue;
                if (src_req.slot >= 0 && he.src != src_req.slot) continue;
                if (tgt_req.slot >= 0 && he.tgt != tgt_req.slot) continue;
                if (edge_used(eslot)) continue;
                bool bound_src = false, bound_tgt = false;
                if (src_req.slot < 0) {
                    if (!node_ok(src_req, he.src)) continue;
                    src_req.slot = he.src;
                    bound_src = true;
                }
                bool tgt_fits = true;
                if (le.src == le.tgt) {
                    tgt_fits = he.tgt == src_req.slot;
                } else if (tgt_req.slot >= 0) {
                    tgt_fits = he.tgt == tgt_req.slot;
                } else if (node_ok(tgt_req, he.tgt)) {
                    tgt_req.slot = he.tgt;
                    bound_tgt = true;
                } else {
                    tgt_fits = false;
                }
                if (tgt_fits) {
                    edge_assign_v.emplace_back(le.id, eslot);
                    edge(ci, k + 1);
                    edge_assign_v.pop_back();
                }
                if (bound_tgt) tgt_req.slot = -1;
                if (bound_src) src_req.slot = -1;
            }
        }

        bool dangling_ok() {
            for (const NodeReq& req : nodes) {
                if (rule.interface.has_node(req.lnode)) continue;
                ++host.visited_;
                const NodeRec& rec = host.nodes_[static_cast<std::size_t>(req.slot)];
                std::size_t host_deg = rec.in_edges.size() + rec.out_edges.size();
                std::size_t matched = 0;
                for (const Edge& e : rule.left.edges()) {
                    if (e.src == req.lnode) ++matched;
                    if (e.tgt == req.lnode) ++matched;
                }
                if (host_deg != matched) return false;
            }
            return true;
        }

        void finish() {
            if (!dangling_ok()) return;
            Morphism m;
            for (const NodeReq& req : nodes)
                m.node_map[req.lnode] = host.nodes_[static_cast<std::size_t>(req.slot)].id;
            for (auto& [l, slot] : edge_assign_v)
                m.edge_map[l] = host.edges_[static_cast<std::size_t>(slot)].id;
            out.push_back(m);
        }
    };

    static std::vector<Morphism> matches(const Rule& r, HostGraph& host,
                                          std::size_t limit = 0) {
        std::vector<Morphism> out;
        auto comps = left_components(r);
        Search s{r, host, comps, out, limit, {}, {}, {}};
        s.intern_requirements();
        s.component(0);
        return out;
    }

    static TraceStep apply_in_place(HostGraph& host, const Rule& r, int rule_index,
                                    const Morphism& m, bool record) {
        TraceStep ts;
        ts.rule_index = rule_index;
        if (record) ts.match = m;
        for (const Edge& e : r.left.edges()) {
            if (r.interface.has_edge(e.id)) continue;
            Id he = m.edge_map.at(e.id);
            host.remove_edge_slot(host.edge_slot_.at(he));
            if (record) ts.deleted_edges.push_back(he);
        }
        for (const Node& n : r.left.nodes()) {
            if (r.interface.has_node(n.id)) continue;
            Id hv = m.node_map.at(n.id);
            host.remove_node_slot(host.node_slot_.at(hv));
            if (record) ts.deleted_nodes.push_back(hv);
        }
        for (const Node& n : r.interface.nodes()) {
            std::int32_t slot = host.node_slot_.at(m.node_map.at(n.id));
            const Node& rn = r.right.node(n.id);
            auto& rec = host.nodes_[static_cast<std::size_t>(slot)];
            if (!n.label) rec.label = host.intern(rn.label ? *rn.label : "");
            if (!n.rooted) {
                std::int8_t newr = rn.rooted ? (*rn.rooted ? 1 : 0) : -1;
                if (rec.rooted == 1 && newr != 1) host.roots_.erase(slot);
                if (rec.rooted != 1 && newr == 1) host.roots_.insert(slot);
                rec.rooted = newr;
            }
        }
        std::map<Id, std::int32_t> fresh;
        for (const Node& n : r.right.nodes()) {
            if (r.interface.has_node(n.id)) continue;
            Id id = host.next_node_id_++;
            fresh[n.id] = host.add_node_slot(id, host.intern(n.label ? *n.label : ""),
                                             n.rooted ? (*n.rooted ? 1 : 0) : -1);
            if (record) ts.created_nodes.push_back(id);
        }
        for (const Edge& e : r.right.edges()) {
            if (r.interface.has_edge(e.id)) continue;
            auto slot_of = [&](Id rnode) {
                auto it = fresh.find(rnode);
                if (it != fresh.end()) return it->second;
                return host.node_slot_.at(m.node_map.at(rnode));
            };
            Id id = host.next_edge_id_++;
            host.add_edge_slot(id, slot_of(e.src), slot_of(e.tgt), host.intern(e.label));
            if (record) ts.created_edges.push_back(id);
        }
        ts.node_count_after = host.node_count();
        ts.root_count_after = host.root_count();
        return ts;
    }
};

std::vector<Morphism> rooted_matches(const Rule& r, HostGraph& host) {
    if (!is_fast(r)) throw NotFastRule("rule " + r.name + " is not fast");
    return EngineDetail::matches(r, host);
}

std::vector<Morphism> rooted_matches(const Rule& r, const Graph& g) {
    HostGraph host(g);
    return rooted_matches(r, host);
}

// ---------------------------------------------------------------------------
// reduction

namespace {

std::optional<Morphism> first_general_match(const Rule& r, const Graph& g) {
    auto ms = applicable_matches(r, g);
    if (ms.empty()) return std::nullopt;
    return ms.front();
}

} // namespace

ReduceResult reduce(const std::vector<Rule>& rules, const Graph& g,
                    const EngineConfig& cfg, const StepObserver& observer) {
    ReduceResult res;
    res.fast_system = is_fast_system(rules);
    HostGraph host(g);
    for (;;) {
        bool budget_left = !cfg.max_steps || res.step_count < *cfg.max_steps;
        bool applied = false;
        for (std::size_t i = 0; i < rules.size() && !applied; ++i) {
            std::optional<Morphism> m;
            if (res.fast_system) {
                auto ms = EngineDetail::matches(rules[i], host, 1);
                if (!ms.empty()) m = ms.front();
            } else {
                m = first_general_match(rules[i], host.to_graph());
            }
            if (!m) continue;
            if (!budget_left) {
                res.normal_form = host.to_graph();
                res.budget_exhausted = true;
                res.visited_items = host.visited_items();
                throw StepBudgetExceeded(std::move(res));
            }
            TraceStep ts = EngineDetail::apply_in_place(host, rules[i], static_cast<int>(i),
                                                        *m, cfg.record_trace);
            ++res.step_count;
            if (observer) observer(host.to_graph(), ts);
            if (cfg.record_trace) res.steps.push_back(std::move(ts));
            applied = true;
        }
        if (!applied) break;
    }
    res.normal_form = host.to_graph();
    res.visited_items = host.visited_items();
    return res;
}

std::vector<ReduceResult> reduce_all(const std::vector<Rule>& rules, const Graph& g,
                                     const EngineConfig& cfg) {
    std::vector<ReduceResult> results;
    std::vector<std::pair<std::uint64_t, Graph>> seen_nf;
    std::vector<std::pair<std::uint64_t, Graph>> visited;
    std::uint64_t budget = cfg.max_steps ? *cfg.max_steps : 100000;

    struct Frame {
        Graph g;
        std::vector<TraceStep> trace;
        std::uint64_t depth = 0;
    };
    std::deque<Frame> queue;
    queue.push_back(Frame{g, {}, 0});
    while (!queue.empty()) {
        Frame f = std::move(queue.front());
        queue.pop_front();
        std::uint64_t h = iso_hash(f.g);
        bool dup = false;
        for (auto& [vh, vg] : visited)
            if (vh == h && is_isomorphic(vg, f.g)) {
                dup = true;
                break;
            }
        if (dup) continue;
        visited.emplace_back(h, f.g);

        bool any = false;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            for (const Morphism& m : applicable_matches(rules[i], f.g)) {
                any = true;
                if (f.depth >= budget) {
                    ReduceResult partial;
                    partial.normal_form = f.g;
                    partial.steps = f.trace;
                    partial.step_count = f.trace.size();
                    partial.budget_exhausted = true;
                    throw StepBudgetExceeded(std::move(partial));
                }
                DerivationStep s = apply(rules[i], m, f.g);
                TraceStep ts;
                ts.rule_index = static_cast<int>(i);
                ts.match = m;
                ts.node_count_after = s.result.node_count();
                ts.root_count_after = degree_stats(s.result).root_count;
                auto trace = f.trace;
                trace.push_back(std::move(ts));
                queue.push_back(Frame{std::move(s.result), std::move(trace), f.depth + 1});
            }
        }
        if (!any) {
            bool known = false;
            for (auto& [nh, ng] : seen_nf)
                if (nh == h && is_isomorphic(ng, f.g)) {
                    known = true;
                    break;
                }
            if (!known) {
                seen_nf.emplace_back(h, f.g);
                ReduceResult r;
                r.normal_form = f.g;
                r.steps = f.trace;
                r.step_count = f.trace.size();
                r.fast_system = is_fast_system(rules);
                results.push_back(std::move(r));
            }
        }
    }
    return results;
}

RecognitionResult recognize(const std::vector<Rule>& rules, const Graph& g,
                            const Graph& accept, const EngineConfig& cfg) {
    RecognitionResult out;
    out.strategy = cfg.strategy;
    if (cfg.strategy == Strategy::all_normal_forms) {
        auto all = reduce_all(rules, g, cfg);
        for (auto& r : all) {
            if (is_isomorphic(r.normal_form, accept)) {
                out.accepted = true;
                out.steps = r.step_count;
                out.normal_form = r.normal_form;
                return out;
            }
        }
        if (!all.empty()) {
            out.normal_form = all.front().normal_form;
            out.steps = all.front().step_count;
        }
        return out;
    }
    ReduceResult r = reduce(rules, g, cfg);
    out.steps = r.step_count;
    out.normal_form = r.normal_form;
    out.accepted = is_isomorphic(r.normal_form, accept).has_value();
    return out;
}

} // namespace gtx
