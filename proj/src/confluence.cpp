#include "gtx/confluence.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "gtx/systems.hpp"

namespace gtx {

namespace {

// Shared items between two match images, tested against the interface images
// with label/rootedness definedness taken into account. A preserved node
// whose interface leaves the label (or rootedness) undefined is being
// relabelled, so sharing it is a genuine conflict even though the node
// itself sits in both interfaces. This is the item-set test one gets by
// encoding labels and rootedness as loops.
bool images_independent(const Rule& r1, const Morphism& g1, const Rule& r2,
                        const Morphism& g2) {
    std::map<Id, Id> inv1;  // host node -> r1 left node
    for (const auto& [l, h] : g1.node_map) inv1[h] = l;
    for (const auto& [l2, h] : g2.node_map) {
        auto it = inv1.find(h);
        if (it == inv1.end()) continue;
        Id l1 = it->second;
        if (!r1.interface.has_node(l1) || !r2.interface.has_node(l2)) return false;
        const Node& k1 = r1.interface.node(l1);
        const Node& k2 = r2.interface.node(l2);
        bool l1_lab = r1.left.node(l1).label.has_value();
        bool l2_lab = r2.left.node(l2).label.has_value();
        if ((l1_lab || l2_lab) && (!k1.label || !k2.label)) return false;
        bool l1_rt = r1.left.node(l1).rooted.has_value();
        bool l2_rt = r2.left.node(l2).rooted.has_value();
        if ((l1_rt || l2_rt) && (!k1.rooted || !k2.rooted)) return false;
    }
    std::map<Id, Id> einv1;
    for (const auto& [l, h] : g1.edge_map) einv1[h] = l;
    for (const auto& [l2, h] : g2.edge_map) {
        auto it = einv1.find(h);
        if (it == einv1.end()) continue;
        if (!r1.interface.has_edge(it->second) || !r2.interface.has_edge(l2)) return false;
    }
    return true;
}

} // namespace

bool parallelly_independent(const DerivationStep& s1, const DerivationStep& s2) {
    if (!(s1.host == s2.host)) throw HostMismatch("steps have different hosts");
    return images_independent(s1.rule, s1.match, s2.rule, s2.match);
}

bool sequentially_independent(const DerivationStep& s1, const DerivationStep& s2) {
    if (!(s1.result == s2.host))
        throw HostMismatch("second step does not start at the first step's result");
    // comatch of the first step plays the part of a match of its right side
    Rule r1_flipped = invert(s1.rule);  // left = R1, same interface
    return images_independent(r1_flipped, s1.comatch, s2.rule, s2.match);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::strongly_joinable: return "strongly_joinable";
        case Verdict::joinable_not_strong: return "joinable_not_strong";
        case Verdict::not_joinable: return "not_joinable";
        default: return "unknown";
    }
}

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::locally_confluent_up_to_garbage:
            return "locally_confluent_up_to_garbage";
        case Conclusion::non_confluent_witness: return "non_confluent_witness";
        default: return "inconclusive";
    }
}

// ---------------------------------------------------------------------------
// predicates

GarbagePredicate accept_all_predicate() {
    return {"all", [](const Graph&) { return true; }};
}

GarbagePredicate forest_predicate() {
    return {"forest", [](const Graph& g) {
                if (degree_stats(g).root_count > 1) return false;
                // every component a tree shape: n-1 edges per component,
                // in-degree at most one
                std::map<Id, int> indeg;
                for (const Edge& e : g.edges()) ++indeg[e.tgt];
                for (auto& [v, d] : indeg)
                    if (d > 1) return false;
                auto comps = connected_components(g);
                std::map<Id, int> comp_of;
                for (std::size_t i = 0; i < comps.size(); ++i)
                    for (Id v : comps[i]) comp_of[v] = static_cast<int>(i);
                std::vector<std::size_t> edge_cnt(comps.size(), 0);
                for (const Edge& e : g.edges()) ++edge_cnt[static_cast<std::size_t>(comp_of[e.src])];
                for (std::size_t i = 0; i < comps.size(); ++i)
                    if (edge_cnt[i] + 1 != comps[i].size()) return false;
                return true;
            }};
}

GarbagePredicate cycles_have_t_predicate() {
    return {"cycles-have-t", [](const Graph& g) { return oracle_cycles_have_t(g); }};
}

GarbagePredicate max_roots_predicate(int k) {
    return {"roots<=" + std::to_string(k), [k](const Graph& g) {
                return degree_stats(g).root_count <= k;
            }};
}

GarbagePredicate conjunction(GarbagePredicate a, GarbagePredicate b) {
    auto fa = a.member, fb = b.member;
    return {a.name + "&" + b.name,
            [fa, fb](const Graph& g) { return fa(g) && fb(g); }};
}

std::optional<GarbagePredicate> builtin_predicate(const std::string& name) {
    if (name == "all") return accept_all_predicate();
    if (name == "forest") return forest_predicate();
    if (name == "cycles-have-t") return cycles_have_t_predicate();
    if (name.rfind("roots<=", 0) == 0)
        return max_roots_predicate(std::stoi(name.substr(7)));
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// pair enumeration

namespace {

struct Overlap {
    Graph graph;
    Morphism g1, g2;
};

// All gluings of left1 and left2 along a non-empty compatible identification
// of nodes (labels and rootedness equal) and edges (endpoints identified and
// labels equal).
std::vector<Overlap> enumerate_gluings(const Graph& left1, const Graph& left2) {
    std::vector<Overlap> out;
    std::vector<Id> v1 = left1.node_ids();
    std::vector<Id> v2 = left2.node_ids();

    std::map<Id, Id> node_ident;  // v1 -> v2
    std::unordered_set<Id> used_v2;

    std::function<void()> emit_for_ident = [&]() {
        // compatible edge pairs under the current node identification
        std::vector<std::pair<Id, Id>> cand;
        for (const Edge& e1 : left1.edges()) {
            auto s = node_ident.find(e1.src);
            auto t = node_ident.find(e1.tgt);
            if (s == node_ident.end() || t == node_ident.end()) continue;
            for (const Edge& e2 : left2.edges())
                if (e2.label == e1.label && e2.src == s->second && e2.tgt == t->second)
                    cand.emplace_back(e1.id, e2.id);
        }
        std::map<Id, Id> edge_ident;
        std::unordered_set<Id> used_e2;
        std::function<void(std::size_t)> pick = [&](std::size_t k) {
            if (k == cand.size()) {
                // build the glued graph
                Graph h(left1.alphabet());
                Morphism g1, g2;
                Id next = 0;
                for (Id v : v1) {
                    const Node& n = left1.node(v);
                    h.add_node(next, n.label, n.rooted);
                    g1.node_map[v] = next;
                    ++next;
                }
                for (Id w : v2) {
                    bool glued = false;
                    for (auto& [a, b] : node_ident)
                        if (b == w) {
                            g2.node_map[w] = g1.node_map[a];
                            glued = true;
                            break;
                        }
                    if (!glued) {
                        const Node& n = left2.node(w);
                        h.add_node(next, n.label, n.rooted);
                        g2.node_map[w] = next;
                        ++next;
                    }
                }
                Id enext = 0;
                for (const Edge& e : left1.edges()) {
                    h.add_edge(enext, g1.node_map[e.src], g1.node_map[e.tgt], e.label);
                    g1.edge_map[e.id] = enext;
                    ++enext;
                }
                for (const Edge& e : left2.edges()) {
                    auto it = std::find_if(edge_ident.begin(), edge_ident.end(),
                                           [&](const auto& p) { return p.second == e.id; });
                    if (it != edge_ident.end()) {
                        g2.edge_map[e.id] = g1.edge_map[it->first];
                    } else {
                        h.add_edge(enext, g2.node_map[e.src], g2.node_map[e.tgt], e.label);
                        g2.edge_map[e.id] = enext;
                        ++enext;
                    }
                }
                out.push_back(Overlap{std::move(h), std::move(g1), std::move(g2)});
                return;
            }
            // skip candidate k
            pick(k + 1);
            // or take it
            auto [e1, e2] = cand[k];
            if (!edge_ident.count(e1) && !used_e2.count(e2)) {
                edge_ident[e1] = e2;
                used_e2.insert(e2);
                pick(k + 1);
                edge_ident.erase(e1);
                used_e2.erase(e2);
            }
        };
        pick(0);
    };

    std::function<void(std::size_t)> choose = [&](std::size_t k) {
        if (k == v1.size()) {
            if (!node_ident.empty()) emit_for_ident();
            return;
        }
        Id v = v1[k];
        choose(k + 1);  // leave v unidentified
        const Node& n1 = left1.node(v);
        for (Id w : v2) {
            if (used_v2.count(w)) continue;
            const Node& n2 = left2.node(w);
            if (n1.label != n2.label || n1.rooted != n2.rooted) continue;
            node_ident[v] = w;
            used_v2.insert(w);
            choose(k + 1);
            node_ident.erase(v);
            used_v2.erase(w);
        }
    };
    choose(0);
    return out;
}

bool same_pair_up_to_iso(const CriticalPair& a, const CriticalPair& b, bool allow_swap) {
    auto match_eq = [](const Morphism& m, const Morphism& n, const Morphism& iso) {
        if (m.node_map.size() != n.node_map.size() ||
            m.edge_map.size() != n.edge_map.size())
            return false;
        for (const auto& [k, v] : m.node_map) {
            auto it = n.node_map.find(k);
            if (it == n.node_map.end() || iso.node_map.at(v) != it->second) return false;
        }
        for (const auto& [k, v] : m.edge_map) {
            auto it = n.edge_map.find(k);
            if (it == n.edge_map.end() || iso.edge_map.at(v) != it->second) return false;
        }
        return true;
    };
    bool found = false;
    for_each_isomorphism(a.overlap, b.overlap, [&](const Morphism& iso) {
        if (match_eq(a.left_step.match, b.left_step.match, iso) &&
            match_eq(a.right_step.match, b.right_step.match, iso)) {
            found = true;
            return true;
        }
        if (allow_swap && match_eq(a.left_step.match, b.right_step.match, iso) &&
            match_eq(a.right_step.match, b.left_step.match, iso)) {
            found = true;
            return true;
        }
        return false;
    });
    return found;
}

} // namespace

std::vector<CriticalPair> enumerate_critical_pairs(const std::vector<Rule>& rules) {
    std::vector<CriticalPair> pairs;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = i; j < rules.size(); ++j) {
            const Rule& r1 = rules[i];
            const Rule& r2 = rules[j];
            std::vector<CriticalPair> local;
            for (Overlap& ov : enumerate_gluings(r1.left, r2.left)) {
                if (i == j && ov.g1 == ov.g2) continue;
                if (images_independent(r1, ov.g1, r2, ov.g2)) continue;
                if (!check_dangling(r1, ov.g1, ov.graph)) continue;
                if (!check_dangling(r2, ov.g2, ov.graph)) continue;
                CriticalPair cp;
                cp.left_step = apply(r1, ov.g1, ov.graph);
                cp.right_step = apply(r2, ov.g2, ov.graph);
                cp.overlap = ov.graph;
                for (const Node& n : cp.overlap.nodes())
                    if (cp.left_step.track.count(n.id) && cp.right_step.track.count(n.id))
                        cp.persistent.push_back(n.id);
                bool dup = false;
                for (const CriticalPair& prev : local)
                    if (same_pair_up_to_iso(cp, prev, i == j)) {
                        dup = true;
                        break;
                    }
                if (!dup) local.push_back(std::move(cp));
            }
            for (CriticalPair& cp : local) pairs.push_back(std::move(cp));
        }
    }
    return pairs;
}

std::vector<CriticalPair> filter_non_garbage(const std::vector<CriticalPair>& pairs,
                                             const GarbagePredicate& p) {
    std::vector<CriticalPair> out;
    for (const CriticalPair& cp : pairs)
        if (p.member(cp.overlap)) out.push_back(cp);
    return out;
}

// ---------------------------------------------------------------------------
// joinability

namespace {

struct SearchState {
    Graph g;
    std::map<Id, Id> track;  // overlap node -> current node, persistent only
    std::uint64_t hash = 0;
    std::vector<std::pair<std::size_t, Morphism>> path;  // (rule index, match)
};

std::map<Id, Id> advance_track(const std::map<Id, Id>& track,
                               const std::map<Id, Id>& step_track) {
    std::map<Id, Id> out;
    for (const auto& [v, cur] : track) {
        auto it = step_track.find(cur);
        if (it != step_track.end()) out[v] = it->second;
    }
    return out;
}

bool state_subsumed(const SearchState& s, const std::vector<SearchState>& seen) {
    for (const SearchState& t : seen) {
        if (t.hash != s.hash) continue;
        bool equal = false;
        for_each_isomorphism(s.g, t.g, [&](const Morphism& iso) {
            if (s.track.size() != t.track.size()) return true;  // no iso will fix domains
            for (const auto& [v, cur] : s.track) {
                auto it = t.track.find(v);
                if (it == t.track.end() || iso.node_map.at(cur) != it->second) return false;
            }
            equal = true;
            return true;
        });
        if (equal) return true;
    }
    return false;
}

} // namespace

JoinabilityWitness check_joinability_witness(const CriticalPair& pair,
                                             const std::vector<Rule>& rules, int depth) {
    auto init = [&](const DerivationStep& s) {
        SearchState st;
        st.g = s.result;
        for (Id v : pair.persistent) {
            auto it = s.track.find(v);
            if (it != s.track.end()) st.track[v] = it->second;
        }
        st.hash = iso_hash(st.g);
        return st;
    };

    std::vector<SearchState> side1{init(pair.left_step)};
    std::vector<SearchState> side2{init(pair.right_step)};
    std::vector<SearchState> frontier1 = side1, frontier2 = side2;
    bool exhausted1 = false, exhausted2 = false;

    auto expand = [&](std::vector<SearchState>& all, std::vector<SearchState>& frontier) {
        std::vector<SearchState> next;
        for (const SearchState& st : frontier) {
            for (std::size_t i = 0; i < rules.size(); ++i) {
                for (const Morphism& m : applicable_matches(rules[i], st.g)) {
                    DerivationStep s = apply(rules[i], m, st.g);
                    SearchState ns;
                    ns.g = std::move(s.result);
                    ns.track = advance_track(st.track, s.track);
                    ns.hash = iso_hash(ns.g);
                    ns.path = st.path;
                    ns.path.emplace_back(i, m);
                    if (state_subsumed(ns, all)) continue;
                    all.push_back(ns);
                    next.push_back(std::move(ns));
                }
            }
        }
        frontier = std::move(next);
        return frontier.empty();
    };

    for (int d = 0; d < depth; ++d) {
        if (!exhausted1 && expand(side1, frontier1)) exhausted1 = true;
        if (!exhausted2 && expand(side2, frontier2)) exhausted2 = true;
        if (exhausted1 && exhausted2) break;
    }

    JoinabilityWitness out;
    const SearchState* join1 = nullptr;
    const SearchState* join2 = nullptr;
    for (const SearchState& s1 : side1) {
        for (const SearchState& s2 : side2) {
            if (s1.hash != s2.hash) continue;
            bool strong = false;
            bool any_iso = false;
            for_each_isomorphism(s1.g, s2.g, [&](const Morphism& iso) {
                any_iso = true;
                for (Id v : pair.persistent) {
                    auto a = s1.track.find(v);
                    auto b = s2.track.find(v);
                    if (a == s1.track.end() || b == s2.track.end()) return false;
                    if (iso.node_map.at(a->second) != b->second) return false;
                }
                strong = true;
                return true;
            });
            if (strong) {
                out.verdict = Verdict::strongly_joinable;
                out.left_path = s1.path;
                out.right_path = s2.path;
                return out;
            }
            if (any_iso && !join1) {
                join1 = &s1;
                join2 = &s2;
            }
        }
    }
    if (join1) {
        out.verdict = Verdict::joinable_not_strong;
        out.left_path = join1->path;
        out.right_path = join2->path;
        return out;
    }
    out.verdict =
        exhausted1 && exhausted2 ? Verdict::not_joinable : Verdict::unknown;
    return out;
}

Verdict check_joinability(const CriticalPair& pair, const std::vector<Rule>& rules,
                          int depth) {
    return check_joinability_witness(pair, rules, depth).verdict;
}

// ---------------------------------------------------------------------------
// analysis

int AnalysisReport::count(Verdict v) const {
    int c = 0;
    for (const CriticalPair& p : pairs)
        if (p.verdict == v) ++c;
    return c;
}

std::string AnalysisReport::summary_line() const {
    std::ostringstream os;
    os << "pairs=" << pairs.size() << " strong=" << count(Verdict::strongly_joinable)
       << " joinable=" << count(Verdict::joinable_not_strong)
       << " nonjoinable=" << count(Verdict::not_joinable)
       << " unknown=" << count(Verdict::unknown) << " conclusion=" << to_string(conclusion);
    return os.str();
}

AnalysisReport analyze(const std::vector<Rule>& rules,
                       const std::optional<GarbagePredicate>& p, int depth) {
    AnalysisReport rep;
    rep.depth = depth;
    rep.predicate_name = p ? p->name : "none";
    rep.all_rules_size_reducing = !rules.empty();
    for (const Rule& r : rules)
        if (r.left.size() <= r.right.size()) rep.all_rules_size_reducing = false;

    std::vector<CriticalPair> all = enumerate_critical_pairs(rules);
    for (CriticalPair& cp : all) {
        if (p && !p->member(cp.overlap)) {
            rep.garbage.push_back(std::move(cp));
        } else {
            rep.pairs.push_back(std::move(cp));
        }
    }
    for (CriticalPair& cp : rep.pairs) {
        JoinabilityWitness w = check_joinability_witness(cp, rules, depth);
        cp.verdict = w.verdict;
        rep.witnesses.push_back(std::move(w));
    }

    bool all_strong = true, any_nonjoinable = false;
    for (const CriticalPair& cp : rep.pairs) {
        if (cp.verdict != Verdict::strongly_joinable) all_strong = false;
        if (cp.verdict == Verdict::not_joinable) any_nonjoinable = true;
    }
    if (all_strong)
        rep.conclusion = Conclusion::locally_confluent_up_to_garbage;
    else if (any_nonjoinable)
        rep.conclusion = Conclusion::non_confluent_witness;
    else
        rep.conclusion = Conclusion::inconclusive;
    return rep;
}

std::string format_report(const AnalysisReport& report, bool full) {
    std::ostringstream os;
    int idx = 0;
    for (const CriticalPair& cp : report.pairs) {
        os << "pair " << idx++ << ": " << cp.left_step.rule.name << " / "
           << cp.right_step.rule.name << "  verdict=" << to_string(cp.verdict) << "\n";
        if (full) {
            os << "overlap {\n";
            for (const Node& n : cp.overlap.nodes()) {
                os << "  node " << n.id;
                if (n.label) os << " label=" << *n.label;
                if (n.rooted) os << " root=" << (*n.rooted ? 1 : 0);
                os << "\n";
            }
            for (const Edge& e : cp.overlap.edges())
                os << "  edge " << e.id << ": " << e.src << " -> " << e.tgt
                   << " label=" << e.label << "\n";
            os << "}\n";
            os << "persistent:";
            for (Id v : cp.persistent) os << " " << v;
            os << "\n";
            if (static_cast<std::size_t>(idx - 1) < report.witnesses.size()) {
                const JoinabilityWitness& w = report.witnesses[static_cast<std::size_t>(idx - 1)];
                if (!w.left_path.empty() || !w.right_path.empty()) {
                    auto side = [&](const char* tag, const auto& path) {
                        os << tag;
                        for (const auto& [ri, m] : path) os << " " << ri;
                        os << "\n";
                    };
                    side("join left via rule indices:", w.left_path);
                    side("join right via rule indices:", w.right_path);
                }
            }
        }
    }
    if (!report.garbage.empty())
        os << "garbage pairs dropped by predicate '" << report.predicate_name
           << "': " << report.garbage.size() << "\n";
    if (report.all_rules_size_reducing)
        os << "termination: every rule is size reducing\n";
    os << "conclusion: " << to_string(report.conclusion) << "\n";
    os << report.summary_line() << "\n";
    return os.str();
}

} // namespace gtx
