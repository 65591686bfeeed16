#include "gtx/systems.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "gtx/io.hpp"

namespace gtx {

namespace {

LabelAlphabet tree_alphabet() {
    return LabelAlphabet{{kBox, kTri}, {kPlain}};
}

Graph single_rooted_box() {
    Graph g(tree_alphabet());
    g.add_node(0, kBox, true);
    return g;
}

Rule make_rule(std::string name, Graph l, Graph k, Graph r) {
    return Rule{std::move(name), std::move(l), std::move(k), std::move(r)};
}

} // namespace

NamedSystem tree_system() {
    LabelAlphabet a = tree_alphabet();
    NamedSystem s;
    s.name = "tree";
    s.alphabet = a;
    s.input_contract =
        "totally labelled, totally rooted graphs with exactly one root and all "
        "labels 'box'/'plain'";

    // prune a rooted leaf below a plain parent, moving the root up
    Graph l0(a), k0(a), r0(a);
    l0.add_node(1, kBox, false);
    l0.add_node(2, kBox, true);
    l0.add_edge(1, 1, 2, kPlain);
    k0.add_node(1);
    r0.add_node(1, kBox, true);
    s.rules.push_back(make_rule("r0", l0, k0, r0));

    // prune a rooted leaf below a marked parent, unmarking it
    Graph l1(a), k1(a), r1(a);
    l1.add_node(1, kTri, false);
    l1.add_node(2, kBox, true);
    l1.add_edge(1, 1, 2, kPlain);
    k1.add_node(1);
    r1.add_node(1, kBox, true);
    s.rules.push_back(make_rule("r1", l1, k1, r1));

    // push the root down one edge, marking the node it leaves
    Graph l2(a), k2(a), r2(a);
    l2.add_node(1, kBox, true);
    l2.add_node(2, kBox, false);
    l2.add_edge(1, 1, 2, kPlain);
    k2.add_node(1);
    k2.add_node(2);
    r2.add_node(1, kTri, false);
    r2.add_node(2, kBox, true);
    r2.add_edge(2, 1, 2, kPlain);
    s.rules.push_back(make_rule("r2", l2, k2, r2));

    s.accept = single_rooted_box();
    return s;
}

NamedSystem fbt_system() {
    LabelAlphabet a = tree_alphabet();
    NamedSystem s;
    s.name = "fbt";
    s.alphabet = a;
    s.input_contract = "as tree, recognising full binary trees";

    // an isolated rooted cherry collapses to the accept graph
    Graph l0(a), k0(a), r0(a);
    l0.add_node(1, kBox, true);
    l0.add_node(2, kBox, false);
    l0.add_node(3, kBox, false);
    l0.add_edge(1, 1, 2, kPlain);
    l0.add_edge(2, 1, 3, kPlain);
    r0.add_node(4, kBox, true);
    s.rules.push_back(make_rule("r0", l0, k0, r0));

    // prune a rooted cherry below a plain parent, leaving a fresh leaf
    Graph l1(a), k1(a), r1(a);
    l1.add_node(1, kBox, false);
    l1.add_node(2, kBox, true);
    l1.add_node(3, kBox, false);
    l1.add_node(4, kBox, false);
    l1.add_edge(1, 1, 2, kPlain);
    l1.add_edge(2, 2, 3, kPlain);
    l1.add_edge(3, 2, 4, kPlain);
    k1.add_node(1);
    r1.add_node(1, kBox, true);
    r1.add_node(5, kBox, false);
    r1.add_edge(4, 1, 5, kPlain);
    s.rules.push_back(make_rule("r1", l1, k1, r1));

    // the same below a marked parent
    Graph l2 = l1, k2 = k1, r2 = r1;
    l2.node(1).label = kTri;
    s.rules.push_back(make_rule("r2", l2, k2, r2));

    // push the root down a chain of two
    Graph l3(a), k3(a), r3(a);
    l3.add_node(1, kBox, true);
    l3.add_node(2, kBox, false);
    l3.add_node(3, kBox, false);
    l3.add_edge(1, 1, 2, kPlain);
    l3.add_edge(2, 2, 3, kPlain);
    k3.add_node(1);
    k3.add_node(2);
    k3.add_node(3);
    r3.add_node(1, kTri, false);
    r3.add_node(2, kBox, true);
    r3.add_node(3, kBox, false);
    r3.add_edge(3, 1, 2, kPlain);
    r3.add_edge(4, 2, 3, kPlain);
    s.rules.push_back(make_rule("r3", l3, k3, r3));

    // a rooted leaf moves the root to its parent and leaves a fresh leaf
    Graph l4(a), k4(a), r4(a);
    l4.add_node(1, kBox, false);
    l4.add_node(2, kBox, true);
    l4.add_edge(1, 1, 2, kPlain);
    k4.add_node(1);
    r4.add_node(1, kBox, true);
    r4.add_node(3, kBox, false);
    r4.add_edge(2, 1, 3, kPlain);
    s.rules.push_back(make_rule("r4", l4, k4, r4));

    s.accept = single_rooted_box();
    return s;
}

NamedSystem tree_grammar() {
    LabelAlphabet a{{kBox}, {kPlain}};
    NamedSystem s;
    s.name = "tree-grammar";
    s.alphabet = a;
    s.input_contract = "grammar; start graph is the single box node";

    Graph l(a), k(a), r(a);
    l.add_node(1, kBox, false);
    k.add_node(1, kBox, false);
    r.add_node(1, kBox, false);
    r.add_node(2, kBox, false);
    r.add_edge(1, 1, 2, kPlain);
    s.rules.push_back(make_rule("r", l, k, r));

    Graph start(a);
    start.add_node(0, kBox, false);
    s.accept = start;  // the start graph; the inverse system accepts it
    return s;
}

namespace {

// Transcription of the flow-diagram grammar: statements sit between
// junctions, decisions fork with t/f branches. The inverse system reduces
// every extended flow diagram back to the start graph dot->box->dot.
const char* const kEfdRules = R"(
alphabet { nodes: dot, box, dia; edges: plain, t, f }
# split a statement into two, separated by a fresh junction
rule seq {
  left {
    node 1 [label=dot, root=0]
    node 2 [label=box, root=0]
    node 3 [label=dot, root=0]
    edge 1: 1 -> 2 [label=plain]
    edge 2: 2 -> 3 [label=plain]
  }
  interface {
    node 1 [label=dot, root=0]
    node 2 [label=box, root=0]
    node 3 [label=dot, root=0]
  }
  right {
    node 1 [label=dot, root=0]
    node 2 [label=box, root=0]
    node 3 [label=dot, root=0]
    node 4 [label=dot, root=0]
    node 5 [label=box, root=0]
    edge 1: 1 -> 2 [label=plain]
    edge 3: 2 -> 4 [label=plain]
    edge 4: 4 -> 5 [label=plain]
    edge 5: 5 -> 3 [label=plain]
  }
}
# replace a statement by a loop whose body is filled in by dec1
rule while {
  left {
    node 1 [label=dot, root=0]
    node 2 [label=box, root=0]
    node 3 [label=dot, root=0]
    edge 1: 1 -> 2 [label=plain]
    edge 2: 2 -> 3 [label=plain]
  }
  interface {
    node 1 [label=dot, root=0]
    node 3 [label=dot, root=0]
  }
  right {
    node 1 [label=dot, root=0]
    node 3 [label=dot, root=0]
    node 4 [label=dia, root=0]
    edge 3: 1 -> 4 [label=plain]
    edge 4: 4 -> 1 [label=t]
    edge 5: 4 -> 3 [label=f]
  }
}
# replace a statement by a decision whose branches are filled in by dec1/dec2
rule ddec {
  left {
    node 1 [label=dot, root=0]
    node 2 [label=box, root=0]
    node 3 [label=dot, root=0]
    edge 1: 1 -> 2 [label=plain]
    edge 2: 2 -> 3 [label=plain]
  }
  interface {
    node 1 [label=dot, root=0]
    node 3 [label=dot, root=0]
  }
  right {
    node 1 [label=dot, root=0]
    node 3 [label=dot, root=0]
    node 4 [label=dia, root=0]
    edge 3: 1 -> 4 [label=plain]
    edge 4: 4 -> 3 [label=t]
    edge 5: 4 -> 3 [label=f]
  }
}
# put a statement onto an empty true-branch
rule dec1 {
  left {
    node 1 [label=dia, root=0]
    node 2 [label=dot, root=0]
    edge 1: 1 -> 2 [label=t]
  }
  interface {
    node 1 [label=dia, root=0]
    node 2 [label=dot, root=0]
  }
  right {
    node 1 [label=dia, root=0]
    node 2 [label=dot, root=0]
    node 3 [label=dot, root=0]
    node 4 [label=box, root=0]
    edge 2: 1 -> 3 [label=t]
    edge 3: 3 -> 4 [label=plain]
    edge 4: 4 -> 2 [label=plain]
  }
}
# put a statement onto an empty false-branch
rule dec2 {
  left {
    node 1 [label=dia, root=0]
    node 2 [label=dot, root=0]
    edge 1: 1 -> 2 [label=f]
  }
  interface {
    node 1 [label=dia, root=0]
    node 2 [label=dot, root=0]
  }
  right {
    node 1 [label=dia, root=0]
    node 2 [label=dot, root=0]
    node 3 [label=dot, root=0]
    node 4 [label=box, root=0]
    edge 2: 1 -> 3 [label=f]
    edge 3: 3 -> 4 [label=plain]
    edge 4: 4 -> 2 [label=plain]
  }
}
accept {
  node 0 [label=dot, root=0]
  node 1 [label=box, root=0]
  node 2 [label=dot, root=0]
  edge 0: 0 -> 1 [label=plain]
  edge 1: 1 -> 2 [label=plain]
}
)";

} // namespace

NamedSystem efd_grammar() {
    NamedSystem s = parse_system(kEfdRules);
    s.name = "efd-grammar";
    s.input_contract = "grammar; start graph is dot->box->dot";
    return s;
}

Graph efd_start_graph() {
    return *efd_grammar().accept;
}

NamedSystem invert_system(const NamedSystem& s, const std::string& new_name) {
    NamedSystem out = s;
    out.name = new_name;
    out.rules.clear();
    for (const Rule& r : s.rules) out.rules.push_back(invert(r));
    return out;
}

std::optional<NamedSystem> builtin_system(const std::string& name) {
    if (name == "tree") return tree_system();
    if (name == "fbt") return fbt_system();
    if (name == "tree-grammar") return tree_grammar();
    if (name == "efd-grammar") return efd_grammar();
    if (name == "tree-slow") return invert_system(tree_grammar(), "tree-slow");
    if (name == "efd-inverse") return invert_system(efd_grammar(), "efd-inverse");
    return std::nullopt;
}

std::vector<std::string> builtin_system_names() {
    return {"tree", "fbt", "tree-grammar", "tree-slow", "efd-grammar", "efd-inverse"};
}

// ---------------------------------------------------------------------------
// generators

std::optional<Family> family_from_string(const std::string& s) {
    if (s == "list" || s == "linked_list") return Family::linked_list;
    if (s == "tree" || s == "binary_tree") return Family::binary_tree;
    if (s == "ptree" || s == "perfect_binary_tree") return Family::perfect_binary_tree;
    if (s == "grid") return Family::grid;
    if (s == "star") return Family::star;
    if (s == "cycle") return Family::cycle;
    return std::nullopt;
}

std::string to_string(Family f) {
    switch (f) {
        case Family::linked_list: return "list";
        case Family::binary_tree: return "tree";
        case Family::perfect_binary_tree: return "ptree";
        case Family::grid: return "grid";
        case Family::star: return "star";
        default: return "cycle";
    }
}

Graph generate(Family family, std::int64_t size, RootPlacement root, std::uint64_t seed,
               std::int64_t size2) {
    if (size < 1) throw BadSize("size must be >= 1");
    Graph g(tree_alphabet());
    switch (family) {
        case Family::linked_list: {
            for (Id i = 0; i < size; ++i) g.add_node(i, kBox, false);
            for (Id i = 0; i + 1 < size; ++i) g.add_edge(i, i, i + 1, kPlain);
            break;
        }
        case Family::binary_tree: {
            std::mt19937_64 rng(seed);
            std::vector<Id> open;
            std::vector<int> children;
            g.add_node(0, kBox, false);
            open.push_back(0);
            children.push_back(0);
            for (Id i = 1; i < size; ++i) {
                std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
                std::size_t k = pick(rng);
                Id parent = open[k];
                g.add_node(i, kBox, false);
                g.add_edge(i - 1, parent, i, kPlain);
                if (++children[k] == 2) {
                    children[k] = children.back();
                    open[k] = open.back();
                    children.pop_back();
                    open.pop_back();
                }
                open.push_back(i);
                children.push_back(0);
            }
            break;
        }
        case Family::perfect_binary_tree: {
            int depth = 1;
            while ((Id{1} << (depth + 1)) - 1 <= size) ++depth;
            Id n = (Id{1} << depth) - 1;
            for (Id i = 0; i < n; ++i) g.add_node(i, kBox, false);
            Id e = 0;
            for (Id i = 0; 2 * i + 2 < n; ++i) {
                g.add_edge(e++, i, 2 * i + 1, kPlain);
                g.add_edge(e++, i, 2 * i + 2, kPlain);
            }
            break;
        }
        case Family::grid: {
            Id rows = size, cols = size2 > 0 ? size2 : size;
            if (cols < 1) throw BadSize("grid columns must be >= 1");
            for (Id i = 0; i < rows; ++i)
                for (Id j = 0; j < cols; ++j) g.add_node(i * cols + j, kBox, false);
            Id e = 0;
            for (Id i = 0; i < rows; ++i)
                for (Id j = 0; j < cols; ++j) {
                    if (j + 1 < cols) g.add_edge(e++, i * cols + j, i * cols + j + 1, kPlain);
                    if (i + 1 < rows) g.add_edge(e++, i * cols + j, (i + 1) * cols + j, kPlain);
                }
            break;
        }
        case Family::star: {
            // satellites 0..size-1, hub = size; orientation alternates
            for (Id i = 0; i <= size; ++i) g.add_node(i, kBox, false);
            for (Id i = 0; i < size; ++i) {
                if (i % 2 == 0)
                    g.add_edge(i, size, i, kPlain);
                else
                    g.add_edge(i, i, size, kPlain);
            }
            break;
        }
        case Family::cycle: {
            for (Id i = 0; i < size; ++i) g.add_node(i, kBox, false);
            for (Id i = 0; i < size; ++i) g.add_edge(i, i, (i + 1) % size, kPlain);
            break;
        }
    }
    if (root.kind == RootPlacement::first) {
        g.node(g.nodes().front().id).rooted = true;
    } else if (root.kind == RootPlacement::node) {
        if (!g.has_node(root.id)) throw BadSize("root node id not in graph");
        g.node(root.id).rooted = true;
    }
    return g;
}

// ---------------------------------------------------------------------------
// mutations

std::optional<Mutation> mutation_from_string(const std::string& s) {
    if (s == "parallel") return Mutation::add_parallel_edge;
    if (s == "reverse") return Mutation::reverse_edge;
    if (s == "cross") return Mutation::add_cross_edge;
    if (s == "delete") return Mutation::delete_edge;
    return std::nullopt;
}

std::optional<Graph> mutate(const Graph& g, Mutation kind, std::uint64_t seed) {
    if (g.edge_count() == 0 && kind != Mutation::add_cross_edge) return std::nullopt;
    std::mt19937_64 rng(seed);
    Graph out = g;
    auto pick = [&rng](std::size_t n) {
        std::uniform_int_distribution<std::size_t> d(0, n - 1);
        return d(rng);
    };
    switch (kind) {
        case Mutation::add_parallel_edge: {
            const Edge& e = g.edges()[pick(g.edge_count())];
            out.add_edge(g.max_edge_id() + 1, e.src, e.tgt, e.label);
            return out;
        }
        case Mutation::reverse_edge: {
            // only reversing below the top node is guaranteed to break a tree
            std::vector<const Edge*> cands;
            for (const Edge& e : g.edges()) {
                int d = 0;
                for (const Edge& f : g.edges())
                    if (f.tgt == e.src) ++d;
                if (d >= 1) cands.push_back(&e);
            }
            if (cands.empty()) return std::nullopt;
            const Edge* e = cands[pick(cands.size())];
            Id id = e->id;
            Id s = e->src, t = e->tgt;
            Symbol l = e->label;
            out.remove_edge(id);
            out.add_edge(id, t, s, l);
            return out;
        }
        case Mutation::add_cross_edge: {
            std::vector<std::pair<Id, Id>> cands;
            for (const Node& b : g.nodes()) {
                if (g.indegree(b.id) < 1) continue;
                for (const Node& a : g.nodes()) {
                    if (a.id == b.id) continue;
                    bool exists = false;
                    for (const Edge& e : g.edges())
                        if (e.src == a.id && e.tgt == b.id) exists = true;
                    if (!exists) cands.emplace_back(a.id, b.id);
                }
            }
            if (cands.empty()) return std::nullopt;
            auto [a, b] = cands[pick(cands.size())];
            out.add_edge(g.max_edge_id() + 1, a, b, kPlain);
            return out;
        }
        case Mutation::delete_edge: {
            const Edge& e = g.edges()[pick(g.edge_count())];
            out.remove_edge(e.id);
            return out;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// oracles

bool oracle_is_tree(const Graph& g) {
    if (g.node_count() == 0) return false;
    if (g.edge_count() != g.node_count() - 1) return false;
    if (connected_components(g).size() != 1) return false;
    std::unordered_map<Id, int> indeg;
    for (const Edge& e : g.edges()) ++indeg[e.tgt];
    for (auto& [v, d] : indeg)
        if (d > 1) return false;
    return true;
}

bool oracle_is_fbt(const Graph& g) {
    if (!oracle_is_tree(g)) return false;
    std::unordered_map<Id, int> outdeg;
    for (const Edge& e : g.edges()) ++outdeg[e.src];
    for (const Node& n : g.nodes()) {
        int d = outdeg.count(n.id) ? outdeg[n.id] : 0;
        if (d != 0 && d != 2) return false;
    }
    return true;
}

bool oracle_cycles_have_t(const Graph& g) {
    // the subgraph of non-t edges must be acyclic
    std::unordered_map<Id, std::vector<Id>> adj;
    for (const Edge& e : g.edges())
        if (e.label != "t") adj[e.src].push_back(e.tgt);
    std::unordered_map<Id, int> state;  // 0 unseen, 1 on stack, 2 done
    std::function<bool(Id)> dfs = [&](Id v) -> bool {
        state[v] = 1;
        for (Id w : adj[v]) {
            if (state[w] == 1) return false;
            if (state[w] == 0 && !dfs(w)) return false;
        }
        state[v] = 2;
        return true;
    };
    for (const Node& n : g.nodes())
        if (state[n.id] == 0 && !dfs(n.id)) return false;
    return true;
}

Graph strip(const Graph& g) {
    Graph out(tree_alphabet());
    for (const Node& n : g.nodes()) out.add_node(n.id, kBox, false);
    for (const Edge& e : g.edges()) out.add_edge(e.id, e.src, e.tgt, kPlain);
    return out;
}

} // namespace gtx
