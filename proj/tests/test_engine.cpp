#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtx/engine.hpp"
#include "gtx/systems.hpp"
#include "oracles.hpp"

using namespace gtx;

namespace {

Graph worked_tree() {
    Graph t(tree_system().alphabet);
    for (Id i = 0; i < 5; ++i) t.add_node(i, kBox, i == 1);
    t.add_edge(0, 0, 1, kPlain);
    t.add_edge(1, 0, 2, kPlain);
    t.add_edge(2, 1, 3, kPlain);
    t.add_edge(3, 2, 4, kPlain);
    return t;
}

Graph rooted_3cycle() { return generate(Family::cycle, 3, {RootPlacement::node, 1}); }

Graph forest_input() {
    auto sys = tree_system();
    Graph f(sys.alphabet);
    for (Id i = 0; i < 4; ++i) f.add_node(i, kBox, i == 0);
    f.add_edge(0, 0, 2, kPlain);
    f.add_edge(1, 1, 3, kPlain);
    return f;
}

} // namespace

TEST_CASE("is_fast") {
    auto tree = tree_system();
    for (const Rule& r : tree.rules) CHECK(is_fast(r));
    CHECK(is_fast_system(tree.rules));

    // unrooted leaf pruning is not fast
    Rule pruner = invert(tree_grammar().rules[0]);
    CHECK(!is_fast(pruner));

    // one rooted component is not enough when another has no root
    Graph l(tree.alphabet);
    l.add_node(1, kBox, true);
    l.add_node(2, kBox, false);  // separate component, no root
    Rule two{"two", l, Graph(tree.alphabet), Graph(tree.alphabet)};
    two.interface.add_node(1);
    two.interface.add_node(2);
    two.right = two.left;
    CHECK(!is_fast(two));
}

TEST_CASE("preserves_bounds") {
    auto tree = tree_system();
    EngineConfig cfg;
    cfg.degree_bound = 2;
    cfg.root_bound = 1;
    for (const Rule& r : tree.rules) {
        auto rep = preserves_bounds(r, cfg);
        CHECK(rep.degree_ok);
        CHECK(rep.roots_ok);
    }
    for (const Rule& r : fbt_system().rules) {
        cfg.degree_bound = 3;
        auto rep = preserves_bounds(r, cfg);
        CHECK(rep.degree_ok);
        CHECK(rep.roots_ok);
    }

    // creating a looped node: degree 2, so fails the bound 1 but passes 2
    LabelAlphabet a{{"a"}, {"x"}};
    Rule looper;
    looper.name = "looper";
    looper.left = Graph(a);
    looper.left.add_node(1, "a", false);
    looper.interface = looper.left;
    looper.right = looper.left;
    looper.right.add_node(2, "a", false);
    looper.right.add_edge(1, 2, 2, "x");
    EngineConfig one;
    one.degree_bound = 1;
    CHECK(!preserves_bounds(looper, one).degree_ok);
    one.degree_bound = 2;
    CHECK(preserves_bounds(looper, one).degree_ok);

    // more roots on the right than on the left
    Rule rooter = looper;
    rooter.right.node(2).rooted = true;
    CHECK(!preserves_bounds(rooter, one).roots_ok);
}

TEST_CASE("rooted_matches equals general matching filtered by dangling") {
    auto tree = tree_system();
    oracle::Rng rng(19);
    for (int i = 0; i < 40; ++i) {
        auto fam = static_cast<Family>(rng.below(3));
        Graph g = generate(fam, 1 + rng.below(12), {}, rng.gen());
        // place one root at a random node
        std::vector<Id> ids = g.node_ids();
        g.node(ids[static_cast<std::size_t>(rng.below(static_cast<int>(ids.size())))]).rooted =
            true;
        for (const Rule& r : tree.rules) {
            auto fast = rooted_matches(r, g);
            auto slow = applicable_matches(r, g);
            std::sort(fast.begin(), fast.end());
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("rooted_matches exposes only valid anchors") {
    auto tree = tree_system();

    // a ten-node path rooted at the head has exactly one push-down match
    Graph path = generate(Family::linked_list, 10, {RootPlacement::first, 0});
    CHECK(rooted_matches(tree.rules[2], path).size() == 1);

    // no roots, no matches
    Graph bare = generate(Family::linked_list, 10);
    for (const Rule& r : tree.rules) CHECK(rooted_matches(r, bare).empty());

    // non-fast rules are rejected
    Rule pruner = invert(tree_grammar().rules[0]);
    CHECK_THROWS_AS(rooted_matches(pruner, bare), NotFastRule);

    // mid-reduction shape: prune the rooted leaf under the top node
    Graph g(tree.alphabet);
    g.add_node(0, kBox, false);
    g.add_node(1, kBox, true);
    g.add_node(2, kBox, false);
    g.add_node(4, kBox, false);
    g.add_edge(0, 0, 1, kPlain);
    g.add_edge(1, 0, 2, kPlain);
    g.add_edge(3, 2, 4, kPlain);
    CHECK(rooted_matches(tree.rules[0], g).size() == 1);
}

TEST_CASE("worked reduction takes exactly seven steps") {
    auto sys = tree_system();
    EngineConfig cfg;
    ReduceResult res = reduce(sys.rules, worked_tree(), cfg);
    CHECK(res.step_count == 7);
    CHECK(is_isomorphic(res.normal_form, *sys.accept).has_value());
    CHECK(res.fast_system);

    // already-normal input
    ReduceResult res2 = reduce(sys.rules, *sys.accept, cfg);
    CHECK(res2.step_count == 0);

    // the rooted 3-cycle gets stuck after two steps
    ReduceResult res3 = reduce(sys.rules, rooted_3cycle(), cfg);
    CHECK(res3.step_count == 2);
    CHECK(res3.normal_form.node_count() == 3);
    CHECK(!is_isomorphic(res3.normal_form, *sys.accept).has_value());

    // the forest gets stuck with two components
    ReduceResult res4 = reduce(sys.rules, forest_input(), cfg);
    CHECK(!is_isomorphic(res4.normal_form, *sys.accept).has_value());
    CHECK(connected_components(res4.normal_form).size() == 2);
}

TEST_CASE("step budget") {
    auto sys = tree_system();
    EngineConfig cfg;
    cfg.max_steps = 3;
    try {
        reduce(sys.rules, worked_tree(), cfg);
        FAIL("expected StepBudgetExceeded");
    } catch (const StepBudgetExceeded& e) {
        CHECK(e.partial.step_count == 3);
        CHECK(e.partial.budget_exhausted);
        CHECK(e.partial.steps.size() == 3);  // partial trace included
    }
    // a budget that exactly suffices does not throw
    cfg.max_steps = 7;
    CHECK(reduce(sys.rules, worked_tree(), cfg).step_count == 7);
}

TEST_CASE("recognition with both strategies") {
    auto sys = tree_system();
    EngineConfig cfg;
    cfg.record_trace = false;

    Graph list = generate(Family::linked_list, 40, {RootPlacement::first, 0});
    CHECK(recognize(sys.rules, list, *sys.accept, cfg).accepted);

    CHECK(!recognize(sys.rules, rooted_3cycle(), *sys.accept, cfg).accepted);

    EngineConfig all = cfg;
    all.strategy = Strategy::all_normal_forms;
    Graph small = generate(Family::binary_tree, 6, {RootPlacement::first, 0}, 5);
    CHECK(recognize(sys.rules, small, *sys.accept, all).accepted);
    CHECK(!recognize(sys.rules, rooted_3cycle(), *sys.accept, all).accepted);
}

TEST_CASE("trace length, tree preservation and root conservation") {
    auto sys = tree_system();
    oracle::Rng rng(29);
    for (int i = 0; i < 15; ++i) {
        Graph g = generate(Family::binary_tree, 2 + rng.below(30), {}, rng.gen());
        std::vector<Id> ids = g.node_ids();
        g.node(ids[static_cast<std::size_t>(rng.below(static_cast<int>(ids.size())))]).rooted =
            true;
        bool expect_tree = oracle_is_tree(strip(g));
        EngineConfig cfg;
        std::size_t observed = 0;
        ReduceResult res = reduce(sys.rules, g, cfg, [&](const Graph& cur, const TraceStep& ts) {
            ++observed;
            CHECK(oracle_is_tree(strip(cur)) == expect_tree);
            CHECK(ts.root_count_after == 1);
            CHECK(ts.node_count_after >= 1);
        });
        CHECK(observed == res.step_count);
        CHECK(res.step_count <= 2 * g.node_count());
    }
}

TEST_CASE("work locality: visited items per call do not grow with the host") {
    auto sys = tree_system();
    std::vector<std::uint64_t> counts;
    for (std::int64_t n : {1000, 10000, 100000}) {
        Graph g = generate(Family::linked_list, n, {RootPlacement::first, 0});
        HostGraph host(g);
        for (const Rule& r : sys.rules) rooted_matches(r, host);
        counts.push_back(host.visited_items());
    }
    CHECK(counts[0] == counts[1]);
    CHECK(counts[1] == counts[2]);
}

TEST_CASE("all_normal_forms finds every outcome class") {
    // two rules racing to relabel the same node differently: two normal forms
    LabelAlphabet a{{"s", "p", "q"}, {"x"}};
    auto relabel = [&](const char* name, const char* to) {
        Rule r;
        r.name = name;
        r.left = Graph(a);
        r.left.add_node(1, "s", false);
        r.interface = Graph(a);
        r.interface.add_node(1);
        r.right = Graph(a);
        r.right.add_node(1, to, false);
        return r;
    };
    std::vector<Rule> rules{relabel("to_p", "p"), relabel("to_q", "q")};
    Graph start(a);
    start.add_node(0, "s", false);
    EngineConfig cfg;
    auto results = reduce_all(rules, start, cfg);
    CHECK(results.size() == 2);
}
