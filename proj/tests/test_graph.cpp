#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtx/graph.hpp"
#include "gtx/morphism.hpp"
#include "oracles.hpp"

using namespace gtx;

namespace {

LabelAlphabet mono() { return {{"n"}, {"e"}}; }

// the two unlabelled example graphs: G has a loop and an incoming edge,
// H has a double edge, a separate feeder and a loop
Graph example_g() {
    Graph g(mono());
    g.add_node(1, "n", false);
    g.add_node(2, "n", false);
    g.add_edge(1, 1, 1, "e");
    g.add_edge(2, 2, 1, "e");
    return g;
}

Graph example_h() {
    Graph h(mono());
    h.add_node(1, "n", false);
    h.add_node(2, "n", false);
    h.add_node(3, "n", false);
    h.add_edge(1, 1, 3, "e");
    h.add_edge(2, 1, 3, "e");
    h.add_edge(3, 2, 3, "e");
    h.add_edge(4, 3, 3, "e");
    return h;
}

} // namespace

TEST_CASE("validate_graph") {
    LabelAlphabet a{{"a", "b"}, {"x"}};
    Graph g(a);
    CHECK(validate_graph(g, a).empty());  // empty graph is fine

    g.add_node(1, "a", true);
    g.add_node(2);
    g.add_edge(10, 1, 2, "x");
    CHECK(validate_graph(g, a).empty());

    Graph bad = g;
    bad.remove_node(2);  // edge 10 now dangles
    auto errs = validate_graph(bad, a);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("edge 10") != std::string::npos);

    Graph bad2 = g;
    bad2.node(1).label = "zzz";
    errs = validate_graph(bad2, a);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("node 1") != std::string::npos);
}

TEST_CASE("degree stats") {
    Graph empty(mono());
    CHECK(degree_stats(empty).max_degree == 0);
    CHECK(degree_stats(empty).root_count == 0);

    // star with 8 satellites: hub degree 8, no roots
    Graph star(mono());
    for (Id i = 0; i <= 8; ++i) star.add_node(i, "n", false);
    for (Id i = 0; i < 8; ++i) {
        if (i % 2 == 0)
            star.add_edge(i, 8, i, "e");
        else
            star.add_edge(i, i, 8, "e");
    }
    CHECK(degree_stats(star).max_degree == 8);
    CHECK(degree_stats(star).root_count == 0);

    Graph loopy(mono());
    loopy.add_node(0, "n", true);
    loopy.add_edge(0, 0, 0, "e");
    CHECK(degree_stats(loopy).max_degree == 2);  // a loop counts twice
    CHECK(degree_stats(loopy).root_count == 1);
}

TEST_CASE("morphism counts on the two example graphs") {
    Graph g = example_g(), h = example_h();
    auto all = find_morphisms(g, h, false);
    auto inj = find_morphisms(g, h, true);
    CHECK(all.size() == 4);
    CHECK(inj.size() == 3);
    for (const Morphism& m : all) CHECK(is_morphism(g, m, h));

    auto back = find_morphisms(h, g, false);
    CHECK(back.size() == 4);
    int surj = 0;
    for (const Morphism& m : back)
        if (is_surjective(m, g)) ++surj;
    CHECK(surj == 3);
}

TEST_CASE("identity morphism is always found") {
    oracle::Rng rng(7);
    LabelAlphabet a{{"a", "b"}, {"x", "y"}};
    for (int i = 0; i < 20; ++i) {
        Graph g = oracle::random_tlrg(rng, a, 4, 4);
        auto ms = find_morphisms(g, g, true);
        Morphism id = identity_morphism(g);
        CHECK(std::find(ms.begin(), ms.end(), id) != ms.end());
        // composition of found morphisms is again a morphism
        if (!ms.empty()) {
            const Morphism& m = ms.front();
            CHECK(is_morphism(g, compose(m, m), g));
        }
    }
}

TEST_CASE("alphabet mismatch is rejected") {
    Graph g(mono());
    Graph h(LabelAlphabet{{"other"}, {"e"}});
    CHECK_THROWS_AS(find_morphisms(g, h, false), AlphabetMismatch);
}

TEST_CASE("injective morphism counts agree with the exhaustive oracle") {
    oracle::Rng rng(42);
    LabelAlphabet a{{"a", "b"}, {"x", "y"}};
    for (int i = 0; i < 60; ++i) {
        Graph g = oracle::random_tlrg(rng, a, 4, 4);
        Graph h = oracle::random_tlrg(rng, a, 4, 4);
        auto lib = find_morphisms(g, h, true);
        auto ref = oracle::all_morphisms(g, h, true);
        REQUIRE(lib.size() == ref.size());
        CHECK(lib == ref);  // identical sorted lists
        auto lib_all = find_morphisms(g, h, false);
        auto ref_all = oracle::all_morphisms(g, h, false);
        CHECK(lib_all.size() == ref_all.size());
    }
}

TEST_CASE("isomorphism on renamed graphs and basic non-isomorphisms") {
    Graph g = example_h();
    Graph renamed(mono());
    renamed.add_node(10, "n", false);
    renamed.add_node(20, "n", false);
    renamed.add_node(30, "n", false);
    renamed.add_edge(100, 10, 30, "e");
    renamed.add_edge(200, 10, 30, "e");
    renamed.add_edge(300, 20, 30, "e");
    renamed.add_edge(400, 30, 30, "e");
    auto w = is_isomorphic(g, renamed);
    REQUIRE(w.has_value());
    CHECK(is_morphism(g, *w, renamed));
    CHECK(undefinedness_preserving(g, *w, renamed));

    // labelled vs unlabelled single node: injective+surjective morphism
    // exists one way, but no isomorphism either way
    LabelAlphabet a{{"x"}, {"e"}};
    Graph labelled(a), blank(a);
    labelled.add_node(0, "x");
    blank.add_node(0);
    CHECK(find_morphisms(blank, labelled, true).size() == 1);
    CHECK(!is_isomorphic(labelled, blank).has_value());
    CHECK(!is_isomorphic(blank, labelled).has_value());

    // 3-node path vs 3-node star
    Graph path(mono()), fork(mono());
    for (Id i = 0; i < 3; ++i) {
        path.add_node(i, "n", false);
        fork.add_node(i, "n", false);
    }
    path.add_edge(0, 0, 1, "e");
    path.add_edge(1, 1, 2, "e");
    fork.add_edge(0, 0, 1, "e");
    fork.add_edge(1, 0, 2, "e");
    CHECK(!is_isomorphic(path, fork).has_value());
    CHECK(!oracle::isomorphic(path, fork));
}

TEST_CASE("isomorphism is an equivalence and matches the permutation oracle") {
    oracle::Rng rng(5);
    LabelAlphabet a{{"a", "b"}, {"x"}};
    for (int i = 0; i < 40; ++i) {
        Graph g = oracle::random_tlrg(rng, a, 4, 3);
        Graph h = oracle::random_tlrg(rng, a, 4, 3);
        CHECK(is_isomorphic(g, g).has_value());  // reflexive
        auto w = is_isomorphic(g, h);
        CHECK(w.has_value() == oracle::isomorphic(g, h));
        if (w) {
            // symmetric: the witness inverts
            Morphism inv;
            for (auto& [k, v] : w->node_map) inv.node_map[v] = k;
            for (auto& [k, v] : w->edge_map) inv.edge_map[v] = k;
            CHECK(is_morphism(h, inv, g));
        }
    }
}

TEST_CASE("roots only match roots") {
    // every found morphism maps a rooted node to a rooted node
    oracle::Rng rng(11);
    LabelAlphabet a{{"a"}, {"x"}};
    for (int i = 0; i < 30; ++i) {
        Graph g = oracle::random_tlrg(rng, a, 3, 2);
        Graph h = oracle::random_tlrg(rng, a, 4, 3);
        for (const Morphism& m : find_morphisms(g, h, true))
            for (const Node& n : g.nodes())
                if (n.rooted == true) CHECK(h.node(m.node_map.at(n.id)).rooted == true);
    }
}

TEST_CASE("connected components") {
    Graph g(mono());
    for (Id i = 0; i < 5; ++i) g.add_node(i, "n", false);
    g.add_edge(0, 0, 1, "e");
    g.add_edge(1, 3, 2, "e");
    auto comps = connected_components(g);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<Id>{0, 1});
    CHECK(comps[1] == std::vector<Id>{2, 3});
    CHECK(comps[2] == std::vector<Id>{4});
}
