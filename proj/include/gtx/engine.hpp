#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "gtx/rule.hpp"

namespace gtx {

enum class Strategy { first_match, all_normal_forms };

struct EngineConfig {
    std::optional<int> degree_bound;      // N
    std::optional<int> root_bound;        // M
    std::optional<std::uint64_t> max_steps;
    Strategy strategy = Strategy::first_match;
    bool record_trace = true;
};

/// True iff every connected component of the left-hand side contains a node
/// with rootedness true. Such rules can be matched starting from host roots.
bool is_fast(const Rule& r);

bool is_fast_system(const std::vector<Rule>& rules);

struct BoundsReport {
    bool degree_ok = false;
    bool roots_ok = false;
};

/// Static per-rule check: the rule cannot raise the degree of a preserved
/// node or push a created node above the bound, and cannot increase the
/// number of roots. A system has these properties iff every rule does.
BoundsReport preserves_bounds(const Rule& r, const EngineConfig& cfg);

/// Mutable host representation with per-node incidence lists and a registry
/// of root node ids, so root lookup and degree queries are cheap. A reduction
/// run owns its host exclusively.
class HostGraph {
public:
    explicit HostGraph(const Graph& g);

    Graph to_graph() const;

    std::size_t node_count() const { return live_nodes_; }
    std::size_t edge_count() const { return live_edges_; }
    int root_count() const { return static_cast<int>(roots_.size()); }

    // items (nodes + edges) examined by matching since construction
    std::uint64_t visited_items() const { return visited_; }
    void reset_visited() { visited_ = 0; }

private:
    friend struct EngineDetail;

    struct NodeRec {
        Id id;
        std::uint16_t label;
        std::int8_t rooted;  // 0, 1, or -1 for undefined
        bool alive = false;
        std::vector<std::int32_t> in_edges;   // slots
        std::vector<std::int32_t> out_edges;  // slots
    };
    struct EdgeRec {
        Id id;
        std::int32_t src, tgt;  // slots
        std::uint16_t label;
        bool alive = false;
    };

    LabelAlphabet alphabet_;
    std::vector<NodeRec> nodes_;
    std::vector<EdgeRec> edges_;
    std::unordered_map<Id, std::int32_t> node_slot_;
    std::unordered_map<Id, std::int32_t> edge_slot_;
    std::set<std::int32_t> roots_;  // slots, ascending == ascending id
    std::vector<Symbol> symbols_;
    std::unordered_map<Symbol, std::uint16_t> symbol_idx_;
    std::size_t live_nodes_ = 0, live_edges_ = 0;
    Id next_node_id_ = 0, next_edge_id_ = 0;
    std::uint64_t visited_ = 0;

    std::uint16_t intern(const Symbol& s);
    std::int32_t add_node_slot(Id id, std::uint16_t label, std::int8_t rooted);
    std::int32_t add_edge_slot(Id id, std::int32_t src, std::int32_t tgt, std::uint16_t label);
    void remove_edge_slot(std::int32_t e);
    void remove_node_slot(std::int32_t v);
};

/// Matches of a fast rule found by anchoring each component's root at a host
/// root and growing outward along incident edges; the host's node set is
/// never scanned. Returned matches already satisfy the dangling condition.
/// Order: anchor roots ascending, then extension edges ascending.
std::vector<Morphism> rooted_matches(const Rule& r, HostGraph& host);

/// Convenience overload; builds the indexed host first (linear in |g|).
std::vector<Morphism> rooted_matches(const Rule& r, const Graph& g);

/// One step of a reduction trace; ids only, no graph snapshots.
struct TraceStep {
    int rule_index;
    Morphism match;
    std::vector<Id> deleted_nodes, deleted_edges;
    std::vector<Id> created_nodes, created_edges;
    std::size_t node_count_after = 0;  // of the host
    int root_count_after = 0;
};

struct ReduceResult {
    Graph normal_form;
    std::vector<TraceStep> steps;  // populated when cfg.record_trace
    std::uint64_t step_count = 0;
    bool budget_exhausted = false;
    bool fast_system = false;  // complexity guarantees void when false
    std::uint64_t visited_items = 0;
};

struct StepBudgetExceeded : Error {
    explicit StepBudgetExceeded(ReduceResult partial_result)
        : Error("step budget exceeded"), partial(std::move(partial_result)) {}
    ReduceResult partial;
};

using StepObserver = std::function<void(const Graph&, const TraceStep&)>;

/// Repeatedly applies the first available match (rules in declared order,
/// anchors ascending, extensions ascending) until no rule applies. Fast
/// systems are matched from the root registry; others fall back to general
/// matching. Throws StepBudgetExceeded when cfg.max_steps runs out.
ReduceResult reduce(const std::vector<Rule>& rules, const Graph& g,
                    const EngineConfig& cfg, const StepObserver& observer = {});

/// Backtracking search over derivation choices; one canonical trace per
/// normal form up to isomorphism.
std::vector<ReduceResult> reduce_all(const std::vector<Rule>& rules, const Graph& g,
                                     const EngineConfig& cfg);

struct RecognitionResult {
    bool accepted = false;
    std::size_t steps = 0;
    Strategy strategy = Strategy::first_match;
    Graph normal_form;
};

/// Reduces g and tests the normal form against the accept graph. Sound under
/// first_match only for systems confluent (up to garbage) on the input class.
RecognitionResult recognize(const std::vector<Rule>& rules, const Graph& g,
                            const Graph& accept, const EngineConfig& cfg);

} // namespace gtx
