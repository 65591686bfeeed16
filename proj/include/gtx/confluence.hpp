#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gtx/rule.hpp"

namespace gtx {

/// (g1(L1) n g2(L2)) subset of (g1(K1) n g2(K2)) for two steps off the same
/// host. Throws HostMismatch when the hosts differ.
bool parallelly_independent(const DerivationStep& s1, const DerivationStep& s2);

/// (h1(R1) n g2(L2)) subset of (h1(K1) n g2(K2)) for consecutive steps.
/// Throws HostMismatch when s2's host is not s1's result.
bool sequentially_independent(const DerivationStep& s1, const DerivationStep& s2);

enum class Verdict { strongly_joinable, joinable_not_strong, not_joinable, unknown };

std::string to_string(Verdict v);

/// A minimal conflicting overlap of two rule applications. The overlap is
/// exactly the union of the two match images; steps are not parallelly
/// independent, and same-rule pairs have distinct matches.
struct CriticalPair {
    Graph overlap;
    DerivationStep left_step;
    DerivationStep right_step;
    std::vector<Id> persistent;  // overlap nodes deleted by neither step
    Verdict verdict = Verdict::unknown;
};

/// Membership test for the subgraph closure of a designated input language.
/// The test must be isomorphism-invariant; that is sampled, not proven.
struct GarbagePredicate {
    std::string name;
    std::function<bool(const Graph&)> member;
};

GarbagePredicate accept_all_predicate();
GarbagePredicate forest_predicate();           // forests with at most one root
GarbagePredicate cycles_have_t_predicate();    // every directed cycle has a t edge
GarbagePredicate max_roots_predicate(int k);
GarbagePredicate conjunction(GarbagePredicate a, GarbagePredicate b);
std::optional<GarbagePredicate> builtin_predicate(const std::string& name);

/// One representative per isomorphism class of critical pairs, deterministic
/// order. Rooted or relabelling systems are analysed through their encoding
/// as totally labelled systems and the reported pairs decoded back.
std::vector<CriticalPair> enumerate_critical_pairs(const std::vector<Rule>& rules);

/// Keeps the pairs whose overlap the predicate accepts.
std::vector<CriticalPair> filter_non_garbage(const std::vector<CriticalPair>& pairs,
                                             const GarbagePredicate& p);

/// Joint successor search up to the given depth, deduplicated up to
/// isomorphism. strongly_joinable needs a common graph in which the composed
/// tracks agree on every persistent node; not_joinable is only claimed when
/// both sides were exhausted below the depth bound.
Verdict check_joinability(const CriticalPair& pair, const std::vector<Rule>& rules,
                          int depth);

/// As check_joinability, but when a join was found the result carries the
/// two derivation sequences (indices into `rules` plus matches) so the
/// verdict can be replayed and re-checked independently.
struct JoinabilityWitness {
    Verdict verdict = Verdict::unknown;
    std::vector<std::pair<std::size_t, Morphism>> left_path, right_path;
};

JoinabilityWitness check_joinability_witness(const CriticalPair& pair,
                                             const std::vector<Rule>& rules, int depth);

enum class Conclusion {
    locally_confluent_up_to_garbage,
    non_confluent_witness,
    inconclusive,
};

std::string to_string(Conclusion c);

struct AnalysisReport {
    std::vector<CriticalPair> pairs;      // pairs that survived the filter
    std::vector<JoinabilityWitness> witnesses;  // parallel to pairs
    std::vector<CriticalPair> garbage;    // pairs dropped by the predicate
    Conclusion conclusion = Conclusion::inconclusive;
    bool all_rules_size_reducing = false; // termination evidence
    std::string predicate_name;
    int depth = 0;
    bool encoded = false;  // analysis ran on the encoded system

    int count(Verdict v) const;
    std::string summary_line() const;
};

/// Full pipeline: enumerate, filter by the predicate when given, check
/// joinability of every surviving pair, and conclude.
AnalysisReport analyze(const std::vector<Rule>& rules,
                       const std::optional<GarbagePredicate>& p, int depth);

/// Structured text report: one block per pair, then the conclusion and a
/// machine-readable summary line.
std::string format_report(const AnalysisReport& report, bool full);

} // namespace gtx
