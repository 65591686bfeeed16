#pragma once

#include <string>
#include <vector>

#include "gtx/graph.hpp"
#include "gtx/morphism.hpp"

namespace gtx {

/// A rule <L <- K -> R> whose interface is included in both sides by id.
/// Left and right are totally labelled and totally rooted; the interface may
/// leave labels and rootedness undefined (that is what permits relabelling).
struct Rule {
    std::string name;
    Graph left;
    Graph interface;
    Graph right;
};

/// Violations of the rule invariants (inclusion morphisms by shared id,
/// totality of the outer graphs). Empty means valid.
std::vector<std::string> validate_rule(const Rule& r);

Rule invert(const Rule& r);

/// Replaces the interface by its discrete skeleton: the interface nodes with
/// no edges, no labels and no rootedness.
Rule normalize(const Rule& r);

bool is_normalized(const Rule& r);

/// Rule isomorphism: isomorphisms f: L1 -> L2 and g: R1 -> R2 that agree on
/// the interface and map K1 onto K2.
bool rule_isomorphic(const Rule& r1, const Rule& r2);

/// max(|L|, |R|)
std::size_t rule_size(const Rule& r);

/// True iff no edge of the host outside the match's edge image is incident
/// to the image of a node deleted by the rule. Throws InvalidMatch if m is
/// not an injective morphism from r.left into host.
bool check_dangling(const Rule& r, const Morphism& m, const Graph& host);

/// One direct derivation G => H together with everything the analyses need.
struct DerivationStep {
    Rule rule;
    Morphism match;  // L -> host
    Graph host;
    Graph intermediate;
    Graph result;
    Morphism comatch;         // R -> result
    std::map<Id, Id> track;   // partial: host node id -> result node id
};

/// Applies the rule at an injective match satisfying the dangling condition.
/// Items of R \ K are added with fresh ids (max existing id + 1 upward, in
/// ascending R-id order), so equal inputs produce field-equal outputs.
DerivationStep apply(const Rule& r, const Morphism& m, const Graph& host);

/// All direct derivations from g, in rule order then match order.
std::vector<DerivationStep> successors(const std::vector<Rule>& rules, const Graph& g);

/// Injective matches of r.left in host that satisfy the dangling condition,
/// sorted lexicographically.
std::vector<Morphism> applicable_matches(const Rule& r, const Graph& host);

} // namespace gtx
