#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "gtx/graph.hpp"

namespace gtx {

/// A structure-, label- and rootedness-preserving mapping between two graphs.
/// Only the underlying id maps are stored; the graphs are supplied wherever
/// they are needed. Orders lexicographically (node map first).
struct Morphism {
    std::map<Id, Id> node_map;
    std::map<Id, Id> edge_map;

    Id node(Id v) const { return node_map.at(v); }
    Id edge(Id e) const { return edge_map.at(e); }

    auto operator<=>(const Morphism&) const = default;
};

Morphism identity_morphism(const Graph& g);

/// Composition h o g, defined where both maps are.
Morphism compose(const Morphism& g, const Morphism& h);

bool is_morphism(const Graph& src, const Morphism& m, const Graph& tgt);
bool is_injective(const Morphism& m);
bool is_surjective(const Morphism& m, const Graph& tgt);

/// Both label- and root-undefinedness preserving.
bool undefinedness_preserving(const Graph& src, const Morphism& m, const Graph& tgt);

/// All (optionally injective) morphisms src -> tgt, sorted lexicographically
/// by node map, then edge map. Throws AlphabetMismatch if the graphs are over
/// different alphabets.
std::vector<Morphism> find_morphisms(const Graph& src, const Graph& tgt,
                                     bool injective_only);

/// Isomorphism witness (bijective, undefinedness preserving, inverse is a
/// morphism), or nullopt when the graphs are not isomorphic.
std::optional<Morphism> is_isomorphic(const Graph& g, const Graph& h);

/// Visits every isomorphism g -> h until the callback returns true (found
/// what it was looking for). Returns true iff the callback did.
bool for_each_isomorphism(const Graph& g, const Graph& h,
                          const std::function<bool(const Morphism&)>& visit);

/// Iso-invariant fingerprint used to bucket graphs before running the exact
/// isomorphism check. Equal graphs hash equal; collisions are possible.
std::uint64_t iso_hash(const Graph& g);

} // namespace gtx
