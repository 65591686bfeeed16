#pragma once

#include "gtx/rule.hpp"

namespace gtx {

/// Node label carried by every node of an encoded graph, and the edge labels
/// that carry rootedness. Original alphabets must not use these symbols.
inline const Symbol kEncodedNodeLabel = "_";
inline const Symbol kRootLoop1 = "1";
inline const Symbol kRootLoop0 = "0";

/// Alphabet of the encoded world: a single node symbol, and edge symbols for
/// the original edges, the original node labels, and the two rootedness
/// values. Throws AlphabetClash if the original sets overlap or use reserved
/// symbols.
LabelAlphabet encode_alphabet(const LabelAlphabet& a);

/// Totally-labelled encoding: nodes keep their ids and become "_"-labelled
/// and unrooted; each defined node label becomes a loop carrying it, each
/// defined rootedness a 0- or 1-loop. Edge ids: original edge e -> 3e,
/// label loop of node v -> 3v+1, rootedness loop -> 3v+2.
Graph encode_graph(const Graph& g);

Morphism encode_morphism(const Graph& src, const Morphism& m, const Graph& tgt);

Rule encode_rule(const Rule& r);

/// Inverse of encode_graph, driven by the edge id scheme: id = 3e restores
/// edge e, 3v+1 the label of node v, 3v+2 its rootedness. Throws NotInImage
/// (naming the node) when the graph is not an encoding: a node with two
/// label loops, both a 0- and a 1-loop, a non-"_" node label, or an id that
/// does not fit its edge's shape.
Graph decode_graph(const Graph& g);

/// Shape-driven variant for graphs whose ids do not follow the scheme (e.g.
/// glued overlap graphs): the split of encoded edge symbols into node labels
/// and edge labels comes from the supplied original alphabet. Decoded edges
/// are numbered in ascending encoded-id order.
Graph decode_graph(const Graph& g, const LabelAlphabet& original);

/// True when the shape-driven decode would succeed, i.e. the graph lies in
/// the subgraph closure of the encoded world.
bool decodable(const Graph& g, const LabelAlphabet& original);

/// Derivation compatibility: the direct successors of g under r correspond
/// one-to-one (via encode + isomorphism) with the successors of the encoded
/// graph under the encoded rule.
bool verify_compatibility(const Rule& r, const Graph& g);

} // namespace gtx
