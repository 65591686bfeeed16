#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtx/rule.hpp"

namespace gtx {

/// A named rule set together with its alphabet, an optional accept graph for
/// recognition, and a note describing the inputs it expects.
struct NamedSystem {
    std::string name;
    LabelAlphabet alphabet;
    std::vector<Rule> rules;
    std::optional<Graph> accept;
    std::string input_contract;
};

// Node label symbols used by the built-in systems.
inline const Symbol kBox = "box";
inline const Symbol kTri = "tri";
inline const Symbol kPlain = "plain";  // the unique edge symbol of the tree systems

/// Root-anchored tree reduction: push the root down, prune rooted leaves.
/// Reduces exactly the single-rooted trees to the one-node accept graph.
NamedSystem tree_system();

/// Full binary tree recognition; prunes two-leaf cherries.
NamedSystem fbt_system();

/// Grammar generating all box-labelled trees by adding leaves; invert it to
/// recognise trees the slow way.
NamedSystem tree_grammar();

/// Extended flow diagram grammar (statements, decisions and junction nodes);
/// invert it for recognition by reduction.
NamedSystem efd_grammar();

Graph efd_start_graph();

NamedSystem invert_system(const NamedSystem& s, const std::string& new_name);

std::optional<NamedSystem> builtin_system(const std::string& name);
std::vector<std::string> builtin_system_names();

enum class Family { linked_list, binary_tree, perfect_binary_tree, grid, star, cycle };

std::optional<Family> family_from_string(const std::string& s);
std::string to_string(Family f);

struct RootPlacement {
    enum Kind { none, first, node } kind = none;
    Id id = 0;
};

/// Members of the benchmark graph families over the tree alphabet, all
/// box-labelled, with at most one root placed as requested. perfect_binary_tree
/// rounds the requested size down to 2^d - 1; binary_tree draws a random
/// shape from the seed. Sizes must be >= 1 (BadSize otherwise).
Graph generate(Family family, std::int64_t size, RootPlacement root = {},
               std::uint64_t seed = 0, std::int64_t size2 = -1);

/// Structural spoilers covering the four ways a graph fails to be a tree:
/// parallel edges, cycles (reverse a non-root edge), in-degree two, and
/// disconnection.
enum class Mutation { add_parallel_edge, reverse_edge, add_cross_edge, delete_edge };

std::optional<Mutation> mutation_from_string(const std::string& s);

/// Applies the mutation when the graph has room for it (returns nullopt for
/// e.g. a one-node graph). The result is guaranteed not to be a tree.
std::optional<Graph> mutate(const Graph& g, Mutation kind, std::uint64_t seed = 0);

// Structural oracles, independent of the rewriting machinery.
bool oracle_is_tree(const Graph& g);
bool oracle_is_fbt(const Graph& g);
bool oracle_cycles_have_t(const Graph& g);

/// Shape of a graph: every node unrooted and box-labelled, edges relabelled
/// to the tree alphabet's edge symbol. Idempotent.
Graph strip(const Graph& g);

} // namespace gtx
