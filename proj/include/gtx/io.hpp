#pragma once

#include <iosfwd>
#include <string>

#include "gtx/rule.hpp"
#include "gtx/systems.hpp"

namespace gtx {

/// Parses the textual graph format:
///
///   alphabet { nodes: a, b; edges: x, y }
///   graph {
///     node 1 [label=a, root=1]
///     node 2 []
///     edge 10: 1 -> 2 [label=x]
///   }
///
/// Omitting label leaves the node unlabelled, omitting root leaves its
/// rootedness undefined. Errors carry line numbers.
Graph parse_graph(const std::string& text);

/// Parses a rule or system file: an alphabet block followed by one or more
///   rule <name> { left {...} interface {...} right {...} }
/// blocks (the three bodies reuse the graph syntax, inclusions by shared id)
/// and an optional accept {...} graph. Rejects non-inclusion interfaces with
/// a diagnostic naming the violating id.
NamedSystem parse_system(const std::string& text);

std::string print_graph(const Graph& g);
std::string print_rule(const Rule& r);
std::string print_system(const NamedSystem& s);

std::string read_file(const std::string& path);

} // namespace gtx
