#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "reltutte/graph.hpp"

namespace reltutte {

/// Line format:
///   edge <id> <u> <v> color=<token> [zero] [pointed]
///   vertex <id>
/// '#' starts a comment. Vertices are created implicitly by edges; the
/// vertex line is only needed for isolated vertices.
/// Throws ParseError (message carries source:line:col), DuplicateEdgeId,
/// TwoPointedEdges, PointedZeroConflict.
ColoredMultigraph parse_graph(std::istream& in, std::string_view source = "<input>");
ColoredMultigraph parse_graph_string(std::string_view text, std::string_view source = "<string>");
ColoredMultigraph parse_graph_file(const std::filesystem::path& path);

/// Text form accepted by parse_graph; edges in stored order, isolated
/// vertices after them.
std::string format_graph(const ColoredMultigraph& g);

}  // namespace reltutte
