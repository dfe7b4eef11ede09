#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "irreg/graph.hpp"

namespace irreg {

enum class GraphFormat { EdgeList, Graph6 };

/// Edge list: one "u v" pair per line, 0-based, '#' starts a comment. A
/// "# n <count>" comment fixes the vertex count (otherwise max id + 1), which
/// keeps isolated trailing vertices across a round trip.
///
/// graph6: McKay's format, with or without the ">>graph6<<" header; the
/// 1-, 4- and 8-byte size prefixes are all accepted.
Graph read_graph(std::string_view text, GraphFormat format);
std::string write_graph(const Graph& g, GraphFormat format);

/// ".g6" / ".graph6" select graph6, anything else the edge list.
GraphFormat format_from_path(const std::filesystem::path& path);
std::optional<GraphFormat> parse_format(std::string_view name);

Graph load_graph(const std::filesystem::path& path,
                 std::optional<GraphFormat> format = std::nullopt);
void save_graph(const Graph& g, const std::filesystem::path& path,
                std::optional<GraphFormat> format = std::nullopt);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace irreg
