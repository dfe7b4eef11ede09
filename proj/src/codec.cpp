#include "irreg/codec.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "irreg/errors.hpp"

namespace irreg {
namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool parse_int(std::string_view tok, std::int64_t& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && p == tok.data() + tok.size();
}

Graph read_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::int64_t declared_n = -1;
  std::int64_t max_id = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    const std::size_t line_offset = pos;
    pos = nl + 1;
    ++line_no;

    auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      auto comment = trim(line.substr(hash + 1));
      if (comment.size() > 2 && comment.substr(0, 2) == "n ") {
        std::int64_t n = 0;
        if (!parse_int(trim(comment.substr(2)), n) || n < 0) {
          throw ParseError(fmt::format("line {}: bad vertex count directive", line_no),
                           line_no, line_offset);
        }
        declared_n = n;
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    auto sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos) {
      throw ParseError(fmt::format("line {}: expected two vertex ids", line_no), line_no,
                       line_offset);
    }
    std::int64_t a = 0, b = 0;
    if (!parse_int(line.substr(0, sep), a) || !parse_int(trim(line.substr(sep)), b) ||
        a < 0 || b < 0 || a > INT32_MAX - 1 || b > INT32_MAX - 1) {
      throw ParseError(fmt::format("line {}: malformed edge '{}'", line_no, line),
                       line_no, line_offset);
    }
    max_id = std::max({max_id, a, b});
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  std::int64_t n = declared_n >= 0 ? declared_n : max_id + 1;
  if (max_id >= n) {
    throw ParseError(fmt::format("vertex {} exceeds declared count {}", max_id, n), 0, 0);
  }
  try {
    return Graph::from_edges(static_cast<Vertex>(n), std::move(edges));
  } catch (const ParameterError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

std::string write_edge_list(const Graph& g) {
  std::string out = fmt::format("# n {}\n", g.order());
  out.reserve(out.size() + g.size() * 12);
  for (const auto& e : g.edges()) fmt::format_to(std::back_inserter(out), "{} {}\n", e.u, e.v);
  return out;
}

constexpr std::string_view kGraph6Header = ">>graph6<<";

Graph read_graph6(std::string_view text) {
  std::string_view s = trim(text);
  std::size_t base = 0;
  if (s.substr(0, kGraph6Header.size()) == kGraph6Header) {
    s.remove_prefix(kGraph6Header.size());
    base = kGraph6Header.size();
  }
  auto at = [&](std::size_t i) -> int {
    if (i >= s.size()) {
      throw ParseError(fmt::format("graph6: truncated at offset {}", base + i), 1, base + i);
    }
    int c = static_cast<unsigned char>(s[i]);
    if (c < 63 || c > 126) {
      throw ParseError(fmt::format("graph6: invalid byte {} at offset {}", c, base + i), 1,
                       base + i);
    }
    return c - 63;
  };

  std::int64_t n = 0;
  std::size_t i = 0;
  if (at(0) < 63) {
    n = at(0);
    i = 1;
  } else if (at(1) < 63) {
    for (std::size_t k = 1; k <= 3; ++k) n = (n << 6) | at(k);
    i = 4;
  } else {
    for (std::size_t k = 2; k <= 7; ++k) n = (n << 6) | at(k);
    i = 8;
  }
  if (n > INT32_MAX) throw ParseError("graph6: vertex count too large", 1, base);

  const std::uint64_t bits = static_cast<std::uint64_t>(n) * (n - (n > 0)) / 2;
  const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
  if (s.size() - i != need) {
    throw ParseError(fmt::format("graph6: {} vertices need {} data bytes, found {}", n,
                                 need, s.size() - i),
                     1, base + i);
  }
  std::vector<Edge> edges;
  std::uint64_t k = 0;
  for (Vertex col = 1; col < n; ++col) {
    for (Vertex row = 0; row < col; ++row, ++k) {
      int byte = at(i + k / 6);
      if ((byte >> (5 - k % 6)) & 1) edges.push_back({row, col});
    }
  }
  return Graph::from_edges(static_cast<Vertex>(n), std::move(edges));
}

std::string write_graph6(const Graph& g) {
  std::string out;
  const std::int64_t n = g.order();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int sh = 12; sh >= 0; sh -= 6) out.push_back(static_cast<char>(((n >> sh) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int sh = 30; sh >= 0; sh -= 6) out.push_back(static_cast<char>(((n >> sh) & 63) + 63));
  }
  const std::uint64_t bits = static_cast<std::uint64_t>(n) * (n - (n > 0)) / 2;
  std::vector<unsigned char> data((bits + 5) / 6, 0);
  for (const auto& e : g.edges()) {
    // bit index of (row=u, col=v) in column-major upper triangle
    std::uint64_t k = static_cast<std::uint64_t>(e.v) * (e.v - 1) / 2 + e.u;
    data[k / 6] |= static_cast<unsigned char>(1u << (5 - k % 6));
  }
  for (auto b : data) out.push_back(static_cast<char>(b + 63));
  out.push_back('\n');
  return out;
}

}  // namespace

Graph read_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::Graph6 ? read_graph6(text) : read_edge_list(text);
}

std::string write_graph(const Graph& g, GraphFormat format) {
  return format == GraphFormat::Graph6 ? write_graph6(g) : write_edge_list(g);
}

GraphFormat format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  return (ext == ".g6" || ext == ".graph6") ? GraphFormat::Graph6 : GraphFormat::EdgeList;
}

std::optional<GraphFormat> parse_format(std::string_view name) {
  if (name == "edge-list" || name == "edgelist") return GraphFormat::EdgeList;
  if (name == "graph6" || name == "g6") return GraphFormat::Graph6;
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InputError(fmt::format("write to '{}' failed", path.string()));
}

Graph load_graph(const std::filesystem::path& path, std::optional<GraphFormat> format) {
  return read_graph(read_file(path), format.value_or(format_from_path(path)));
}

void save_graph(const Graph& g, const std::filesystem::path& path,
                std::optional<GraphFormat> format) {
  write_file(path, write_graph(g, format.value_or(format_from_path(path))));
}

}  // namespace irreg
