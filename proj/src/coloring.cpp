#include "gallai_lab/coloring.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gallai_lab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingPair: return "MissingPair";
    case ErrorCode::ColorOutOfRange: return "ColorOutOfRange";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DiracPreconditionFailed: return "DiracPreconditionFailed";
    case ErrorCode::DegreePreconditionFailed: return "DegreePreconditionFailed";
    case ErrorCode::NotGallai: return "NotGallai";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::OverLimit: return "OverLimit";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// VertexSubset

VertexSubset::VertexSubset(int universe, Mask members) : universe_(universe), mask_(members) {
  if (universe < 0 || universe > kMaxVertices) {
    throw Error(ErrorCode::SizeLimitExceeded, "vertex universe " + std::to_string(universe) +
                                                  " outside 0.." + std::to_string(kMaxVertices));
  }
  if (members & ~low_mask(universe)) {
    throw Error(ErrorCode::InvalidArgument, "subset member outside universe");
  }
}

VertexSubset::VertexSubset(int universe, std::span<const int> members)
    : VertexSubset(universe, Mask{0}) {
  for (int v : members) {
    if (v < 0 || v >= universe) {
      throw Error(ErrorCode::InvalidArgument,
                  "vertex " + std::to_string(v) + " outside 0.." + std::to_string(universe - 1));
    }
    mask_ |= bit(v);
  }
}

std::vector<int> VertexSubset::members() const {
  std::vector<int> out;
  out.reserve(size());
  for_each_bit(mask_, [&](int v) { out.push_back(v); });
  return out;
}

// ---------------------------------------------------------------------------
// SimpleGraph

SimpleGraph::SimpleGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > kMaxVertices) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "graph order " + std::to_string(n) + " exceeds " + std::to_string(kMaxVertices));
  }
}

int SimpleGraph::edge_count() const {
  int twice = 0;
  for (Mask row : adj_) twice += popcount(row);
  return twice / 2;
}

int SimpleGraph::min_degree() const {
  int best = n_ == 0 ? 0 : n_;
  for (Mask row : adj_) best = std::min(best, popcount(row));
  return best;
}

void SimpleGraph::add_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw Error(ErrorCode::InvalidArgument,
                "bad edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

void SimpleGraph::remove_edge(int u, int v) {
  adj_[u] &= ~bit(v);
  adj_[v] &= ~bit(u);
}

SimpleGraph SimpleGraph::induced(Mask keep) const {
  std::vector<int> ids = VertexSubset(n_, keep).members();
  SimpleGraph h(static_cast<int>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (adjacent(ids[i], ids[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// ColoredCompleteGraph

std::size_t ColoredCompleteGraph::pair_index(int u, int v) {
  return static_cast<std::size_t>(v) * static_cast<std::size_t>(v - 1) / 2 +
         static_cast<std::size_t>(u);
}

namespace {

void check_shape(int n, int palette) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "vertex count must be >= 1");
  if (n > kMaxVertices) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "n = " + std::to_string(n) + " exceeds the " + std::to_string(kMaxVertices) +
                    "-vertex limit");
  }
  if (palette < 1 || palette > kMaxColors) {
    throw Error(ErrorCode::ColorOutOfRange,
                "palette size " + std::to_string(palette) + " outside 1.." +
                    std::to_string(kMaxColors));
  }
}

std::string edge_name(int u, int v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

}  // namespace

ColoredCompleteGraph::ColoredCompleteGraph(int n, int palette, std::vector<std::uint8_t> tri)
    : n_(n), palette_(palette), tri_(std::move(tri)) {
  adj_.assign(static_cast<std::size_t>(palette_) * static_cast<std::size_t>(n_), 0);
  for (int v = 1; v < n_; ++v) {
    for (int u = 0; u < v; ++u) {
      Color c = tri_[pair_index(u, v)];
      adj_[index(c, u)] |= bit(v);
      adj_[index(c, v)] |= bit(u);
    }
  }
}

ColoredCompleteGraph ColoredCompleteGraph::build(int n, int palette, const PairMap& colors) {
  check_shape(n, palette);
  std::vector<std::uint8_t> tri(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  for (const auto& [pair, c] : colors) {
    auto [u, v] = pair;
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n || u == v) {
      throw Error(ErrorCode::InvalidArgument, "pair " + edge_name(pair.first, pair.second) +
                                                  " is not an edge of K_" + std::to_string(n));
    }
    if (c < 1 || c > palette) {
      throw Error(ErrorCode::ColorOutOfRange, "edge " + edge_name(u, v) + " has color " +
                                                  std::to_string(c) + " outside 1.." +
                                                  std::to_string(palette));
    }
    tri[pair_index(u, v)] = static_cast<std::uint8_t>(c);
  }
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (tri[pair_index(u, v)] == 0) {
        throw Error(ErrorCode::MissingPair, "no color given for edge " + edge_name(u, v));
      }
    }
  }
  return ColoredCompleteGraph(n, palette, std::move(tri));
}

ColoredCompleteGraph ColoredCompleteGraph::from_function(
    int n, int palette, const std::function<Color(int, int)>& color) {
  check_shape(n, palette);
  std::vector<std::uint8_t> tri(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      Color c = color(u, v);
      if (c < 1 || c > palette) {
        throw Error(ErrorCode::ColorOutOfRange, "edge " + edge_name(u, v) + " has color " +
                                                    std::to_string(c) + " outside 1.." +
                                                    std::to_string(palette));
      }
      tri[pair_index(u, v)] = static_cast<std::uint8_t>(c);
    }
  }
  return ColoredCompleteGraph(n, palette, std::move(tri));
}

ColoredCompleteGraph ColoredCompleteGraph::monochromatic(int n, int palette, Color color) {
  return from_function(n, palette, [color](int, int) { return color; });
}

Color ColoredCompleteGraph::color(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw Error(ErrorCode::InvalidArgument, "no edge " + edge_name(u, v));
  }
  if (u > v) std::swap(u, v);
  return tri_[pair_index(u, v)];
}

SimpleGraph ColoredCompleteGraph::color_class(Color c) const {
  SimpleGraph h(n_);
  if (c < 1 || c > palette_) return h;
  for (int v = 0; v < n_; ++v) {
    for_each_bit(neighbors(c, v) & ~low_mask(v + 1), [&](int w) { h.add_edge(v, w); });
  }
  return h;
}

std::vector<Color> ColoredCompleteGraph::colors_used() const {
  std::vector<bool> seen(static_cast<std::size_t>(palette_) + 1, false);
  for (auto c : tri_) seen[c] = true;
  std::vector<Color> out;
  for (Color c = 1; c <= palette_; ++c) {
    if (seen[c]) out.push_back(c);
  }
  return out;
}

ColoredCompleteGraph ColoredCompleteGraph::with_palette(int palette) const {
  check_shape(n_, palette);
  for (auto c : tri_) {
    if (c > palette) {
      throw Error(ErrorCode::ColorOutOfRange, "color " + std::to_string(c) +
                                                  " in use, cannot shrink palette to " +
                                                  std::to_string(palette));
    }
  }
  return ColoredCompleteGraph(n_, palette, tri_);
}

// ---------------------------------------------------------------------------
// Combinators

ColoredCompleteGraph induced(const ColoredCompleteGraph& g, const VertexSubset& keep) {
  if (keep.empty()) throw Error(ErrorCode::EmptySubset, "induced() needs a nonempty subset");
  if (keep.universe() != g.order()) {
    throw Error(ErrorCode::InvalidArgument, "subset universe " + std::to_string(keep.universe()) +
                                                " does not match graph order " +
                                                std::to_string(g.order()));
  }
  std::vector<int> ids = keep.members();
  return ColoredCompleteGraph::from_function(
      static_cast<int>(ids.size()), g.palette(),
      [&](int u, int v) { return g.color(ids[u], ids[v]); });
}

ColoredCompleteGraph substitute(const ColoredCompleteGraph& base,
                                std::span<const ColoredCompleteGraph> parts) {
  if (static_cast<int>(parts.size()) != base.order()) {
    throw Error(ErrorCode::ArityMismatch, "base has " + std::to_string(base.order()) +
                                              " vertices but " + std::to_string(parts.size()) +
                                              " parts were given");
  }
  int total = 0;
  int palette = base.palette();
  for (const auto& p : parts) {
    total += p.order();
    palette = std::max(palette, p.palette());
  }
  if (total > kMaxVertices) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "substitution would have " + std::to_string(total) + " vertices");
  }
  std::vector<int> owner;
  std::vector<int> local;
  owner.reserve(total);
  local.reserve(total);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int v = 0; v < parts[i].order(); ++v) {
      owner.push_back(static_cast<int>(i));
      local.push_back(v);
    }
  }
  return ColoredCompleteGraph::from_function(total, palette, [&](int u, int v) {
    int pu = owner[u];
    int pv = owner[v];
    return pu == pv ? parts[pu].color(local[u], local[v]) : base.color(pu, pv);
  });
}

// ---------------------------------------------------------------------------
// Text format

std::string serialize(const ColoredCompleteGraph& g, std::span<const std::string> comment_lines) {
  std::string out;
  for (const auto& line : comment_lines) {
    out += "# ";
    out += line;
    out += '\n';
  }
  out += std::to_string(g.order()) + " " + std::to_string(g.palette()) + "\n";
  auto tri = g.row_major_colors();
  std::size_t at = 0;
  for (int i = 1; i < g.order(); ++i) {
    for (int j = 0; j < i; ++j) {
      if (j) out += ' ';
      out += std::to_string(tri[at++]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool parse_int(std::string_view token, int& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

ParsedColoring parse_with_comments(const std::string& text) {
  if (text.empty()) throw ParseError(1, "empty input");
  std::vector<std::string_view> lines;
  bool unterminated = false;
  {
    std::string_view rest(text);
    while (!rest.empty()) {
      auto nl = rest.find('\n');
      if (nl == std::string_view::npos) {
        lines.push_back(rest);
        unterminated = true;
        break;
      }
      lines.push_back(rest.substr(0, nl));
      rest.remove_prefix(nl + 1);
    }
  }

  ParsedColoring result;
  static constexpr std::string_view kRecipe = "# recipe:";
  int n = -1;
  int palette = 0;
  int row = 0;  // next expected row index (1-based rows, 0 = header)
  std::vector<std::uint8_t> tri;
  std::vector<std::pair<std::pair<int, int>, Color>> cells;
  int line_no = 0;
  for (auto line : lines) {
    ++line_no;
    if (!line.empty() && line.front() == '#') {
      if (line.substr(0, kRecipe.size()) == kRecipe) {
        auto payload = line.substr(kRecipe.size());
        while (!payload.empty() && payload.front() == ' ') payload.remove_prefix(1);
        result.recipe_lines.emplace_back(payload);
      }
      continue;
    }
    auto tokens = split_ws(line);
    if (n < 0) {
      if (tokens.size() != 2 || !parse_int(tokens[0], n) || !parse_int(tokens[1], palette)) {
        throw ParseError(line_no, "expected header \"n k\"");
      }
      if (n < 1 || n > kMaxVertices) {
        throw ParseError(line_no, "vertex count " + std::to_string(n) + " outside 1.." +
                                      std::to_string(kMaxVertices));
      }
      if (palette < 1 || palette > kMaxColors) {
        throw ParseError(line_no, "palette size " + std::to_string(palette) + " outside 1.." +
                                      std::to_string(kMaxColors));
      }
      row = 1;
      continue;
    }
    if (row >= n) {
      if (tokens.empty()) continue;
      throw ParseError(line_no, "unexpected data after row " + std::to_string(n - 1));
    }
    if (static_cast<int>(tokens.size()) != row) {
      throw ParseError(line_no, "expected " + std::to_string(row) + " entries, got " +
                                    std::to_string(tokens.size()));
    }
    for (int j = 0; j < row; ++j) {
      int c = 0;
      if (!parse_int(tokens[j], c)) {
        throw ParseError(line_no, "entry " + std::to_string(j + 1) + " is not an integer");
      }
      if (c < 1 || c > palette) {
        throw ParseError(line_no, "color " + std::to_string(c) + " outside 1.." +
                                      std::to_string(palette));
      }
      cells.push_back({{j, row}, c});
    }
    ++row;
  }
  if (n < 0) throw ParseError(line_no + 1, "expected header \"n k\"");
  if (row < n) {
    throw ParseError(line_no + 1, "expected " + std::to_string(row) + " entries, got 0");
  }
  if (unterminated) {
    throw ParseError(static_cast<int>(lines.size()), "missing trailing newline");
  }
  ColoredCompleteGraph::PairMap map(cells.begin(), cells.end());
  result.graph = ColoredCompleteGraph::build(n, palette, map);
  return result;
}

ColoredCompleteGraph parse(const std::string& text) { return parse_with_comments(text).graph; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

ColoredCompleteGraph read_coloring_file(const std::string& path) {
  return parse(read_text_file(path));
}

}  // namespace gallai_lab
