#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gallai_lab/error.hpp"

namespace gallai_lab {

/// Color ids are 1-based; 0 means "absent" and never appears in a valid graph.
using Color = int;

/// Single-word vertex set. Bit v is vertex v.
using Mask = std::uint64_t;

inline constexpr int kMaxVertices = 64;
inline constexpr int kMaxColors = 255;

inline constexpr Mask bit(int v) { return Mask{1} << v; }
inline constexpr Mask low_mask(int n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }

/// Calls fn(v) for every set bit of m in increasing order.
template <typename Fn>
inline void for_each_bit(Mask m, Fn&& fn) {
  while (m) {
    int v = __builtin_ctzll(m);
    m &= m - 1;
    fn(v);
  }
}

inline int popcount(Mask m) { return __builtin_popcountll(m); }

/// Set of vertices of a host graph of order `universe()`.
class VertexSubset {
 public:
  VertexSubset() = default;
  VertexSubset(int universe, Mask members);
  VertexSubset(int universe, std::span<const int> members);

  static VertexSubset all(int universe) { return {universe, low_mask(universe)}; }

  int universe() const { return universe_; }
  Mask mask() const { return mask_; }
  int size() const { return popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(int v) const { return v >= 0 && v < universe_ && (mask_ & bit(v)); }
  std::vector<int> members() const;

  friend bool operator==(const VertexSubset&, const VertexSubset&) = default;

 private:
  int universe_ = 0;
  Mask mask_ = 0;
};

/// Simple undirected graph on at most 64 vertices, stored as adjacency rows.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n);

  int order() const { return n_; }
  Mask neighbors(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const { return adj_[u] & bit(v); }
  int degree(int v) const { return popcount(adj_[v]); }
  int edge_count() const;
  int min_degree() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  /// Subgraph induced on `keep`, relabelled to 0..|keep|-1 in increasing order.
  SimpleGraph induced(Mask keep) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Mask> adj_;
};

/// Edge coloring of K_n with palette 1..palette().
///
/// The authoritative store is the upper triangle; per-color adjacency rows are
/// derived once at construction. Instances are immutable and safe to share.
class ColoredCompleteGraph {
 public:
  using PairMap = std::map<std::pair<int, int>, Color>;

  ColoredCompleteGraph() = default;

  /// Builds from a map keyed by unordered pairs (either orientation accepted).
  /// Throws MissingPair / ColorOutOfRange / SizeLimitExceeded.
  static ColoredCompleteGraph build(int n, int palette, const PairMap& colors);

  /// Builds from a callback color(u, v) evaluated for u < v.
  static ColoredCompleteGraph from_function(int n, int palette,
                                            const std::function<Color(int, int)>& color);

  /// Every edge in one color.
  static ColoredCompleteGraph monochromatic(int n, int palette, Color color);

  int order() const { return n_; }
  int palette() const { return palette_; }

  Color color(int u, int v) const;
  Mask neighbors(Color c, int v) const { return adj_[index(c, v)]; }
  int degree(Color c, int v) const { return popcount(neighbors(c, v)); }

  /// The color-c class as a simple graph on the same vertex set.
  SimpleGraph color_class(Color c) const;

  /// Sorted distinct colors that occur on at least one edge.
  std::vector<Color> colors_used() const;

  /// Same edges, larger palette. Throws ColorOutOfRange when shrinking below a used color.
  ColoredCompleteGraph with_palette(int palette) const;

  /// Raw upper triangle in text-format row order: (0,1), (0,2), (1,2), (0,3), ...
  std::span<const std::uint8_t> row_major_colors() const { return tri_; }

  friend bool operator==(const ColoredCompleteGraph& a, const ColoredCompleteGraph& b) {
    return a.n_ == b.n_ && a.palette_ == b.palette_ && a.tri_ == b.tri_;
  }

 private:
  ColoredCompleteGraph(int n, int palette, std::vector<std::uint8_t> tri);
  static std::size_t pair_index(int u, int v);  // requires u < v
  std::size_t index(Color c, int v) const {
    return static_cast<std::size_t>(c - 1) * static_cast<std::size_t>(n_) + v;
  }

  int n_ = 0;
  int palette_ = 0;
  std::vector<std::uint8_t> tri_;
  std::vector<Mask> adj_;
};

/// Induced sub-coloring on `keep`; relabelling preserves vertex order.
ColoredCompleteGraph induced(const ColoredCompleteGraph& g, const VertexSubset& keep);

/// Blow-up: vertex i of `base` is replaced by parts[i]; edges between copies i and j
/// take base.color(i, j). Result palette is the max of all palettes.
ColoredCompleteGraph substitute(const ColoredCompleteGraph& base,
                                std::span<const ColoredCompleteGraph> parts);

// Text interchange format.
//
//   n k
//   c(0,1)
//   c(0,2) c(1,2)
//   ...
//
// Lines starting with '#' are comments. A trailing newline is required.
std::string serialize(const ColoredCompleteGraph& g,
                      std::span<const std::string> comment_lines = {});
ColoredCompleteGraph parse(const std::string& text);

/// Parsed file plus the payloads of its "# recipe:" comment lines, in order.
struct ParsedColoring {
  ColoredCompleteGraph graph;
  std::vector<std::string> recipe_lines;
};
ParsedColoring parse_with_comments(const std::string& text);

ColoredCompleteGraph read_coloring_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace gallai_lab
