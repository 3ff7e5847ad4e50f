#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gallai_lab/coloring.hpp"
#include "gallai_lab/witness.hpp"

namespace gallai_lab {

/// Vertex partition of a Gallai coloring where every pair of parts is joined in a
/// single color and at most two colors occur between parts.
struct GallaiPartition {
  std::vector<VertexSubset> parts;
  std::vector<Color> between_colors;  // sorted, at most 2
  /// part_pair_color[i][j] for i != j; diagonal entries are 0.
  std::vector<std::vector<Color>> part_pair_color;

  int part_count() const { return static_cast<int>(parts.size()); }

  /// Builds the pair-color table and between-color set from the host coloring.
  /// Does not validate; pair colors are read off the lowest vertices of each part.
  static GallaiPartition from_parts(const ColoredCompleteGraph& g, std::vector<VertexSubset> parts);

  friend bool operator==(const GallaiPartition&, const GallaiPartition&) = default;
};

struct PartitionReport {
  bool valid = true;
  std::string reason;
  /// First offending edge, when the failure is about an edge.
  std::optional<std::pair<int, int>> edge;

  explicit operator bool() const { return valid; }
};

PartitionReport validate_partition(const ColoredCompleteGraph& g, const GallaiPartition& p);

/// Gallai partition of a rainbow-triangle-free coloring with n >= 2.
///
/// For each candidate between-color set (single colors, then pairs), components of
/// the remaining colors are contracted and blocks joined by mixed colors are merged,
/// giving the finest partition compatible with that candidate. With `coarsest`,
/// parts whose colors to every other part agree are merged while more than two
/// parts remain. The candidate with the fewest parts wins; ties go to the earlier
/// candidate. Parts are ordered by decreasing size, then by minimum vertex.
///
/// Throws NotGallaiError when g has a rainbow triangle.
GallaiPartition gallai_partition(const ColoredCompleteGraph& g, bool coarsest = true);

class NotGallaiError : public Error {
 public:
  explicit NotGallaiError(Witness w)
      : Error(ErrorCode::NotGallai, "coloring has a rainbow triangle"), witness_(std::move(w)) {}
  const Witness& witness() const { return witness_; }

 private:
  Witness witness_;
};

/// The colored K_t on one vertex per part. Throws InvalidPartition.
ColoredCompleteGraph reduced_graph(const ColoredCompleteGraph& g, const GallaiPartition& p);

/// Induced colorings of each part, in partition order.
std::vector<ColoredCompleteGraph> part_colorings(const ColoredCompleteGraph& g,
                                                 const GallaiPartition& p);

/// Recolors every edge inside each B_i whose color is outside 1..k-1 to color k.
///
/// Hypotheses (checked, HypothesisViolated otherwise): A and B_1..B_{k-1} partition
/// the vertices; edges between A and B_i have color i; edges inside A use 1..k;
/// edges between B_i and B_j use color i or j; |B_i| <= m - 1.
ColoredCompleteGraph recolor_small_parts(const ColoredCompleteGraph& g, const VertexSubset& a,
                                         const std::vector<VertexSubset>& bs, int k, int m);

/// Monochromatic C_{2l+1} in the single between-part color, built by running the
/// Dirac construction on the first 2l+1 vertices. Requires n >= 2l+1, one between
/// color and every part of order <= l.
Witness between_parts_cycle(const ColoredCompleteGraph& g, const GallaiPartition& p, int ell);

}  // namespace gallai_lab
