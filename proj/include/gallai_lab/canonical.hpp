#pragma once

#include <string>
#include <vector>

#include "gallai_lab/coloring.hpp"

namespace gallai_lab {

/// Largest order the canonical labeller accepts. Exhaustive search stays far below.
inline constexpr int kMaxCanonicalOrder = 16;

/// Row-major upper-triangle colors as bytes, one per pair: (0,1), (0,2), (1,2), ...
std::string coloring_key(const ColoredCompleteGraph& g);
ColoredCompleteGraph coloring_from_key(int n, int palette, const std::string& key);

struct CanonicalForm {
  /// Lexicographically least key over the relabelings explored; equal for
  /// isomorphic colorings (vertex permutations only, colors fixed).
  std::string key;
  /// order[i] is the original vertex placed at position i.
  std::vector<int> order;
};

/// Canonical labelling by partition refinement plus individualization, with
/// prefix pruning on the row-major key.
CanonicalForm canonical_form(const ColoredCompleteGraph& g);
CanonicalForm canonical_form(int n, const std::string& key);

}  // namespace gallai_lab
