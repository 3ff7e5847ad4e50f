#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gallai_lab/coloring.hpp"

namespace gallai_lab {

enum class WitnessKind { RainbowTriangle, MonoCycle, MonoPath, HamiltonCycle };

std::string_view to_string(WitnessKind kind);
WitnessKind witness_kind_from_string(std::string_view name);

/// Certificate for a found substructure. `color` is empty for RainbowTriangle and
/// HamiltonCycle.
struct Witness {
  WitnessKind kind = WitnessKind::MonoPath;
  std::vector<int> vertices;
  std::optional<Color> color;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Rotates a cycle to start at its minimum vertex, then picks the orientation whose
/// second vertex is smaller.
std::vector<int> canonical_cycle(std::vector<int> cycle);

/// Returns the lexicographically smaller of the path and its reverse.
std::vector<int> canonical_path(std::vector<int> path);

struct WitnessCheck {
  bool valid = true;
  std::string reason;

  explicit operator bool() const { return valid; }
};

/// Recomputes every edge color named by `w` against the host coloring.
WitnessCheck validate_witness(const ColoredCompleteGraph& g, const Witness& w);

/// HamiltonCycle witnesses are checked against a simple host graph instead.
WitnessCheck validate_witness(const SimpleGraph& h, const Witness& w);

}  // namespace gallai_lab
