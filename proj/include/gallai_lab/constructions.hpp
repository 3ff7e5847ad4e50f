#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gallai_lab/coloring.hpp"

namespace gallai_lab {

enum class RecipeKind { OddCycleExtremal, RamseyCycleLower, RandomSubstitution };

std::string_view to_string(RecipeKind kind);

/// One checkable claim about a generated coloring.
struct ExpectedProperty {
  enum class Structure { NoRainbowTriangle, NoMonoCycle };
  Structure structure = Structure::NoRainbowTriangle;
  int cycle_length = 0;       // NoMonoCycle only
  std::vector<Color> colors;  // NoMonoCycle only; the colors the claim covers

  friend bool operator==(const ExpectedProperty&, const ExpectedProperty&) = default;
};

/// Declarative description of how a coloring was produced.
struct ConstructionRecipe {
  RecipeKind kind = RecipeKind::OddCycleExtremal;
  std::vector<std::pair<std::string, std::int64_t>> parameters;
  int expected_order = 0;
  std::vector<ExpectedProperty> expected_properties;

  std::string to_json() const;
  static ConstructionRecipe from_json(const std::string& text);

  friend bool operator==(const ConstructionRecipe&, const ConstructionRecipe&) = default;
};

struct Construction {
  ColoredCompleteGraph graph;
  ConstructionRecipe recipe;
};

/// Doubling construction: level 1 is a monochromatic K_{2l} in color 1, level i
/// joins two copies of level i-1 completely in color i. Order l * 2^k.
Construction build_extremal_odd(int ell, int k);

/// Two color-2 cliques of order n-1 joined completely in color 1: no color-1 C_m
/// for odd m, no color-2 C_n. Order 2n-2.
Construction build_ramsey_cycle_lower(int m, int n);

/// Rainbow-triangle-free coloring by recursive random substitution into
/// two-colored bases. Deterministic per seed on every platform.
ColoredCompleteGraph random_gallai(int n, int k, std::uint64_t seed);

/// (lower, upper) bounds on gr_k(K_3 : C_{2n}).
std::pair<int, int> even_cycle_bounds(int n, int k);

/// R(C_m, C_n) where the classical cycle formula covers (m, n); nullopt otherwise.
std::optional<int> ramsey_formula(int m, int n);

/// Checks each expected property of the recipe with the detectors. Returns an empty
/// string when everything holds, otherwise a description of the first failure.
std::string check_recipe(const ColoredCompleteGraph& g, const ConstructionRecipe& recipe);

}  // namespace gallai_lab
