#include "gallai_lab/constructions.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include <json.hpp>

#include "gallai_lab/detectors.hpp"

namespace gallai_lab {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(RecipeKind kind) {
  switch (kind) {
    case RecipeKind::OddCycleExtremal: return "OddCycleExtremal";
    case RecipeKind::RamseyCycleLower: return "RamseyCycleLower";
    case RecipeKind::RandomSubstitution: return "RandomSubstitution";
  }
  return "Unknown";
}

namespace {

RecipeKind recipe_kind_from_string(const std::string& name) {
  for (auto kind : {RecipeKind::OddCycleExtremal, RecipeKind::RamseyCycleLower,
                    RecipeKind::RandomSubstitution}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown recipe kind \"" + name + "\"");
}

ExpectedProperty no_rainbow() { return {ExpectedProperty::Structure::NoRainbowTriangle, 0, {}}; }

ExpectedProperty no_cycle(int length, std::vector<Color> colors) {
  return {ExpectedProperty::Structure::NoMonoCycle, length, std::move(colors)};
}

std::vector<Color> palette_range(int k) {
  std::vector<Color> out(static_cast<std::size_t>(k));
  std::iota(out.begin(), out.end(), 1);
  return out;
}

// Portable bounded draw: std::mt19937_64 output is fully specified, the standard
// distributions are not.
class SeededDraw {
 public:
  explicit SeededDraw(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

ColoredCompleteGraph random_gallai_rec(int n, int k, SeededDraw& draw) {
  if (n == 1) return ColoredCompleteGraph::monochromatic(1, k, 1);
  if (k == 1) return ColoredCompleteGraph::monochromatic(n, k, 1);

  const int t = draw.uniform(2, std::min(4, n));
  std::vector<int> cuts;
  while (static_cast<int>(cuts.size()) < t - 1) {
    int c = draw.uniform(1, n - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);

  const Color a = draw.uniform(1, k);
  const Color b = draw.uniform(1, k);
  std::vector<Color> base_colors;
  for (int v = 1; v < t; ++v) {
    for (int u = 0; u < v; ++u) base_colors.push_back(draw.uniform(0, 1) ? b : a);
  }
  std::size_t at = 0;
  auto base = ColoredCompleteGraph::from_function(t, k, [&](int, int) { return base_colors[at++]; });

  std::vector<ColoredCompleteGraph> parts;
  int prev = 0;
  for (int c : cuts) {
    parts.push_back(random_gallai_rec(c - prev, k, draw));
    prev = c;
  }
  return substitute(base, parts);
}

}  // namespace

std::string ConstructionRecipe::to_json() const {
  ordered_json j;
  j["kind"] = std::string(to_string(kind));
  ordered_json params = ordered_json::object();
  for (const auto& [name, value] : parameters) params[name] = value;
  j["parameters"] = params;
  j["expected_order"] = expected_order;
  ordered_json props = ordered_json::array();
  for (const auto& p : expected_properties) {
    ordered_json e;
    if (p.structure == ExpectedProperty::Structure::NoRainbowTriangle) {
      e["structure"] = "no_rainbow_triangle";
    } else {
      e["structure"] = "no_mono_cycle";
      e["length"] = p.cycle_length;
      e["colors"] = p.colors;
    }
    props.push_back(e);
  }
  j["expected_properties"] = props;
  return j.dump();
}

ConstructionRecipe ConstructionRecipe::from_json(const std::string& text) {
  ConstructionRecipe r;
  try {
    auto j = ordered_json::parse(text);
    r.kind = recipe_kind_from_string(j.at("kind").get<std::string>());
    for (const auto& [name, value] : j.at("parameters").items()) {
      r.parameters.emplace_back(name, value.get<std::int64_t>());
    }
    r.expected_order = j.at("expected_order").get<int>();
    for (const auto& e : j.at("expected_properties")) {
      const auto s = e.at("structure").get<std::string>();
      if (s == "no_rainbow_triangle") {
        r.expected_properties.push_back(no_rainbow());
      } else if (s == "no_mono_cycle") {
        r.expected_properties.push_back(
            no_cycle(e.at("length").get<int>(), e.at("colors").get<std::vector<Color>>()));
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown recipe property \"" + s + "\"");
      }
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("bad recipe JSON: ") + ex.what());
  }
  return r;
}

Construction build_extremal_odd(int ell, int k) {
  if (ell < 2 || k < 1) {
    throw Error(ErrorCode::BadParameters, "need l >= 2 and k >= 1");
  }
  if (k > 6 || (static_cast<long>(ell) << k) > kMaxVertices) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "l * 2^k = " + std::to_string(ell) + " * 2^" + std::to_string(k) + " exceeds " +
                    std::to_string(kMaxVertices));
  }
  auto g = ColoredCompleteGraph::monochromatic(2 * ell, k, 1);
  for (Color i = 2; i <= k; ++i) {
    auto join = ColoredCompleteGraph::monochromatic(2, k, i);
    std::vector<ColoredCompleteGraph> halves{g, g};
    g = substitute(join, halves);
  }
  ConstructionRecipe recipe;
  recipe.kind = RecipeKind::OddCycleExtremal;
  recipe.parameters = {{"ell", ell}, {"k", k}};
  recipe.expected_order = ell << k;
  recipe.expected_properties = {no_rainbow(), no_cycle(2 * ell + 1, palette_range(k))};
  return {std::move(g), std::move(recipe)};
}

Construction build_ramsey_cycle_lower(int m, int n) {
  if (m % 2 == 0 || m < 5 || m > n) {
    throw Error(ErrorCode::BadParameters,
                "need odd m with 5 <= m <= n, got m = " + std::to_string(m) +
                    ", n = " + std::to_string(n));
  }
  if (2 * n - 2 > kMaxVertices) {
    throw Error(ErrorCode::BadParameters,
                "2n - 2 = " + std::to_string(2 * n - 2) + " exceeds " + std::to_string(kMaxVertices));
  }
  auto blue = ColoredCompleteGraph::monochromatic(n - 1, 2, 2);
  auto red_join = ColoredCompleteGraph::monochromatic(2, 2, 1);
  std::vector<ColoredCompleteGraph> halves{blue, blue};
  ConstructionRecipe recipe;
  recipe.kind = RecipeKind::RamseyCycleLower;
  recipe.parameters = {{"m", m}, {"n", n}};
  recipe.expected_order = 2 * n - 2;
  recipe.expected_properties = {no_cycle(m, {1}), no_cycle(n, {2})};
  return {substitute(red_join, halves), std::move(recipe)};
}

ColoredCompleteGraph random_gallai(int n, int k, std::uint64_t seed) {
  if (n < 1 || n > kMaxVertices) {
    throw Error(ErrorCode::SizeLimitExceeded, "n must lie in 1.." + std::to_string(kMaxVertices));
  }
  if (k < 1 || k > kMaxColors) {
    throw Error(ErrorCode::ColorOutOfRange, "k must lie in 1.." + std::to_string(kMaxColors));
  }
  SeededDraw draw(seed);
  return random_gallai_rec(n, k, draw);
}

std::pair<int, int> even_cycle_bounds(int n, int k) {
  return {(n - 1) * k + n + 1, (n - 1) * k + 3 * n};
}

std::optional<int> ramsey_formula(int m, int n) {
  if (m % 2 == 1 && 3 <= m && m <= n && !(m == 3 && n == 3)) return 2 * n - 1;
  if (m % 2 == 0 && n % 2 == 0 && 4 <= m && m <= n && !(m == 4 && n == 4)) return n - 1 + m / 2;
  if (m % 2 == 0 && n % 2 == 1 && 4 <= m && m < n) return std::max(n - 1 + m / 2, 2 * m - 1);
  return std::nullopt;
}

std::string check_recipe(const ColoredCompleteGraph& g, const ConstructionRecipe& recipe) {
  if (g.order() != recipe.expected_order) {
    return "order " + std::to_string(g.order()) + " != expected " +
           std::to_string(recipe.expected_order);
  }
  for (const auto& p : recipe.expected_properties) {
    if (p.structure == ExpectedProperty::Structure::NoRainbowTriangle) {
      if (find_rainbow_triangle(g)) return "rainbow triangle present";
      continue;
    }
    for (Color c : p.colors) {
      if (find_mono_cycle(g, c, p.cycle_length)) {
        return "monochromatic C_" + std::to_string(p.cycle_length) + " in color " +
               std::to_string(c);
      }
    }
  }
  return {};
}

}  // namespace gallai_lab
