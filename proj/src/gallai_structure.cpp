#include "gallai_lab/gallai_structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gallai_lab/detectors.hpp"

namespace gallai_lab {

namespace {

std::string edge_str(int u, int v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

int lowest(Mask m) { return __builtin_ctzll(m); }

void sort_parts(std::vector<Mask>& parts) {
  std::sort(parts.begin(), parts.end(), [](Mask a, Mask b) {
    int sa = popcount(a);
    int sb = popcount(b);
    if (sa != sb) return sa > sb;
    return lowest(a) < lowest(b);
  });
}

/// True when every edge between x and y has the same color.
bool mono_between(const ColoredCompleteGraph& g, Mask x, Mask y) {
  const Color c = g.color(lowest(x), lowest(y));
  bool ok = true;
  for_each_bit(x, [&](int v) { ok = ok && (g.neighbors(c, v) & y) == y; });
  return ok;
}

// Finest partition whose between-part edges all use colors of `allowed` and whose
// part pairs are monochromatic.
std::vector<Mask> finest_blocks(const ColoredCompleteGraph& g, const std::vector<Color>& allowed) {
  const int n = g.order();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (Color c : g.colors_used()) {
    if (std::find(allowed.begin(), allowed.end(), c) != allowed.end()) continue;
    for (int u = 0; u < n; ++u) {
      for_each_bit(g.neighbors(c, u) & ~low_mask(u + 1), [&](int v) { parent[find(v)] = find(u); });
    }
  }
  std::vector<Mask> by_root(n, 0);
  for (int v = 0; v < n; ++v) by_root[find(v)] |= bit(v);
  std::vector<Mask> blocks;
  for (Mask m : by_root) {
    if (m) blocks.push_back(m);
  }

  for (bool merged = true; merged && blocks.size() > 1;) {
    merged = false;
    for (std::size_t i = 0; i < blocks.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < blocks.size() && !merged; ++j) {
        if (!mono_between(g, blocks[i], blocks[j])) {
          blocks[i] |= blocks[j];
          blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }
  return blocks;
}

// Merges parts that see identical colors to every other part, keeping >= 2 parts.
void coarsen(const ColoredCompleteGraph& g, std::vector<Mask>& parts) {
  while (parts.size() > 2) {
    bool merged = false;
    for (std::size_t i = 0; i < parts.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < parts.size() && !merged; ++j) {
        const int ri = lowest(parts[i]);
        const int rj = lowest(parts[j]);
        bool twins = true;
        for (std::size_t z = 0; z < parts.size() && twins; ++z) {
          if (z == i || z == j) continue;
          const int rz = lowest(parts[z]);
          twins = g.color(ri, rz) == g.color(rj, rz);
        }
        if (twins) {
          parts[i] |= parts[j];
          parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
    if (!merged) break;
  }
}

}  // namespace

GallaiPartition GallaiPartition::from_parts(const ColoredCompleteGraph& g,
                                            std::vector<VertexSubset> parts) {
  GallaiPartition p;
  p.parts = std::move(parts);
  const std::size_t t = p.parts.size();
  p.part_pair_color.assign(t, std::vector<Color>(t, 0));
  std::set<Color> between;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      if (p.parts[i].empty() || p.parts[j].empty()) continue;
      Color c = g.color(lowest(p.parts[i].mask()), lowest(p.parts[j].mask()));
      p.part_pair_color[i][j] = p.part_pair_color[j][i] = c;
      between.insert(c);
    }
  }
  p.between_colors.assign(between.begin(), between.end());
  return p;
}

PartitionReport validate_partition(const ColoredCompleteGraph& g, const GallaiPartition& p) {
  const int n = g.order();
  const std::size_t t = p.parts.size();
  auto bad = [](std::string reason, std::optional<std::pair<int, int>> edge = std::nullopt) {
    return PartitionReport{false, std::move(reason), edge};
  };

  Mask covered = 0;
  for (std::size_t i = 0; i < t; ++i) {
    const auto& part = p.parts[i];
    if (part.universe() != n) return bad("part " + std::to_string(i) + " has wrong universe");
    if (part.empty()) return bad("part " + std::to_string(i) + " is empty");
    if (covered & part.mask()) return bad("part " + std::to_string(i) + " overlaps an earlier part");
    covered |= part.mask();
  }
  if (covered != low_mask(n)) {
    return bad("vertex " + std::to_string(lowest(low_mask(n) & ~covered)) + " is in no part");
  }
  if (n >= 2 && t < 2) return bad("a partition of n >= 2 vertices needs at least 2 parts");
  if (p.between_colors.size() > 2) {
    return bad(std::to_string(p.between_colors.size()) + " between-part colors, at most 2 allowed");
  }
  if (p.part_pair_color.size() != t) return bad("pair-color table has wrong size");
  for (const auto& row : p.part_pair_color) {
    if (row.size() != t) return bad("pair-color table has wrong size");
  }

  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      const Color want = p.part_pair_color[i][j];
      if (p.part_pair_color[j][i] != want) return bad("pair-color table is not symmetric");
      if (std::find(p.between_colors.begin(), p.between_colors.end(), want) ==
          p.between_colors.end()) {
        return bad("parts " + std::to_string(i) + " and " + std::to_string(j) + " use color " +
                   std::to_string(want) + " outside the between-part colors");
      }
      for (int u : p.parts[i].members()) {
        for (int v : p.parts[j].members()) {
          if (g.color(u, v) != want) {
            return bad("edge " + edge_str(std::min(u, v), std::max(u, v)) + " has color " +
                           std::to_string(g.color(u, v)) + ", parts " + std::to_string(i) +
                           " and " + std::to_string(j) + " are joined in color " +
                           std::to_string(want),
                       std::pair{std::min(u, v), std::max(u, v)});
          }
        }
      }
    }
  }
  return {};
}

GallaiPartition gallai_partition(const ColoredCompleteGraph& g, bool coarsest) {
  if (g.order() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a Gallai partition needs at least 2 vertices");
  }
  if (auto w = find_rainbow_triangle(g)) throw NotGallaiError(*w);

  const auto used = g.colors_used();
  std::vector<std::vector<Color>> candidates;
  for (Color a : used) candidates.push_back({a});
  for (std::size_t i = 0; i < used.size(); ++i) {
    for (std::size_t j = i + 1; j < used.size(); ++j) candidates.push_back({used[i], used[j]});
  }

  std::optional<std::vector<Mask>> best;
  for (const auto& allowed : candidates) {
    auto blocks = finest_blocks(g, allowed);
    if (blocks.size() < 2) continue;
    if (coarsest) coarsen(g, blocks);
    if (!best || blocks.size() < best->size()) best = std::move(blocks);
    if (best->size() == 2) break;
  }
  if (!best) throw std::logic_error("gallai_partition: no candidate color set produced 2 parts");

  sort_parts(*best);
  std::vector<VertexSubset> parts;
  for (Mask m : *best) parts.emplace_back(g.order(), m);
  return GallaiPartition::from_parts(g, std::move(parts));
}

ColoredCompleteGraph reduced_graph(const ColoredCompleteGraph& g, const GallaiPartition& p) {
  if (auto report = validate_partition(g, p); !report) {
    throw Error(ErrorCode::InvalidPartition, report.reason);
  }
  if (p.part_count() == 1) return ColoredCompleteGraph::monochromatic(1, g.palette(), 1);
  return ColoredCompleteGraph::from_function(
      p.part_count(), g.palette(), [&](int i, int j) { return p.part_pair_color[i][j]; });
}

std::vector<ColoredCompleteGraph> part_colorings(const ColoredCompleteGraph& g,
                                                 const GallaiPartition& p) {
  std::vector<ColoredCompleteGraph> out;
  out.reserve(p.parts.size());
  for (const auto& part : p.parts) out.push_back(induced(g, part));
  return out;
}

ColoredCompleteGraph recolor_small_parts(const ColoredCompleteGraph& g, const VertexSubset& a,
                                         const std::vector<VertexSubset>& bs, int k, int m) {
  auto violated = [](const std::string& why) { return Error(ErrorCode::HypothesisViolated, why); };
  const int n = g.order();
  if (k < 1 || k > kMaxColors) throw violated("palette size k must lie in 1.." + std::to_string(kMaxColors));
  if (static_cast<int>(bs.size()) != k - 1) {
    throw violated("expected k - 1 = " + std::to_string(k - 1) + " sets B_i, got " +
                   std::to_string(bs.size()));
  }

  std::vector<int> owner(n, -1);  // 0 for A, i for B_i
  auto claim = [&](const VertexSubset& s, int id, const std::string& name) {
    if (s.universe() != n) throw violated(name + " is not a subset of the host vertices");
    for (int v : s.members()) {
      if (owner[v] != -1) throw violated("vertex " + std::to_string(v) + " lies in two of A, B_i");
      owner[v] = id;
    }
  };
  claim(a, 0, "A");
  for (int i = 1; i < k; ++i) {
    const auto& b = bs[i - 1];
    if (b.size() > m - 1) {
      throw violated("|B_" + std::to_string(i) + "| = " + std::to_string(b.size()) +
                     " exceeds m - 1 = " + std::to_string(m - 1));
    }
    claim(b, i, "B_" + std::to_string(i));
  }
  for (int v = 0; v < n; ++v) {
    if (owner[v] == -1) throw violated("vertex " + std::to_string(v) + " is in neither A nor any B_i");
  }

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const int ou = owner[u];
      const int ov = owner[v];
      const Color c = g.color(u, v);
      const std::string e = "edge " + edge_str(u, v) + " has color " + std::to_string(c);
      if (ou == 0 && ov == 0) {
        if (c > k) throw violated(e + ", but A must use colors 1.." + std::to_string(k));
      } else if (ou == 0 || ov == 0) {
        const int i = ou == 0 ? ov : ou;
        if (c != i) throw violated(e + ", but edges between A and B_" + std::to_string(i) +
                                   " must have color " + std::to_string(i));
      } else if (ou != ov) {
        if (c != ou && c != ov) {
          throw violated(e + ", but edges between B_" + std::to_string(ou) + " and B_" +
                         std::to_string(ov) + " must use one of their indices");
        }
      }
    }
  }

  return ColoredCompleteGraph::from_function(n, k, [&](int u, int v) {
    const Color c = g.color(u, v);
    const bool inside_b = owner[u] != 0 && owner[u] == owner[v];
    return inside_b && c > k - 1 ? k : c;
  });
}

Witness between_parts_cycle(const ColoredCompleteGraph& g, const GallaiPartition& p, int ell) {
  auto violated = [](const std::string& why) { return Error(ErrorCode::HypothesisViolated, why); };
  if (ell < 2) throw violated("l must be >= 2");
  const int order = 2 * ell + 1;
  if (g.order() < order) {
    throw violated("need at least 2l+1 = " + std::to_string(order) + " vertices, have " +
                   std::to_string(g.order()));
  }
  if (auto report = validate_partition(g, p); !report) throw violated(report.reason);
  std::set<Color> used;
  for (int i = 0; i < p.part_count(); ++i) {
    for (int j = i + 1; j < p.part_count(); ++j) used.insert(p.part_pair_color[i][j]);
  }
  if (used.size() != 1) {
    throw violated(std::to_string(used.size()) + " colors between parts, exactly 1 required");
  }
  for (int i = 0; i < p.part_count(); ++i) {
    if (p.parts[i].size() > ell) {
      throw violated("part " + std::to_string(i) + " has order " +
                     std::to_string(p.parts[i].size()) + " > l = " + std::to_string(ell));
    }
  }
  const Color blue = *used.begin();
  // Any 2l+1 vertices: each sees at most l-1 others from its own part, so its
  // blue degree is at least l+1 > (2l+1)/2.
  const Mask chosen = low_mask(order);
  const SimpleGraph h = g.color_class(blue).induced(chosen);
  Witness ham = dirac_hamiltonian(h);
  std::vector<int> ids = VertexSubset(g.order(), chosen).members();
  std::vector<int> cycle;
  for (int v : ham.vertices) cycle.push_back(ids[v]);
  return Witness{WitnessKind::MonoCycle, canonical_cycle(std::move(cycle)), blue};
}

}  // namespace gallai_lab
