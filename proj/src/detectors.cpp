#include "gallai_lab/detectors.hpp"

#include <algorithm>
#include <stdexcept>

namespace gallai_lab {

namespace {

/// Vertices reachable from `start` using only vertices of `allowed` (start included).
Mask reach(const SimpleGraph& h, int start, Mask allowed) {
  Mask seen = bit(start);
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for_each_bit(frontier, [&](int v) { next |= h.neighbors(v); });
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

/// Two-colors H[within] from `root`'s component. Returns false on an odd cycle;
/// otherwise `side` holds the vertices at odd distance from root.
bool two_color(const SimpleGraph& h, int root, Mask within, Mask& side) {
  Mask even = bit(root);
  Mask odd = 0;
  Mask frontier = even;
  bool frontier_odd = false;
  while (frontier) {
    Mask next = 0;
    for_each_bit(frontier, [&](int v) { next |= h.neighbors(v); });
    next &= within;
    Mask& same = frontier_odd ? odd : even;
    Mask& other = frontier_odd ? even : odd;
    if (next & same) return false;
    next &= ~other;
    other |= next;
    frontier = next;
    frontier_odd = !frontier_odd;
  }
  side = odd;
  return true;
}

// Depth-first search for a cycle through `start` whose other vertices are all
// larger than start. Orientation is fixed by requiring last > second.
class CycleSearch {
 public:
  CycleSearch(const SimpleGraph& h, int length, int start)
      : h_(h), length_(length), start_(start) {
    path_.reserve(length);
    path_.push_back(start);
  }

  bool run(Mask avail) { return extend(start_, avail); }
  const std::vector<int>& path() const { return path_; }

 private:
  bool extend(int end, Mask avail) {
    const int depth = static_cast<int>(path_.size());
    if (depth == length_) return h_.adjacent(end, start_);
    const int remaining = length_ - depth;
    Mask targets = h_.neighbors(start_) & avail;
    if (depth >= 2) targets &= ~low_mask(path_[1] + 1);
    if (!targets || !feasible(end, avail, targets, remaining)) return false;

    Mask next = h_.neighbors(end) & avail;
    if (remaining == 1) next &= targets;
    while (next) {
      int v = __builtin_ctzll(next);
      next &= next - 1;
      path_.push_back(v);
      if (extend(v, avail & ~bit(v))) return true;
      path_.pop_back();
    }
    return false;
  }

  // Reachability cut: the rest of the cycle lives in the component of `end`
  // within avail, must reach a closing neighbour of start in time, and must
  // respect parity when that region is bipartite.
  bool feasible(int end, Mask avail, Mask targets, int remaining) const {
    Mask seen = bit(end);
    Mask frontier = seen;
    int dist = 0;
    int target_dist = -1;
    while (frontier) {
      Mask next = 0;
      for_each_bit(frontier, [&](int v) { next |= h_.neighbors(v); });
      next &= avail & ~seen;
      if (!next) break;
      seen |= next;
      frontier = next;
      ++dist;
      if (target_dist < 0 && (next & targets)) target_dist = dist;
    }
    if (target_dist < 0 || target_dist > remaining) return false;
    if (popcount(seen) - 1 < remaining) return false;

    Mask side = 0;
    if (two_color(h_, end, seen | bit(start_), side)) {
      const bool start_opposite = side & bit(start_);
      // the closing walk end -> start has remaining + 1 edges
      const bool odd_walk = (remaining + 1) % 2 == 1;
      if (start_opposite != odd_walk) return false;
    }
    return true;
  }

  const SimpleGraph& h_;
  int length_;
  int start_;
  std::vector<int> path_;
};

class PathSearch {
 public:
  PathSearch(const SimpleGraph& h, int order) : h_(h), order_(order) { path_.reserve(order); }

  bool run(int start, Mask avail) {
    path_.assign(1, start);
    return extend(start, avail);
  }
  const std::vector<int>& path() const { return path_; }

 private:
  bool extend(int end, Mask avail) {
    const int depth = static_cast<int>(path_.size());
    if (depth == order_) return true;
    const int remaining = order_ - depth;
    Mask region = reach(h_, end, avail | bit(end));
    if (popcount(region) - 1 < remaining) return false;
    Mask side = 0;
    if (two_color(h_, end, region, side)) {
      // new vertices alternate: opposite side first
      int opposite = popcount(side);
      int same = popcount(region & ~side) - 1;
      if (opposite < (remaining + 1) / 2 || same < remaining / 2) return false;
    }

    Mask next = h_.neighbors(end) & avail;
    while (next) {
      int v = __builtin_ctzll(next);
      next &= next - 1;
      path_.push_back(v);
      if (extend(v, avail & ~bit(v))) return true;
      path_.pop_back();
    }
    return false;
  }

  const SimpleGraph& h_;
  int order_;
  std::vector<int> path_;
};

void check_color_arg(Color color) {
  if (color < 1) {
    throw Error(ErrorCode::InvalidArgument, "color ids start at 1, got " + std::to_string(color));
  }
}

}  // namespace

std::optional<std::vector<int>> find_cycle(const SimpleGraph& h, int length) {
  const int n = h.order();
  if (length < 3 || length > n) return std::nullopt;
  for (int s = 0; s + length <= n; ++s) {
    Mask avail = low_mask(n) & ~low_mask(s + 1);
    CycleSearch search(h, length, s);
    if (search.run(avail)) return canonical_cycle(search.path());
  }
  return std::nullopt;
}

std::optional<std::vector<int>> find_path(const SimpleGraph& h, int order) {
  const int n = h.order();
  if (order < 1 || order > n) return std::nullopt;
  PathSearch search(h, order);
  for (int s = 0; s < n; ++s) {
    if (search.run(s, low_mask(n) & ~bit(s))) return canonical_path(search.path());
  }
  return std::nullopt;
}

std::optional<Witness> find_rainbow_triangle(const ColoredCompleteGraph& g) {
  const int n = g.order();
  const auto used = g.colors_used();
  if (used.size() < 3) return std::nullopt;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const Color c = g.color(u, v);
      const Mask later = low_mask(n) & ~low_mask(v + 1);
      const Mask avoid_c = later & ~(g.neighbors(c, u) | g.neighbors(c, v));
      Mask hits = 0;
      for (Color d : used) {
        if (d != c) hits |= g.neighbors(d, u) & ~g.neighbors(d, v) & avoid_c;
      }
      if (hits) {
        return Witness{WitnessKind::RainbowTriangle, {u, v, __builtin_ctzll(hits)}, std::nullopt};
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> find_mono_cycle(const ColoredCompleteGraph& g, Color color, int length) {
  check_color_arg(color);
  if (color > g.palette()) return std::nullopt;
  auto cycle = find_cycle(g.color_class(color), length);
  if (!cycle) return std::nullopt;
  return Witness{WitnessKind::MonoCycle, std::move(*cycle), color};
}

std::optional<Witness> find_mono_path(const ColoredCompleteGraph& g, Color color, int order) {
  check_color_arg(color);
  if (color > g.palette()) return std::nullopt;
  auto path = find_path(g.color_class(color), order);
  if (!path) return std::nullopt;
  return Witness{WitnessKind::MonoPath, std::move(*path), color};
}

Witness dirac_hamiltonian(const SimpleGraph& h) {
  const int n = h.order();
  if (n < 3) {
    throw PreconditionError(ErrorCode::DiracPreconditionFailed, -1, 0,
                            "needs at least 3 vertices, got " + std::to_string(n));
  }
  for (int v = 0; v < n; ++v) {
    if (2 * h.degree(v) < n) {
      throw PreconditionError(ErrorCode::DiracPreconditionFailed, v, h.degree(v),
                              "vertex " + std::to_string(v) + " has degree " +
                                  std::to_string(h.degree(v)) + " < n/2 = " +
                                  std::to_string(n) + "/2");
    }
  }

  std::vector<int> path{0};
  Mask on_path = bit(0);
  for (;;) {
    // Extend at both ends until the path is maximal.
    for (;;) {
      if (Mask c = h.neighbors(path.back()) & ~on_path) {
        int v = __builtin_ctzll(c);
        path.push_back(v);
        on_path |= bit(v);
      } else if (Mask c2 = h.neighbors(path.front()) & ~on_path) {
        int v = __builtin_ctzll(c2);
        path.insert(path.begin(), v);
        on_path |= bit(v);
      } else {
        break;
      }
    }

    // Close the maximal path into a cycle on the same vertex set.
    const int p = static_cast<int>(path.size());
    std::vector<int> cycle;
    if (h.adjacent(path.front(), path.back())) {
      cycle = path;
    } else {
      // Both endpoints have all neighbours on the path and degree sum >= n >= p,
      // so some i has front ~ path[i+1] and path[i] ~ back.
      int split = -1;
      for (int i = 0; i + 1 < p && split < 0; ++i) {
        if (h.adjacent(path.front(), path[i + 1]) && h.adjacent(path[i], path.back())) split = i;
      }
      if (split < 0) throw std::logic_error("dirac_hamiltonian: no crossing pair on maximal path");
      cycle.assign(path.begin(), path.begin() + split + 1);
      cycle.insert(cycle.end(), path.rbegin(), path.rend() - (split + 1));
    }
    if (p == n) {
      return Witness{WitnessKind::HamiltonCycle, canonical_cycle(std::move(cycle)), std::nullopt};
    }

    // Open the cycle at a vertex with an outside neighbour: strictly longer path.
    bool opened = false;
    for (int j = 0; j < p && !opened; ++j) {
      if (Mask out = h.neighbors(cycle[j]) & ~on_path) {
        int u = __builtin_ctzll(out);
        path.clear();
        path.push_back(u);
        for (int t = 0; t < p; ++t) path.push_back(cycle[(j + t) % p]);
        on_path |= bit(u);
        opened = true;
      }
    }
    if (!opened) throw std::logic_error("dirac_hamiltonian: graph is disconnected");
  }
}

std::optional<Witness> erdos_gallai_path(const SimpleGraph& h, int edges) {
  if (edges < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "path edge count must be >= 2, got " + std::to_string(edges));
  }
  const int n = h.order();
  if (edges + 1 > n) return std::nullopt;

  const bool guaranteed = 2 * h.edge_count() > (edges - 1) * n;
  if (guaranteed) {
    // Peeling vertices of degree <= (edges-1)/2 keeps e > (edges-1) n / 2 on the
    // remainder, leaving a core of minimum degree >= edges/2 where paths are dense.
    Mask core = low_mask(n);
    for (bool changed = true; changed;) {
      changed = false;
      for_each_bit(core, [&](int v) {
        if (2 * popcount(h.neighbors(v) & core) <= edges - 1) {
          core &= ~bit(v);
          changed = true;
        }
      });
    }
    if (popcount(core) >= edges + 1) {
      std::vector<int> ids = VertexSubset(n, core).members();
      if (auto local = find_path(h.induced(core), edges + 1)) {
        std::vector<int> mapped;
        for (int v : *local) mapped.push_back(ids[v]);
        return Witness{WitnessKind::MonoPath, canonical_path(std::move(mapped)), std::nullopt};
      }
    }
  }
  auto path = find_path(h, edges + 1);
  if (!path) {
    if (guaranteed) throw std::logic_error("erdos_gallai_path: edge bound held but no path found");
    return std::nullopt;
  }
  return Witness{WitnessKind::MonoPath, std::move(*path), std::nullopt};
}

namespace {

/// Path on max(order, 1) vertices inside `cls` restricted to `host`, assuming
/// 2 e(cls[host]) > |host| (order - 2).
std::vector<int> split_path(const SimpleGraph& cls, Mask host, int order) {
  std::vector<int> ids = VertexSubset(cls.order(), host).members();
  if (order <= 1) return {ids.front()};
  SimpleGraph local = cls.induced(host);
  if (order == 2) {
    for (int u = 0; u < local.order(); ++u) {
      if (Mask nb = local.neighbors(u)) return {ids[u], ids[__builtin_ctzll(nb)]};
    }
    throw std::logic_error("colored_path_split: expected an edge");
  }
  auto w = erdos_gallai_path(local, order - 1);
  if (!w) throw std::logic_error("colored_path_split: edge bound held but no path found");
  std::vector<int> mapped;
  for (int v : w->vertices) mapped.push_back(ids[v]);
  return canonical_path(std::move(mapped));
}

}  // namespace

Witness colored_path_split(const ColoredCompleteGraph& g, Color red, Color blue,
                           const VertexSubset& host, int a, int b) {
  if (a < 0 || b < 0 || a + b < 3) {
    throw Error(ErrorCode::InvalidArgument, "need a, b >= 0 with a + b >= 3");
  }
  if (red == blue || red < 1 || blue < 1 || red > g.palette() || blue > g.palette()) {
    throw Error(ErrorCode::InvalidArgument, "red and blue must be distinct palette colors");
  }
  if (host.universe() != g.order() || host.empty()) {
    throw Error(ErrorCode::InvalidArgument, "host vertex set must be a nonempty subset of g");
  }
  const Mask hm = host.mask();
  long twice_red = 0;
  long twice_blue = 0;
  for (int v : host.members()) {
    int dr = popcount(g.neighbors(red, v) & hm);
    int db = popcount(g.neighbors(blue, v) & hm);
    if (dr + db < a + b - 3) {
      throw PreconditionError(ErrorCode::DegreePreconditionFailed, v, dr + db,
                              "vertex " + std::to_string(v) + " has d_R + d_B = " +
                                  std::to_string(dr + db) + " < a + b - 3 = " +
                                  std::to_string(a + b - 3));
    }
    twice_red += dr;
    twice_blue += db;
  }
  const long order = host.size();
  // Average red plus blue degree is at least a + b - 3, so one color beats its share.
  if (twice_red > order * (a - 2)) {
    return Witness{WitnessKind::MonoPath, split_path(g.color_class(red), hm, a), red};
  }
  if (twice_blue > order * (b - 2)) {
    return Witness{WitnessKind::MonoPath, split_path(g.color_class(blue), hm, b), blue};
  }
  throw std::logic_error("colored_path_split: averaging argument failed");
}

}  // namespace gallai_lab
