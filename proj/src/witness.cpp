#include "gallai_lab/witness.hpp"

#include <algorithm>

namespace gallai_lab {

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::RainbowTriangle: return "RainbowTriangle";
    case WitnessKind::MonoCycle: return "MonoCycle";
    case WitnessKind::MonoPath: return "MonoPath";
    case WitnessKind::HamiltonCycle: return "HamiltonCycle";
  }
  return "Unknown";
}

WitnessKind witness_kind_from_string(std::string_view name) {
  for (auto kind : {WitnessKind::RainbowTriangle, WitnessKind::MonoCycle, WitnessKind::MonoPath,
                    WitnessKind::HamiltonCycle}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown witness kind \"" + std::string(name) + "\"");
}

std::vector<int> canonical_cycle(std::vector<int> cycle) {
  if (cycle.size() < 3) return cycle;
  auto lowest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), lowest, cycle.end());
  if (cycle[1] > cycle.back()) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

std::vector<int> canonical_path(std::vector<int> path) {
  std::vector<int> reversed(path.rbegin(), path.rend());
  return std::min(path, reversed);
}

namespace {

WitnessCheck fail(std::string reason) { return {false, std::move(reason)}; }

WitnessCheck check_vertices(int n, const std::vector<int>& vs, std::size_t min_count) {
  if (vs.size() < min_count) {
    return fail("needs at least " + std::to_string(min_count) + " vertices, has " +
                std::to_string(vs.size()));
  }
  Mask seen = 0;
  for (int v : vs) {
    if (v < 0 || v >= n) return fail("vertex " + std::to_string(v) + " out of range");
    if (seen & bit(v)) return fail("vertex " + std::to_string(v) + " repeated");
    seen |= bit(v);
  }
  return {};
}

template <typename EdgeOk>
WitnessCheck check_walk(const std::vector<int>& vs, bool closed, EdgeOk&& edge_ok) {
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if (auto r = edge_ok(vs[i], vs[i + 1]); !r) return r;
  }
  if (closed) return edge_ok(vs.back(), vs.front());
  return {};
}

}  // namespace

WitnessCheck validate_witness(const ColoredCompleteGraph& g, const Witness& w) {
  const int n = g.order();
  auto colored_edge = [&](int u, int v) -> WitnessCheck {
    Color c = g.color(u, v);
    if (c != *w.color) {
      return fail("edge {" + std::to_string(u) + "," + std::to_string(v) + "} has color " +
                  std::to_string(c) + ", expected " + std::to_string(*w.color));
    }
    return {};
  };
  switch (w.kind) {
    case WitnessKind::RainbowTriangle: {
      if (w.color) return fail("rainbow triangle carries no color");
      if (w.vertices.size() != 3) return fail("rainbow triangle needs exactly 3 vertices");
      if (auto r = check_vertices(n, w.vertices, 3); !r) return r;
      Color a = g.color(w.vertices[0], w.vertices[1]);
      Color b = g.color(w.vertices[0], w.vertices[2]);
      Color c = g.color(w.vertices[1], w.vertices[2]);
      if (a == b || a == c || b == c) return fail("triangle edges are not pairwise distinct");
      return {};
    }
    case WitnessKind::MonoCycle: {
      if (!w.color) return fail("monochromatic cycle needs a color");
      if (auto r = check_vertices(n, w.vertices, 3); !r) return r;
      return check_walk(w.vertices, true, colored_edge);
    }
    case WitnessKind::MonoPath: {
      if (!w.color) return fail("monochromatic path needs a color");
      if (auto r = check_vertices(n, w.vertices, 1); !r) return r;
      return check_walk(w.vertices, false, colored_edge);
    }
    case WitnessKind::HamiltonCycle: {
      if (w.color) return fail("Hamilton cycle carries no color");
      if (static_cast<int>(w.vertices.size()) != n) return fail("not a permutation of all vertices");
      return check_vertices(n, w.vertices, 3);
    }
  }
  return fail("unknown witness kind");
}

WitnessCheck validate_witness(const SimpleGraph& h, const Witness& w) {
  const int n = h.order();
  auto plain_edge = [&](int u, int v) -> WitnessCheck {
    if (!h.adjacent(u, v)) {
      return fail("{" + std::to_string(u) + "," + std::to_string(v) + "} is not an edge");
    }
    return {};
  };
  switch (w.kind) {
    case WitnessKind::RainbowTriangle:
      return fail("rainbow triangles need a colored host");
    case WitnessKind::MonoCycle:
      if (auto r = check_vertices(n, w.vertices, 3); !r) return r;
      return check_walk(w.vertices, true, plain_edge);
    case WitnessKind::MonoPath:
      if (auto r = check_vertices(n, w.vertices, 1); !r) return r;
      return check_walk(w.vertices, false, plain_edge);
    case WitnessKind::HamiltonCycle:
      if (w.color) return fail("Hamilton cycle carries no color");
      if (static_cast<int>(w.vertices.size()) != n) return fail("not a permutation of all vertices");
      if (auto r = check_vertices(n, w.vertices, 3); !r) return r;
      return check_walk(w.vertices, true, plain_edge);
  }
  return fail("unknown witness kind");
}

}  // namespace gallai_lab
