#pragma once

#include <optional>

#include "gallai_lab/coloring.hpp"
#include "gallai_lab/witness.hpp"

namespace gallai_lab {

/// Lexicographically first rainbow triangle (u < v < w), or nullopt when g is a
/// Gallai coloring.
std::optional<Witness> find_rainbow_triangle(const ColoredCompleteGraph& g);

/// A cycle on exactly `length` vertices inside the color class. Lengths above the
/// order (or below 3) yield nullopt.
std::optional<Witness> find_mono_cycle(const ColoredCompleteGraph& g, Color color, int length);

/// A path on exactly `order` vertices inside the color class.
std::optional<Witness> find_mono_path(const ColoredCompleteGraph& g, Color color, int order);

// Simple-graph searches backing the colored versions. Results are canonicalized
// vertex lists in h's numbering.
std::optional<std::vector<int>> find_cycle(const SimpleGraph& h, int length);
std::optional<std::vector<int>> find_path(const SimpleGraph& h, int order);

/// Constructive Dirac: builds a Hamilton cycle when n >= 3 and every degree is at
/// least n/2. Throws PreconditionError(DiracPreconditionFailed) naming the lowest
/// vertex below the bound.
Witness dirac_hamiltonian(const SimpleGraph& h);

/// Path with `edges` edges. Guaranteed to succeed when e(h) > (edges-1) n / 2; below
/// that threshold the answer is whatever exhaustive search finds. Returned as a
/// MonoPath witness without a color.
std::optional<Witness> erdos_gallai_path(const SimpleGraph& h, int edges);

/// Two-color path split on the vertices of `host`: every vertex must satisfy
/// d_red(v) + d_blue(v) >= a + b - 3, counting only edges inside `host`. Returns a red
/// path on `a` vertices or a blue path on `b` vertices, in g's numbering.
Witness colored_path_split(const ColoredCompleteGraph& g, Color red, Color blue,
                           const VertexSubset& host, int a, int b);

}  // namespace gallai_lab
