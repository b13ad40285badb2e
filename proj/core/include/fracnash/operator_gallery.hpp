// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fracnash/spectral_core.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fracnash::gallery {

enum class GeneratorKind { cycle, path, grid2d, diagonal, ou };

std::string_view to_string(GeneratorKind kind);
/// Parses "cycle", "path", "grid2d", "diagonal", "ou"; throws InvalidArgument.
GeneratorKind parse_kind(std::string_view name);

/// Description of a concrete generator A.
///
/// Graph kinds build the combinatorial Laplacian scaled by 1/h^2 with
/// Neumann-style edges.  With `lattice_measure` the points carry mass h^d
/// instead of 1 (the form then picks up the same factor).
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::cycle;
  int size = 4;     ///< vertices (cycle/path), Hermite degrees (ou), ignored for diagonal
  int size_y = 0;   ///< second grid dimension (grid2d); 0 means square
  double spacing = 1.0;
  bool lattice_measure = false;
  std::vector<double> eigenvalues;  ///< diagonal kind only

  static GeneratorSpec cycle(int n, double h = 1.0);
  static GeneratorSpec path(int n, double h = 1.0);
  static GeneratorSpec grid2d(int nx, int ny, double h = 1.0);
  static GeneratorSpec diagonal(std::vector<double> spectrum);
  static GeneratorSpec ou(int degrees);

  bool is_graph() const noexcept;
  int dimension() const noexcept;  ///< lattice dimension d for graph kinds
  int point_count() const;
};

/// Throws InvalidArgument describing the first violated invariant.
void validate(const GeneratorSpec& spec);

/// Undirected edge list of a graph kind.
std::vector<std::pair<int, int>> edges(const GeneratorSpec& spec);

spectral::MeasureSpace measure(const GeneratorSpec& spec);

/// Generator matrix in coordinates (not yet diagonalized).
spectral::Matrix generator_matrix(const GeneratorSpec& spec);

spectral::SpectralOperator build(const GeneratorSpec& spec);

/// E(f) = mass * sum_edges (f_i - f_j)^2 / h^2 for graph kinds.
double dirichlet_energy(const GeneratorSpec& spec, const spectral::Vector& f);

}  // namespace fracnash::gallery
