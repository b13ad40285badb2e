// Copyright 2026 The fracnash Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracnash/operator_gallery.hpp"

#include "fracnash/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracnash::gallery {

using spectral::Matrix;
using spectral::MeasureSpace;
using spectral::Vector;

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::cycle: return "cycle";
    case GeneratorKind::path: return "path";
    case GeneratorKind::grid2d: return "grid2d";
    case GeneratorKind::diagonal: return "diagonal";
    case GeneratorKind::ou: return "ou";
  }
  return "unknown";
}

GeneratorKind parse_kind(std::string_view name) {
  if (name == "cycle") return GeneratorKind::cycle;
  if (name == "path") return GeneratorKind::path;
  if (name == "grid2d") return GeneratorKind::grid2d;
  if (name == "diagonal") return GeneratorKind::diagonal;
  if (name == "ou") return GeneratorKind::ou;
  throw InvalidArgument("unknown generator kind '" + std::string(name) + "'");
}

GeneratorSpec GeneratorSpec::cycle(int n, double h) {
  GeneratorSpec s;
  s.kind = GeneratorKind::cycle;
  s.size = n;
  s.spacing = h;
  return s;
}

GeneratorSpec GeneratorSpec::path(int n, double h) {
  GeneratorSpec s = cycle(n, h);
  s.kind = GeneratorKind::path;
  return s;
}

GeneratorSpec GeneratorSpec::grid2d(int nx, int ny, double h) {
  GeneratorSpec s = cycle(nx, h);
  s.kind = GeneratorKind::grid2d;
  s.size_y = ny;
  return s;
}

GeneratorSpec GeneratorSpec::diagonal(std::vector<double> spectrum) {
  GeneratorSpec s;
  s.kind = GeneratorKind::diagonal;
  s.size = static_cast<int>(spectrum.size());
  s.eigenvalues = std::move(spectrum);
  return s;
}

GeneratorSpec GeneratorSpec::ou(int degrees) {
  GeneratorSpec s;
  s.kind = GeneratorKind::ou;
  s.size = degrees;
  return s;
}

bool GeneratorSpec::is_graph() const noexcept {
  return kind == GeneratorKind::cycle || kind == GeneratorKind::path ||
         kind == GeneratorKind::grid2d;
}

int GeneratorSpec::dimension() const noexcept { return kind == GeneratorKind::grid2d ? 2 : 1; }

int GeneratorSpec::point_count() const {
  switch (kind) {
    case GeneratorKind::grid2d: return size * (size_y > 0 ? size_y : size);
    case GeneratorKind::diagonal: return static_cast<int>(eigenvalues.size());
    default: return size;
  }
}

void validate(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::diagonal) {
    if (spec.eigenvalues.empty()) throw InvalidArgument("diagonal generator needs eigenvalues");
    for (double v : spec.eigenvalues)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw InvalidArgument("diagonal generator eigenvalues must be finite and >= 0");
    return;
  }
  if (spec.size < 2) throw InvalidArgument("generator size must be >= 2");
  if (spec.kind == GeneratorKind::grid2d && spec.size_y != 0 && spec.size_y < 2)
    throw InvalidArgument("grid2d second dimension must be >= 2");
  if (!(spec.spacing > 0.0) || !std::isfinite(spec.spacing))
    throw InvalidArgument("lattice spacing h must be > 0");
}

std::vector<std::pair<int, int>> edges(const GeneratorSpec& spec) {
  validate(spec);
  std::vector<std::pair<int, int>> out;
  const int n = spec.size;
  switch (spec.kind) {
    case GeneratorKind::cycle:
      for (int i = 0; i < n; ++i) out.emplace_back(i, (i + 1) % n);
      // A 2-cycle would double the single edge.
      if (n == 2) out.pop_back();
      break;
    case GeneratorKind::path:
      for (int i = 0; i + 1 < n; ++i) out.emplace_back(i, i + 1);
      break;
    case GeneratorKind::grid2d: {
      const int ny = spec.size_y > 0 ? spec.size_y : n;
      auto id = [n](int x, int y) { return y * n + x; };
      for (int y = 0; y < ny; ++y)
        for (int x = 0; x < n; ++x) {
          if (x + 1 < n) out.emplace_back(id(x, y), id(x + 1, y));
          if (y + 1 < ny) out.emplace_back(id(x, y), id(x, y + 1));
        }
      break;
    }
    default:
      throw InvalidArgument("edges: generator kind '" + std::string(to_string(spec.kind)) +
                            "' is not a graph");
  }
  return out;
}

namespace {

double point_mass(const GeneratorSpec& spec) {
  return spec.lattice_measure ? std::pow(spec.spacing, spec.dimension()) : 1.0;
}

}  // namespace

MeasureSpace measure(const GeneratorSpec& spec) {
  validate(spec);
  const double mass = spec.is_graph() ? point_mass(spec) : 1.0;
  return MeasureSpace::uniform(spec.point_count(), mass);
}

Matrix generator_matrix(const GeneratorSpec& spec) {
  validate(spec);
  const int n = spec.point_count();
  Matrix a = Matrix::Zero(n, n);
  if (spec.is_graph()) {
    const double scale = 1.0 / (spec.spacing * spec.spacing);
    for (auto [i, j] : edges(spec)) {
      a(i, i) += scale;
      a(j, j) += scale;
      a(i, j) -= scale;
      a(j, i) -= scale;
    }
  } else if (spec.kind == GeneratorKind::diagonal) {
    for (int i = 0; i < n; ++i) a(i, i) = spec.eigenvalues[i];
  } else {
    // Ornstein-Uhlenbeck in the normalized Hermite basis: A H_k = k H_k.
    for (int i = 0; i < n; ++i) a(i, i) = i;
  }
  return a;
}

spectral::SpectralOperator build(const GeneratorSpec& spec) {
  const MeasureSpace space = measure(spec);
  if (!spec.is_graph()) {
    // Already diagonal: keep the exact spectrum and the standard basis.
    const int n = spec.point_count();
    Vector lambda(n);
    const Matrix a = generator_matrix(spec);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) { return a(l, l) < a(r, r); });
    Matrix u = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      lambda[k] = a(idx[k], idx[k]);
      u(idx[k], k) = 1.0;
    }
    return spectral::SpectralOperator(space, std::move(lambda), std::move(u));
  }
  return spectral::eigendecompose(generator_matrix(spec), space);
}

double dirichlet_energy(const GeneratorSpec& spec, const Vector& f) {
  if (!spec.is_graph())
    throw InvalidArgument("dirichlet_energy: generator kind '" +
                          std::string(to_string(spec.kind)) + "' is not a graph");
  if (f.size() != spec.point_count()) throw InvalidArgument("dirichlet_energy: dimension mismatch");
  double sum = 0.0;
  for (auto [i, j] : edges(spec)) {
    const double d = f[i] - f[j];
    sum += d * d;
  }
  return point_mass(spec) * sum / (spec.spacing * spec.spacing);
}

}  // namespace fracnash::gallery
