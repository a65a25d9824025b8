#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <utility>

#include "openchain/params.hpp"

namespace openchain {

/// Seeded source of random draws. Uniforms are built from raw 64-bit engine
/// output so draws are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  double normal();
  /// Standard complex normal scaled by `scale`.
  cx complex_normal(double scale = 1.0);
  /// Uniform (by area) in rmin <= |z| <= rmax.
  cx annulus(double rmin = 0.2, double rmax = 2.0);
  /// Annulus draw rejected until `admissible` accepts it.
  cx annulus(const std::function<bool(cx)>& admissible, double rmin = 0.2, double rmax = 2.0);

  /// Independent seed for sub-stream `stream`.
  std::uint64_t derive(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

GeneralBoundary random_general_boundary(Sampler& s, double scale = 1.0);
TriangularBoundary random_triangular_boundary(Sampler& s, double scale = 1.0);

/// A (right, left) pair on the triangularizability surface: all parameters
/// drawn freely except delta-bar, solved from the quadratic constraint.
std::pair<GeneralBoundary, GeneralBoundary> constraint_surface_pair(Sampler& s, double scale = 1.0);

/// Inhomogeneities drawn as complex normals of the given scale.
ModelParams random_model(Sampler& s, int length, cx eta = 1.0, double xi_scale = 0.3);

/// Spectral point in the sampling annulus away from every pole of the
/// transfer matrix builders and the pseudo-vacuum eigenvalues.
cx admissible_spectral_point(Sampler& s, const ModelParams& params);

}  // namespace openchain
