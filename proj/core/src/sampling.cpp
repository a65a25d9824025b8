#include "openchain/sampling.hpp"

#include <cmath>
#include <numbers>

#include "openchain/errors.hpp"

namespace openchain {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Sampler::normal() {
  // Box-Muller; 1 - uniform() lies in (0, 1].
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

cx Sampler::complex_normal(double scale) {
  const double re = normal();
  const double im = normal();
  return scale * cx{re, im} / std::sqrt(2.0);
}

cx Sampler::annulus(double rmin, double rmax) {
  const double r = std::sqrt(uniform(rmin * rmin, rmax * rmax));
  const double phi = uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(r, phi);
}

cx Sampler::annulus(const std::function<bool(cx)>& admissible, double rmin, double rmax) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const cx z = annulus(rmin, rmax);
    if (admissible(z)) return z;
  }
  throw NumericalError("annulus sampling: no admissible point after 10000 draws");
}

std::uint64_t Sampler::derive(std::uint64_t stream) const {
  return splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

GeneralBoundary random_general_boundary(Sampler& s, double scale) {
  GeneralBoundary b;
  b.alpha = s.complex_normal(scale);
  b.beta = s.complex_normal(scale);
  b.gamma = s.complex_normal(scale);
  b.delta = s.complex_normal(scale);
  return b;
}

TriangularBoundary random_triangular_boundary(Sampler& s, double scale) {
  TriangularBoundary b;
  b.a = s.complex_normal(scale);
  b.b = s.complex_normal(scale);
  b.c = s.complex_normal(scale);
  return b;
}

std::pair<GeneralBoundary, GeneralBoundary> constraint_surface_pair(Sampler& s, double scale) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const GeneralBoundary right = random_general_boundary(s, scale);
    GeneralBoundary left = random_general_boundary(s, scale);
    const cx beta = right.beta, gamma = right.gamma, delta = right.delta;
    const cx bbeta = left.beta, bgamma = left.gamma;
    const cx P = beta * bgamma - bbeta * gamma;
    const cx A = gamma * gamma;
    const cx B = -2.0 * gamma * delta * bgamma - 4.0 * P * beta;
    const cx C = delta * delta * bgamma * bgamma + 4.0 * P * delta * bbeta;
    if (std::abs(A) < 1e-3 * scale * scale) continue;
    const cx disc = std::sqrt(B * B - 4.0 * A * C);
    // Pick the root computed without cancellation.
    const cx q = -0.5 * (B + (std::real(std::conj(B) * disc) >= 0 ? disc : -disc));
    const cx root = std::abs(q) > 0 ? q / A : cx{};
    if (!std::isfinite(root.real()) || !std::isfinite(root.imag())) continue;
    left.delta = root;
    return {right, left};
  }
  throw NumericalError("constraint_surface_pair: degenerate draws");
}

ModelParams random_model(Sampler& s, int length, cx eta, double xi_scale) {
  if (length < 1) throw InputError("chain length must be at least 1");
  std::vector<cx> xi(static_cast<std::size_t>(length));
  for (auto& x : xi) x = s.complex_normal(xi_scale);
  return ModelParams(eta, std::move(xi));
}

cx admissible_spectral_point(Sampler& s, const ModelParams& params) {
  const cx eta = params.eta();
  const double margin = 0.05 * (1.0 + std::abs(eta));
  auto ok = [&](cx u) {
    if (std::abs(2.0 * u + eta) < margin) return false;
    for (cx x : params.xi()) {
      if (std::abs(eta - u - x) < margin || std::abs(eta + u + x) < margin) return false;
      if (std::abs(eta + u - x) < margin || std::abs(eta - u + x) < margin) return false;
    }
    return true;
  };
  return s.annulus(ok);
}

}  // namespace openchain
