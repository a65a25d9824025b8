#include "openchain/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "openchain/errors.hpp"

namespace openchain {
namespace {

// Returns d, or throws when |d| is inside the pole guard.
cx den(cx d, cx eta, const char* kernel, const char* factor) {
  const double mag = std::abs(d);
  if (!(mag > pole_threshold(eta))) throw PoleError(kernel, factor, mag);
  return d;
}

std::vector<cx> without(std::span<const cx> xs, int skip) {
  std::vector<cx> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (static_cast<int>(i) != skip) out.push_back(xs[i]);
  return out;
}

std::vector<cx> without(std::span<const cx> xs, int skip1, int skip2) {
  std::vector<cx> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const int ii = static_cast<int>(i);
    if (ii != skip1 && ii != skip2) out.push_back(xs[i]);
  }
  return out;
}

void check_position(std::span<const cx> xs, int i, const char* op) {
  if (i < 0 || i >= static_cast<int>(xs.size())) {
    throw InputError(std::string(op) + ": position out of range");
  }
}

// W_I with cbar raised to (|complement| - drop_cbar) instead of |complement|.
cx weight(const IndexSet& subset, const RootSet& roots, const ModelParams& params,
          const TriangularBoundary& right, const TriangularBoundary& left, int drop_cbar) {
  if (subset.n_max() != roots.size()) throw InputError("bethe_weight_W: index set / root count mismatch");
  const cx eta = params.eta();
  const IndexSet comp = subset.complement();
  const int n = roots.size();
  cx num = 1.0;
  int cbar_power = comp.size() - drop_cbar;
  for (int i : comp.members()) {
    const cx ui = roots[i];
    cx factor = lambda2(ui, params, right.a, right.b) * (2.0 * ui + eta) /
                (2.0 * den(left.b * ui - left.a, eta, "W", "bbar u_i - abar"));
    for (int k = 0; k < n; ++k)
      if (k != i) factor *= kernel_h(ui, roots[k], eta);
    num *= factor;
  }
  for (int p = 0; p < cbar_power; ++p) num *= left.c;
  cx denom = 1.0;
  const auto m = comp.members();
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      const cx uj = roots[m[a]], uk = roots[m[b]];
      denom *= kernel_h(uj, uk, eta) * kernel_f(uj, uk, eta);
    }
  return num / den(denom, eta, "W", "prod h f over complement pairs");
}

std::vector<int> complement_vector(const IndexSet& s) {
  const IndexSet c = s.complement();
  return {c.members().begin(), c.members().end()};
}

int position_in(const IndexSet& s, int element) {
  const auto m = s.members();
  return static_cast<int>(std::find(m.begin(), m.end(), element) - m.begin());
}

}  // namespace

RWeights r_weights(cx u, cx eta) { return {u + eta, u, eta}; }

cx kernel_f(cx u, cx v, cx eta) {
  return (u - v - eta) * (u + v) /
         (den(u + v + eta, eta, "f", "u+v+eta") * den(u - v, eta, "f", "u-v"));
}

cx kernel_h(cx u, cx v, cx eta) {
  return (u - v + eta) * (u + v + 2.0 * eta) /
         (den(u - v, eta, "h", "u-v") * den(u + v + eta, eta, "h", "u+v+eta"));
}

ExchangeKernels exchange_kernels(cx u, cx v, cx eta) {
  const cx upv = den(u + v + eta, eta, "exchange", "u+v+eta");
  const cx umv = den(u - v, eta, "exchange", "u-v");
  const cx two_u = den(2.0 * u + eta, eta, "exchange", "2u+eta");
  const cx two_v = den(2.0 * v + eta, eta, "exchange", "2v+eta");
  ExchangeKernels k;
  k.f = (u - v - eta) * (u + v) / (upv * umv);
  k.h = (u - v + eta) * (u + v + 2.0 * eta) / (umv * upv);
  k.g = 2.0 * eta * v / (two_v * umv);
  k.w = -eta / upv;
  k.k = -2.0 * eta * (u + eta) / (umv * two_u);
  k.n = 4.0 * v * eta * (u + eta) / (upv * two_v * two_u);
  return k;
}

CbKernels cb_kernels(cx u, cx v, cx eta) {
  const cx upv = den(u + v + eta, eta, "cb", "u+v+eta");
  const cx umv = den(u - v, eta, "cb", "u-v");
  const cx two_u = den(2.0 * u + eta, eta, "cb", "2u+eta");
  const cx two_v = den(2.0 * v + eta, eta, "cb", "2v+eta");
  CbKernels k;
  k.m = 2.0 * eta * u * (u - v + eta) / (two_u * upv * umv);
  k.l = -2.0 * eta * eta * u / (two_u * two_v * umv);
  k.q = eta * (u + v) / (upv * umv);
  k.p = -2.0 * eta * u / (two_u * umv);
  k.y = -eta * eta / (upv * two_v);
  k.z = -eta / upv;
  return k;
}

cx kernel_z11(cx u, cx xi, cx xj, cx eta) {
  const cx d = den(2.0 * xi + eta, eta, "Z11", "2x_i+eta") * den(2.0 * xj + eta, eta, "Z11", "2x_j+eta") *
               den(xi + xj + eta, eta, "Z11", "x_i+x_j+eta") * den(u + xi + eta, eta, "Z11", "u+x_i+eta") *
               den(u + xj + eta, eta, "Z11", "u+x_j+eta") * den(u - xi, eta, "Z11", "u-x_i") *
               den(u - xj, eta, "Z11", "u-x_j");
  return 8.0 * eta * eta * xi * xj * (xi + xj) * (u * u - xi * xj + eta * u) / d;
}

cx kernel_z12(cx u, cx xi, cx xj, cx eta) {
  const cx d = den(2.0 * xi + eta, eta, "Z12", "2x_i+eta") * den(xi - xj, eta, "Z12", "x_i-x_j") *
               den(u + xi + eta, eta, "Z12", "u+x_i+eta") * den(u + xj + eta, eta, "Z12", "u+x_j+eta") *
               den(u - xi, eta, "Z12", "u-x_i") * den(u - xj, eta, "Z12", "u-x_j");
  return 4.0 * eta * eta * xi * (xj - xi + eta) * (u * u + eta * u + xi * xj + eta * xi) / d;
}

cx kernel_z22(cx u, cx xi, cx xj, cx eta) {
  const cx d = den(xi + xj + eta, eta, "Z22", "x_i+x_j+eta") * den(u + xi + eta, eta, "Z22", "u+x_i+eta") *
               den(u + xj + eta, eta, "Z22", "u+x_j+eta") * den(u - xi, eta, "Z22", "u-x_i") *
               den(u - xj, eta, "Z22", "u-x_j");
  return 2.0 * eta * eta * (xi + xj + 2.0 * eta) * (u * u - (xi + eta) * (xj + eta) + eta * u) / d;
}

ZKernels z_kernels(cx u, cx x_i, cx x_j, cx eta) {
  return {kernel_z11(u, x_i, x_j, eta), kernel_z12(u, x_i, x_j, eta), kernel_z22(u, x_i, x_j, eta)};
}

cx kappa1(cx u, cx abar, cx bbar, cx eta) {
  return 2.0 * (u + eta) / den(2.0 * u + eta, eta, "kappa1", "2u+eta") * (abar - bbar * u);
}

cx kappa2(cx u, cx abar, cx bbar, cx eta) { return (u + eta) * bbar + abar; }

cx kappa12(cx u, cx cbar, cx eta) { return -(u + eta) * cbar; }

cx xi_factor(cx u, cx abar, cx bbar, cx eta) {
  return (2.0 * u + eta) * (bbar * (u + eta) + abar) /
         (2.0 * den(u, eta, "Xi", "u") * den(abar - bbar * u, eta, "Xi", "abar-bbar u"));
}

BoundaryKernels boundary_kernels(cx u, const TriangularBoundary& left, cx eta) {
  return {kappa1(u, left.a, left.b, eta), kappa2(u, left.a, left.b, eta), kappa12(u, left.c, eta),
          xi_factor(u, left.a, left.b, eta)};
}

cx lambda1(cx u, const ModelParams& params, cx a, cx b) {
  const cx eta = params.eta();
  cx value = a + b * u;
  for (const cx x : params.xi()) {
    value *= (u - x + eta) / den(-u - x + eta, eta, "Lambda1", "a(-u-xi_j)");
  }
  return value;
}

cx lambda2(cx u, const ModelParams& params, cx a, cx b) {
  const cx eta = params.eta();
  cx value = 2.0 * u * (a - b * (u + eta)) / den(2.0 * u + eta, eta, "Lambda2", "2u+eta");
  for (const cx x : params.xi()) {
    value *= (u + x) * (u - x) /
             (den(u + x + eta, eta, "Lambda2", "a(u+xi_j)") * den(-u - x + eta, eta, "Lambda2", "a(-u-xi_j)"));
  }
  return value;
}

std::pair<cx, cx> vacuum_lambdas(cx u, const ModelParams& params, const TriangularBoundary& right) {
  return {lambda1(u, params, right.a, right.b), lambda2(u, params, right.a, right.b)};
}

std::pair<cx, cx> dressed_lambdas(cx u, std::span<const cx> xs, const ModelParams& params,
                                  const TriangularBoundary& right) {
  auto [l1, l2] = vacuum_lambdas(u, params, right);
  const cx eta = params.eta();
  for (const cx x : xs) {
    l1 *= kernel_f(u, x, eta);
    l2 *= kernel_h(u, x, eta);
  }
  return {l1, l2};
}

OffDiagonal offdiag_MN(cx u, std::span<const cx> xs, int k, const ModelParams& params,
                       const TriangularBoundary& right) {
  check_position(xs, k, "offdiag_MN");
  const cx xk = xs[static_cast<std::size_t>(k)];
  const auto rest = without(xs, k);
  const auto [l1, l2] = dressed_lambdas(xk, rest, params, right);
  const auto ex = exchange_kernels(u, xk, params.eta());
  return {ex.g * l1 + ex.w * l2, ex.k * l2 + ex.n * l1};
}

cx creation_G(cx u, std::span<const cx> xs, int i, const ModelParams& params,
              const TriangularBoundary& right) {
  check_position(xs, i, "creation_G");
  const cx x = xs[static_cast<std::size_t>(i)];
  const auto rest = without(xs, i);
  const auto [u1, u2] = dressed_lambdas(u, rest, params, right);
  const auto [x1, x2] = dressed_lambdas(x, rest, params, right);
  const auto cb = cb_kernels(u, x, params.eta());
  return u1 * ((cb.m + cb.l) * x1 + cb.p * x2) + u2 * ((cb.q + cb.y) * x1 + cb.z * x2);
}

cx creation_F(cx u, std::span<const cx> xs, int i, int j, const ModelParams& params,
              const TriangularBoundary& right) {
  check_position(xs, i, "creation_F");
  check_position(xs, j, "creation_F");
  if (!(i < j)) throw InputError("creation_F: requires i < j");
  const cx xi = xs[static_cast<std::size_t>(i)];
  const cx xj = xs[static_cast<std::size_t>(j)];
  const auto rest = without(xs, i, j);
  const cx eta = params.eta();
  const auto [i1, i2] = dressed_lambdas(xi, rest, params, right);
  const auto [j1, j2] = dressed_lambdas(xj, rest, params, right);
  return i1 * (kernel_z11(u, xi, xj, eta) * j1 + kernel_z12(u, xi, xj, eta) * j2) +
         i2 * (kernel_z12(u, xj, xi, eta) * j1 + kernel_z22(u, xi, xj, eta) * j2);
}

cx bethe_weight_W(const IndexSet& subset, const RootSet& roots, const ModelParams& params,
                  const TriangularBoundary& right, const TriangularBoundary& left) {
  return weight(subset, roots, params, right, left, 0);
}

cx bethe_weight_W_over_cbar(const IndexSet& subset, const RootSet& roots,
                            const ModelParams& params, const TriangularBoundary& right,
                            const TriangularBoundary& left) {
  if (subset.size() == roots.size()) {
    throw InputError("bethe_weight_W_over_cbar: complement is empty");
  }
  return weight(subset, roots, params, right, left, 1);
}

cx eigenvalue_Lambda(cx u, const RootSet& roots, const ModelParams& params,
                     const SpectralBoundary& bnd) {
  const cx eta = params.eta();
  cx t1 = kappa1(u, bnd.abar, bnd.bbar, eta) * lambda1(u, params, bnd.a, bnd.b);
  cx t2 = kappa2(u, bnd.abar, bnd.bbar, eta) * lambda2(u, params, bnd.a, bnd.b);
  for (const cx uk : roots.roots()) {
    t1 *= kernel_f(u, uk, eta);
    t2 *= kernel_h(u, uk, eta);
  }
  return t1 + t2;
}

double BetheResidual::relative_norm() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const double s = scales[k] > 0.0 ? scales[k] : 1.0;
    worst = std::max(worst, std::abs(components[k]) / s);
  }
  return worst;
}

BetheResidual bethe_residual(const RootSet& roots, const ModelParams& params,
                             const SpectralBoundary& bnd) {
  const cx eta = params.eta();
  const int n = roots.size();
  BetheResidual out;
  out.components.reserve(static_cast<std::size_t>(n));
  out.scales.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const cx uk = roots[k];
    cx t1 = lambda1(uk, params, bnd.a, bnd.b);
    cx t2 = xi_factor(uk, bnd.abar, bnd.bbar, eta) * lambda2(uk, params, bnd.a, bnd.b);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      t1 *= kernel_f(uk, roots[j], eta);
      t2 *= kernel_h(uk, roots[j], eta);
    }
    out.components.push_back(t1 - t2);
    out.scales.push_back(std::abs(t1) + std::abs(t2));
  }
  return out;
}

double CancellingSum::relative() const { return std::abs(value) / std::max(1.0, term_scale); }

CancellingSum proof_coef1(cx u, const IndexSet& subset, const RootSet& roots,
                          const ModelParams& params, const TriangularBoundary& right,
                          const TriangularBoundary& left) {
  const cx eta = params.eta();
  const auto comp = complement_vector(subset);
  CancellingSum out;
  if (comp.empty()) return out;

  const cx k1 = kappa1(u, left.a, left.b, eta);
  const cx k12 = kappa12(u, left.c, eta);
  const cx w_i = bethe_weight_W(subset, roots, params, right, left);
  cx prod_f = 1.0;
  for (int j : comp) prod_f *= kernel_f(u, roots[j], eta);
  out.value = k1 * w_i * (1.0 - prod_f);
  out.term_scale = std::abs(k1 * w_i) * (1.0 + std::abs(prod_f));

  const auto u_i = roots.subset(subset);
  for (int j : comp) {
    const cx uj = roots[j];
    const auto [l1, l2] = dressed_lambdas(uj, u_i, params, right);
    const auto cb = cb_kernels(u, uj, eta);
    const cx term = k12 * bethe_weight_W(subset.with(j), roots, params, right, left) *
                    ((cb.m + cb.l) * l1 + cb.p * l2);
    out.value += term;
    out.term_scale += std::abs(term);
  }
  return out;
}

CancellingSum proof_X(cx u, const IndexSet& subset, const RootSet& roots,
                      const ModelParams& params, const TriangularBoundary& right,
                      const TriangularBoundary& left) {
  const cx eta = params.eta();
  const auto comp = complement_vector(subset);
  CancellingSum out;
  if (comp.empty()) return out;

  const cx k1 = kappa1(u, left.a, left.b, eta);
  const cx k2 = kappa2(u, left.a, left.b, eta);
  const cx k12 = kappa12(u, left.c, eta);

  for (int j : comp) {
    const IndexSet joined = subset.with(j);
    const auto xs = roots.subset(joined);
    const auto mn = offdiag_MN(u, xs, position_in(joined, j), params, right);
    const cx w = bethe_weight_W(joined, roots, params, right, left);
    const cx t1 = w * k1 * mn.m;
    const cx t2 = w * k2 * mn.n;
    out.value += t1 + t2;
    out.term_scale += std::abs(t1) + std::abs(t2);
  }
  for (std::size_t a = 0; a < comp.size(); ++a)
    for (std::size_t b = a + 1; b < comp.size(); ++b) {
      const int j = comp[a], k = comp[b];
      const IndexSet joined = subset.with(j, k);
      const auto xs = roots.subset(joined);
      const cx term = k12 * bethe_weight_W(joined, roots, params, right, left) *
                      creation_F(u, xs, position_in(joined, j), position_in(joined, k), params, right);
      out.value += term;
      out.term_scale += std::abs(term);
    }
  return out;
}

cx rewritten_L(cx u, cx uj, const TriangularBoundary& left, cx eta) {
  const auto ex = exchange_kernels(u, uj, eta);
  const cx k1 = kappa1(u, left.a, left.b, eta);
  const cx k2 = kappa2(u, left.a, left.b, eta);
  return 2.0 * (k1 * ex.g + k2 * ex.n) * xi_factor(uj, left.a, left.b, eta) * (left.b * uj - left.a) /
         (den(2.0 * uj + eta, eta, "L", "2u_j+eta") * den(u + eta, eta, "L", "u+eta"));
}

cx rewritten_Q(cx u, cx uj, cx ul, const TriangularBoundary& left, cx eta) {
  return -4.0 * kernel_z11(u, uj, ul, eta) * xi_factor(uj, left.a, left.b, eta) *
         xi_factor(ul, left.a, left.b, eta) * (left.b * uj - left.a) * (left.b * ul - left.a) *
         (uj + ul + 2.0 * eta) /
         (den(2.0 * uj + eta, eta, "Q", "2u_j+eta") * den(2.0 * ul + eta, eta, "Q", "2u_l+eta") *
          den(uj + ul, eta, "Q", "u_j+u_l"));
}

CancellingSum proof_X_rewritten(cx u, const IndexSet& subset, const RootSet& roots,
                                const ModelParams& params, const TriangularBoundary& right,
                                const TriangularBoundary& left) {
  const cx eta = params.eta();
  const auto comp = complement_vector(subset);
  if (comp.empty()) throw InputError("proof_X_rewritten: complement is empty");

  auto h = [&](int j, int k) { return kernel_h(roots[j], roots[k], eta); };
  auto f = [&](int j, int k) { return kernel_f(roots[j], roots[k], eta); };

  cx bracket = 0.0;
  double scale = 0.0;
  for (int j : comp) {
    cx ph = 1.0, pf = 1.0;
    for (int k : comp) {
      if (k == j) continue;
      ph *= h(j, k);
      pf *= f(j, k);
    }
    const cx lj = rewritten_L(u, roots[j], left, eta);
    bracket += lj * (ph - pf);
    scale += std::abs(lj * ph) + std::abs(lj * pf);
  }
  for (int j : comp)
    for (int l : comp) {
      if (j == l) continue;
      cx ff = 1.0, hh = 1.0, fh = 1.0, hf = 1.0;
      for (int k : comp) {
        if (k == j || k == l) continue;
        ff *= f(j, k) * f(l, k);
        hh *= h(j, k) * h(l, k);
        fh *= f(j, k) * h(l, k);
        hf *= h(j, k) * f(l, k);
      }
      const cx uj = roots[j], ul = roots[l];
      const cx cj = -uj - eta, cl = -ul - eta;
      const cx terms[4] = {rewritten_Q(u, cj, cl, left, eta) * ff, rewritten_Q(u, uj, ul, left, eta) * hh,
                           rewritten_Q(u, cj, ul, left, eta) * fh, rewritten_Q(u, uj, cl, left, eta) * hf};
      for (const cx t : terms) {
        bracket += 0.5 * t;
        scale += 0.5 * std::abs(t);
      }
    }
  const cx prefactor = (u + eta) * bethe_weight_W_over_cbar(subset, roots, params, right, left);
  return {prefactor * bracket, std::abs(prefactor) * scale};
}

}  // namespace openchain
