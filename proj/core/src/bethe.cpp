#include "openchain/bethe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include <Eigen/Dense>

#include "openchain/errors.hpp"
#include "openchain/kernels.hpp"
#include "openchain/lattice.hpp"
#include "openchain/triangular.hpp"

namespace openchain {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool root_less(cx a, cx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<cx> sorted_roots(std::vector<cx> r) {
  std::sort(r.begin(), r.end(), root_less);
  return r;
}

double min_pair_distance(std::span<const cx> r) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) d = std::min(d, std::abs(r[i] - r[j]));
  return d;
}

enum class Outcome { converged, not_converged, singular, pole, runaway };

struct Attempt {
  Outcome outcome = Outcome::not_converged;
  std::vector<cx> roots;
};

// The equations for root u_k are Phi(u_k) = 0 with
//   Phi(u) = t1(u) (u + eta) prod_j A(u, u_j) + t2(u) u prod_j B(u, u_j),
//   A(u, v) = (u - v - eta)(u + v),  B(u, v) = (u - v + eta)(u + v + 2 eta),
// the products running over all roots. Phi is odd under u -> -u - eta and
// vanishes at a root sitting at u = 0 or -eta, so
//   psi = Phi / ((2u + eta) u (u + eta))
// is a function of s = (u + eta/2)^2 alone. The solver works in s and imposes
// the divided differences psi[s_1..s_m] = 0, which drops the spurious
// solutions with u_k in {0, -eta/2, -eta}, u_j = u_k or u_j = -u_k - eta.
struct Poly {
  cx eta;
  const ModelParams* params;
  const SpectralBoundary* bnd;
  bool deflate;

  // Representative of {u, -u - eta}: w = u + eta/2 with Re w > 0, or Im w >= 0
  // when w is (numerically) imaginary, so both sides of the branch cut agree.
  cx u_of(cx s) const {
    cx w = principal_sqrt(s);
    if (std::abs(w.real()) <= 1e-10 * std::abs(w) && w.imag() < 0.0) w = -w;
    return -0.5 * eta + w;
  }

  cx psi(cx s, const std::vector<cx>& us) const {
    const cx u = u_of(s);
    const SpectralBoundary& b = *bnd;
    cx t1 = (b.a + b.b * u) * (b.abar - b.bbar * u) * (u + eta);
    cx t2 = (b.bbar * (u + eta) + b.abar) * (b.a - b.b * (u + eta)) * u;
    for (const cx x : params->xi()) {
      t1 *= (u - x + eta) * (u + x + eta);
      t2 *= (u + x) * (u - x);
    }
    for (const cx v : us) {
      t1 *= (u - v - eta) * (u + v);
      t2 *= (u - v + eta) * (u + v + 2.0 * eta);
    }
    return (t1 + t2) / ((2.0 * u + eta) * u * (u + eta));
  }

  std::vector<cx> roots(const std::vector<cx>& s) const {
    std::vector<cx> us;
    us.reserve(s.size());
    for (cx z : s) us.push_back(u_of(z));
    return us;
  }

  // Divided differences psi[s_0], psi[s_0, s_1], ...
  std::optional<std::vector<cx>> system(const std::vector<cx>& s) const {
    const std::vector<cx> us = roots(s);
    const std::size_t n = s.size();
    std::vector<cx> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = psi(s[k], us);
    std::vector<cx> out(n);
    for (std::size_t m = 0; m < n; ++m) {
      out[m] = d[m];
      for (std::size_t k = n; k-- > m + 1;) {
        const cx ds = s[k] - s[k - m - 1];
        if (ds == cx{}) return std::nullopt;
        d[k] = (d[k] - d[k - 1]) / ds;
      }
    }
    // Optionally deflate the pair surfaces u_j + u_k = 0, u_j - u_k = +-eta,
    // u_j + u_k + 2 eta = 0, which carry isolated spurious zeros such as
    // {xi_l, -xi_l}. The factor is kept holomorphic for the complex Newton
    // step; it also makes infinity attracting, so it is used on half the starts.
    cx m = 1.0;
    for (std::size_t j = 0; deflate && j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const cx e2 = eta * eta;
        const cx t = e2 + s[j] - s[k];
        m *= t * t - 4.0 * e2 * s[j];
      }
    }
    for (cx& c : out) {
      c /= m;
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return std::nullopt;
    }
    return out;
  }
};

double norm2(const std::vector<cx>& v) {
  double s = 0.0;
  for (cx c : v) s += std::norm(c);
  return std::sqrt(s);
}

// Relative residual of the rational equations, or infinity at a pole.
double rational_residual(const std::vector<cx>& us, const ModelParams& params, const SpectralBoundary& bnd) {
  try {
    return bethe_residual(RootSet(us), params, bnd).relative_norm();
  } catch (const PoleError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Roots beyond this magnitude are treated as escaping to infinity, where the
// two leading terms of the equations cancel.
double root_bound(const ModelParams& params, const SpectralBoundary& bnd, const SolverConfig& cfg) {
  double scale = 1.0 + std::abs(params.eta());
  for (cx x : params.xi()) scale = std::max(scale, 1.0 + std::abs(x));
  if (std::abs(bnd.b) > 0.0) scale = std::max(scale, std::abs(bnd.a / bnd.b));
  if (std::abs(bnd.bbar) > 0.0) scale = std::max(scale, std::abs(bnd.abar / bnd.bbar));
  return cfg.root_bound * scale;
}

Attempt newton(const std::vector<cx>& start, const ModelParams& params, const SpectralBoundary& bnd,
               const SolverConfig& cfg, bool deflate) {
  const int n = static_cast<int>(start.size());
  const Poly poly{params.eta(), &params, &bnd, deflate};
  std::vector<cx> x(start.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = (start[k] + 0.5 * poly.eta) * (start[k] + 0.5 * poly.eta);
  auto F = poly.system(x);
  if (!F) return {Outcome::pole, {}};
  const double bound = root_bound(params, bnd, cfg);
  int polish = 0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (rational_residual(poly.roots(x), params, bnd) < cfg.newton_tol) {
      // A couple of extra steps push the residual to rounding level.
      if (++polish > 2) break;
    }
    Eigen::MatrixXcd J(n, n);
    Eigen::VectorXcd rhs(n);
    for (int k = 0; k < n; ++k) rhs(k) = -(*F)[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j) {
      const double h = 1e-6 * (1.0 + std::abs(x[static_cast<std::size_t>(j)]));
      std::vector<cx> xp = x, xm = x;
      xp[static_cast<std::size_t>(j)] += h;
      xm[static_cast<std::size_t>(j)] -= h;
      const auto Fp = poly.system(xp);
      const auto Fm = poly.system(xm);
      if (!Fp || !Fm) return {Outcome::pole, {}};
      for (int k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        J(k, j) = ((*Fp)[kk] - (*Fm)[kk]) / (2.0 * h);
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
    if (!(lu.rcond() > 1e-14)) return {Outcome::singular, {}};
    const Eigen::VectorXcd dx = lu.solve(rhs);

    const double m0 = norm2((*F));
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= cfg.halvings; ++h, lambda *= 0.5) {
      std::vector<cx> xn = x;
      for (int j = 0; j < n; ++j) xn[static_cast<std::size_t>(j)] += lambda * dx(j);
      auto Fn = poly.system(xn);
      if (Fn && norm2(*Fn) < m0) {
        x = std::move(xn);
        F = std::move(Fn);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    for (cx z : x)
      if (!(std::abs(z) <= bound * bound)) return {Outcome::runaway, {}};
  }
  std::vector<cx> us = poly.roots(x);
  const double r = rational_residual(us, params, bnd);
  if (std::isinf(r)) return {Outcome::pole, {}};
  if (!(r < cfg.newton_tol)) return {Outcome::not_converged, {}};
  return {Outcome::converged, sorted_roots(std::move(us))};
}

// Starts are u = -eta/2 + w with w in an annulus. Wide starts reach out to the
// scale set by the boundary data, where roots of larger N tend to sit.
std::vector<cx> draw_start(Sampler& s, int n, const ModelParams& params, const SpectralBoundary& bnd, bool wide) {
  const cx eta = params.eta();
  const double margin = 0.05 * (1.0 + std::abs(eta));
  double rmax = 2.0;
  if (wide) {
    double scale = 1.0;
    for (cx xi : params.xi()) scale = std::max(scale, std::abs(xi));
    if (std::abs(bnd.b) > 0.0) scale = std::max(scale, std::abs(bnd.a / bnd.b));
    if (std::abs(bnd.bbar) > 0.0) scale = std::max(scale, std::abs(bnd.abar / bnd.bbar));
    rmax = 2.0 + 1.5 * std::min(scale, 30.0) * (1.0 + 0.5 * n);
  }
  std::vector<cx> x;
  while (static_cast<int>(x.size()) < n) {
    const cx u = -0.5 * eta + s.annulus([&](cx w) {
      const cx z = -0.5 * eta + w;
      if (std::abs(2.0 * z + eta) < margin || std::abs(bnd.abar - bnd.bbar * z) < margin) return false;
      for (cx xi : params.xi())
        if (std::abs(z + xi + eta) < margin || std::abs(-z - xi + eta) < margin ||
            std::abs(z - xi + eta) < margin || std::abs(-z + xi + eta) < margin)
          return false;
      for (cx y : x)
        if (std::abs(z - y) < margin || std::abs(z + y + eta) < margin || std::abs(z + y) < margin)
          return false;
      return true;
    }, 0.1, rmax);
    x.push_back(u);
  }
  return x;
}

bool same_fingerprint(const std::vector<cx>& a, const std::vector<cx>& b, double tol) {
  bool any = false;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (std::isnan(a[i].real()) || std::isnan(b[i].real())) continue;
    any = true;
    if (std::abs(a[i] - b[i]) > tol * std::max(1.0, std::abs(a[i]))) return false;
  }
  return any;
}

json finite_or_null(cx z) {
  if (std::isfinite(z.real()) && std::isfinite(z.imag())) return complex_to_json(z);
  return nullptr;
}

}  // namespace

std::vector<IndexSet> enumerate_index_sets(int n) {
  if (n < 0) throw InputError("enumerate_index_sets: negative N");
  if (n > 20) throw SizeError("enumerate_index_sets: N above 20");
  std::vector<IndexSet> out;
  out.reserve(std::size_t{1} << n);
  for (int size = 0; size <= n; ++size) {
    // Lexicographic size-combinations of {0..n-1}.
    std::vector<int> c(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) c[static_cast<std::size_t>(i)] = i;
    while (true) {
      out.emplace_back(n, c);
      int i = size - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::array<cx, 5> fingerprint_grid() {
  return {cx{0.37, 0.21}, cx{-0.53, 0.44}, cx{0.81, -0.29}, cx{1.13, 0.62}, cx{-0.24, -0.91}};
}

BetheState make_state(RootSet roots, const ModelParams& params, const SpectralBoundary& bnd) {
  BetheState s;
  s.n = roots.size();
  s.residual_norm = bethe_residual(roots, params, bnd).relative_norm();
  for (cx u : fingerprint_grid()) {
    try {
      s.lambda_fingerprint.push_back(eigenvalue_Lambda(u, roots, params, bnd));
    } catch (const PoleError&) {
      s.lambda_fingerprint.push_back(cx{kNaN, kNaN});
    }
  }
  s.roots = std::move(roots);
  return s;
}

json to_json(const BetheState& s) {
  json roots = json::array();
  for (cx u : s.roots.roots()) roots.push_back(complex_to_json(u));
  json fp = json::array();
  for (cx z : s.lambda_fingerprint) fp.push_back(finite_or_null(z));
  return json{{"N", s.n},
              {"roots", roots},
              {"residual_norm", s.residual_norm},
              {"lambda_fingerprint", fp},
              {"near_degenerate", s.near_degenerate},
              {"family", s.family}};
}

CVector vacuum(int length) {
  if (length < 1 || length > 13) throw SizeError("vacuum: unsupported chain length");
  return CVector::basis(std::size_t{1} << length, 0);
}

CVector b_product_on_vacuum(std::span<const cx> xs, const ModelParams& params, const TriangularBoundary& right) {
  CVector v = vacuum(params.length());
  for (std::size_t k = xs.size(); k-- > 0;) v = build_double_row(xs[k], params, Boundary{right}).B * v;
  return v;
}

BetheVector build_bethe_vector(const BetheState& state, const ModelParams& params,
                               const TriangularBoundary& right, const TriangularBoundary& left, bool reversed) {
  if (auto bad = exclusion_violation(state.roots.roots(), params, left.a, left.b)) {
    throw InputError("build_bethe_vector: " + *bad);
  }
  const int n = state.roots.size();
  std::vector<CMatrix> b_ops;
  b_ops.reserve(static_cast<std::size_t>(n));
  for (cx u : state.roots.roots()) b_ops.push_back(build_double_row(u, params, Boundary{right}).B);

  BetheVector out;
  out.state = state;
  out.vector = CVector(std::size_t{1} << params.length());
  double scale = 0.0;
  for (const IndexSet& I : enumerate_index_sets(n)) {
    const cx w = bethe_weight_W(I, state.roots, params, right, left);
    if (w == cx{}) continue;
    CVector v = vacuum(params.length());
    const auto m = I.members();
    if (reversed) {
      for (int i : m) v = b_ops[static_cast<std::size_t>(i)] * v;
    } else {
      for (std::size_t k = m.size(); k-- > 0;) v = b_ops[static_cast<std::size_t>(m[k])] * v;
    }
    scale = std::max(scale, std::abs(w) * v.norm());
    out.vector += w * v;
    out.trace.emplace_back(I, w);
  }
  if (!(out.vector.norm() >= 1e-12 * scale) || scale == 0.0) {
    throw NumericalError("Bethe vector vanishes for roots with N = " + std::to_string(n));
  }
  return out;
}

json SolveDiagnostics::to_json() const {
  return json{{"starts", starts},           {"converged", converged},
              {"not_converged", not_converged}, {"singular_jacobian", singular_jacobian},
              {"pole_hits", pole_hits},     {"excluded", excluded},
              {"degenerate", degenerate},   {"duplicates", duplicates},
              {"runaway", runaway},         {"rounds", rounds},
              {"excess_override", excess_override}};
}

std::optional<RootSet> newton_refine(std::vector<cx> start, const ModelParams& params, const SpectralBoundary& bnd,
                                     const SolverConfig& config) {
  Attempt a = newton(start, params, bnd, config, false);
  if (a.outcome != Outcome::converged) a = newton(start, params, bnd, config, true);
  if (a.outcome != Outcome::converged) return std::nullopt;
  return RootSet(std::move(a.roots));
}

SolveResult solve_bethe(int n, const ModelParams& params, const SpectralBoundary& bnd, const SolverConfig& cfg) {
  if (n < 0) throw InputError("solve_bethe: negative N");
  SolveResult out;
  if (n > params.length()) {
    if (!cfg.allow_excess) throw InputError("solve_bethe: N exceeds L (override not enabled)");
    out.diagnostics.excess_override = true;
  }
  if (n == 0) {
    out.states.push_back(make_state(RootSet{}, params, bnd));
    out.states.back().family = 0;
    return out;
  }

  const int starts = std::max(0, cfg.starts);
  const Sampler root_sampler(cfg.seed);
  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max(1, starts)));
  std::vector<std::vector<cx>> candidates;

  for (int round = 0; round <= std::max(0, cfg.retry_rounds) && candidates.empty(); ++round) {
    ++out.diagnostics.rounds;
    out.diagnostics.starts += starts;
    std::vector<Attempt> attempts(static_cast<std::size_t>(starts));
    const std::uint64_t offset = static_cast<std::uint64_t>(round) * static_cast<std::uint64_t>(starts);
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int s; (s = next.fetch_add(1)) < starts;) {
        Sampler sm(root_sampler.derive(static_cast<std::uint64_t>(n) * 1000003ULL + offset +
                                       static_cast<std::uint64_t>(s)));
        attempts[static_cast<std::size_t>(s)] = newton(draw_start(sm, n, params, bnd, s % 4 >= 2), params, bnd, cfg, s % 2 == 1);
      }
    };
    std::vector<std::future<void>> jobs;
    for (unsigned w = 1; w < workers; ++w) jobs.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& j : jobs) j.get();

    for (auto& att : attempts) {
      switch (att.outcome) {
        case Outcome::pole:
          ++out.diagnostics.pole_hits;
          continue;
        case Outcome::singular:
          ++out.diagnostics.singular_jacobian;
          continue;
        case Outcome::not_converged:
          ++out.diagnostics.not_converged;
          continue;
        case Outcome::runaway:
          ++out.diagnostics.runaway;
          continue;
        case Outcome::converged:
          ++out.diagnostics.converged;
          break;
      }
      if (min_pair_distance(att.roots) < cfg.degenerate_tol) {
        ++out.diagnostics.degenerate;
        continue;
      }
      if (exclusion_violation(att.roots, params, bnd.abar, bnd.bbar)) {
        ++out.diagnostics.excluded;
        continue;
      }
      candidates.push_back(std::move(att.roots));
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), root_less);
  });

  std::vector<std::vector<cx>> accepted;
  for (auto& c : candidates) {
    double mag = 0.0;
    for (cx u : c) mag = std::max(mag, std::abs(u));
    const bool dup = std::any_of(accepted.begin(), accepted.end(), [&](const auto& a) {
      return multiset_distance(a, c) <= cfg.dedup_tol * (1.0 + mag);
    });
    if (dup) {
      ++out.diagnostics.duplicates;
      continue;
    }
    accepted.push_back(std::move(c));
  }

  int families = 0;
  for (auto& roots : accepted) {
    BetheState st = make_state(RootSet(roots), params, bnd);
    st.near_degenerate = min_pair_distance(roots) < cfg.near_degenerate_tol;
    for (const auto& prev : out.states) {
      if (same_fingerprint(prev.lambda_fingerprint, st.lambda_fingerprint, cfg.fingerprint_tol)) {
        st.family = prev.family;
        break;
      }
    }
    if (st.family < 0) st.family = families++;
    out.states.push_back(std::move(st));
  }
  return out;
}

cx admissible_probe(Sampler& s, const ModelParams& params, std::span<const cx> roots) {
  const cx eta = params.eta();
  const double margin = 0.05 * (1.0 + std::abs(eta));
  return s.annulus([&](cx u) {
    if (std::abs(2.0 * u + eta) < margin) return false;
    for (cx x : params.xi())
      if (std::abs(eta - u - x) < margin || std::abs(eta + u + x) < margin || std::abs(eta + u - x) < margin ||
          std::abs(eta - u + x) < margin)
        return false;
    for (cx r : roots)
      if (std::abs(u - r) < margin || std::abs(u + r + eta) < margin) return false;
    return true;
  });
}

EigenpairVerification verify_eigenpair(const BetheState& state, const ModelParams& params,
                                       const TriangularBoundary& right, const TriangularBoundary& left, int probes,
                                       std::uint64_t seed, double eig_tol, double match_tol) {
  EigenpairVerification out;
  CheckReport& rep = out.report;
  rep.check_name = "eigenpair";
  rep.seed = seed;
  rep.tolerance = eig_tol;
  rep.parameters = json{{"model", to_json(params)},
                        {"right", to_json(right)},
                        {"left", to_json(left)},
                        {"state", to_json(state)}};
  BetheVector bv;
  try {
    bv = build_bethe_vector(state, params, right, left);
  } catch (const Error& e) {
    rep.record(std::numeric_limits<double>::infinity());
    rep.notes.push_back(e.what());
    rep.finalize();
    return out;
  }
  const SpectralBoundary bnd = SpectralBoundary::from(right, left);
  const double phi_norm = bv.vector.norm();
  Sampler s(seed);
  json points = json::array();
  out.dense_checked = (std::size_t{1} << params.length()) <= 64;
  for (int p = 0; p < probes; ++p) {
    const cx u = admissible_probe(s, params, state.roots.roots());
    points.push_back(complex_to_json(u));
    const CMatrix t = transfer_matrix(u, params, Boundary{right}, Boundary{left});
    const cx lambda = eigenvalue_Lambda(u, state.roots, params, bnd);
    const CVector diff = t * bv.vector - lambda * bv.vector;
    const double r = diff.norm() / (t.frobenius_norm() * phi_norm);
    rep.record(r);
    out.probes.push_back({u, lambda, r});
    if (out.dense_checked) {
      double best = std::numeric_limits<double>::infinity();
      for (cx ev : eigenvalues(t)) best = std::min(best, std::abs(ev - lambda) / std::max(1.0, std::abs(lambda)));
      out.max_eigenvalue_distance = std::max(out.max_eigenvalue_distance, best);
    }
  }
  rep.parameters["probes"] = points;
  rep.finalize();
  if (out.dense_checked) {
    out.eigenvalues_matched = out.max_eigenvalue_distance <= match_tol;
    rep.parameters["max_eigenvalue_distance"] = out.max_eigenvalue_distance;
    if (!out.eigenvalues_matched) rep.notes.push_back("Lambda(u) does not match the dense spectrum");
  } else {
    rep.notes.push_back("dense spectrum comparison skipped (dimension > 64)");
  }
  return out;
}

}  // namespace openchain
