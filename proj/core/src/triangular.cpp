#include "openchain/triangular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "openchain/errors.hpp"
#include "openchain/lattice.hpp"

namespace openchain {

namespace {

CMatrix constant_part(const GeneralBoundary& g) {
  return CMatrix{{g.beta, g.gamma}, {g.delta, -g.beta}};
}

CMatrix inverse2(const CMatrix& m) {
  const cx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det == cx{}) throw SingularityError("singular 2x2 matrix", std::numeric_limits<double>::infinity());
  return CMatrix{{m(1, 1) / det, -m(0, 1) / det}, {-m(1, 0) / det, m(0, 0) / det}};
}

double norm2(cx x, cx y) { return std::sqrt(std::norm(x) + std::norm(y)); }

// How far v is from being an eigenvector of g: |v x gv| / (|v|^2 ||g||).
double eigen_residual(const CMatrix& g, cx v0, cx v1) {
  const double gn = g.frobenius_norm();
  if (gn == 0.0) return 0.0;
  const cx w0 = g(0, 0) * v0 + g(0, 1) * v1;
  const cx w1 = g(1, 0) * v0 + g(1, 1) * v1;
  return std::abs(v0 * w1 - v1 * w0) / (std::norm(v0) + std::norm(v1)) / gn;
}

// Eigenvector of [[beta, gamma], [delta, -beta]] for eigenvalue lambda, the
// better conditioned of the two row-derived candidates.
std::pair<cx, cx> eigenvector(const GeneralBoundary& g, cx lambda) {
  const cx p0 = lambda + g.beta, p1 = g.delta;
  const cx q0 = g.gamma, q1 = lambda - g.beta;
  if (norm2(p0, p1) >= norm2(q0, q1)) return {p0, p1};
  return {q0, q1};
}

struct Choice {
  cx v0, v1;
  cx lambda;  // eigenvalue of the right constant matrix
  bool from_right;
};

}  // namespace

cx principal_sqrt(cx z) {
  cx r = std::sqrt(z);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

cx constraint_value(const GeneralBoundary& right, const GeneralBoundary& left) {
  const cx t1 = left.delta * right.gamma - right.delta * left.gamma;
  const cx t2 = right.beta * left.gamma - left.beta * right.gamma;
  const cx t3 = left.delta * right.beta - right.delta * left.beta;
  return t1 * t1 - 4.0 * t2 * t3;
}

double constraint_scale(const GeneralBoundary& right, const GeneralBoundary& left) {
  double m = 0.0;
  for (cx x : {right.alpha, right.beta, right.gamma, right.delta, left.alpha, left.beta, left.gamma, left.delta}) {
    m = std::max(m, std::abs(x));
  }
  return std::max(1.0, std::pow(m, 4));
}

CMatrix conjugate(const CMatrix& M, const CMatrix& g) { return inverse2(M) * g * M; }

TriangularizationResult triangularize(const GeneralBoundary& right, const GeneralBoundary& left, double tol,
                                      cx probe, cx eta) {
  TriangularizationResult out;
  out.constraint_value = constraint_value(right, left);
  out.probe = probe;
  const double scale = constraint_scale(right, left);
  if (!(std::abs(out.constraint_value) <= tol * scale)) {
    throw NotTriangularizableError("boundary matrices admit no common triangular basis", out.constraint_value);
  }

  const CMatrix g_right = constant_part(right);
  const CMatrix g_left = constant_part(left);
  const cx b = principal_sqrt(right.beta * right.beta + right.gamma * right.delta);
  const cx bbar = principal_sqrt(left.beta * left.beta + left.gamma * left.delta);

  if (right.delta == cx{} && left.delta == cx{}) {
    out.M = CMatrix::identity(2);
    out.identity_M = true;
  } else {
    constexpr double vec_tol = 1e-6;
    const double tiny = 1e-14 * (1.0 + g_right.frobenius_norm());
    std::optional<Choice> choice;
    for (const double s : {1.0, -1.0}) {
      auto [v0, v1] = eigenvector(right, s * b);
      if (norm2(v0, v1) <= tiny) continue;
      if (eigen_residual(g_left, v0, v1) <= vec_tol) {
        choice = Choice{v0, v1, s * b, true};
        break;
      }
    }
    if (!choice && g_right.frobenius_norm() <= tiny) {
      // Right constant part vanishes: any eigenvector of the left one is common.
      auto [v0, v1] = eigenvector(left, bbar);
      if (norm2(v0, v1) > 1e-14 * (1.0 + g_left.frobenius_norm())) choice = Choice{v0, v1, cx{}, false};
    }
    if (!choice) {
      throw NumericalError("no common eigenvector of the boundary matrices found to tolerance");
    }

    const cx p = choice->lambda + right.beta;
    const CMatrix printed{{p, right.delta}, {right.delta, p}};
    const cx det = p * p - right.delta * right.delta;
    const double col = std::norm(p) + std::norm(right.delta);
    if (choice->from_right && col > 0.0 && std::abs(det) > 1e-8 * col) {
      out.M = printed;
      out.printed_M = true;
    } else {
      cx v0 = choice->v0, v1 = choice->v1;
      const cx pivot = std::abs(v1) > std::abs(v0) ? v1 : v0;
      v0 /= pivot;
      v1 /= pivot;
      // Second column e1 gives det = -v1, e2 gives det = v0.
      if (std::abs(v1) >= std::abs(v0)) {
        out.M = CMatrix{{v0, 1.0}, {v1, 0.0}};
      } else {
        out.M = CMatrix{{v0, 0.0}, {v1, 1.0}};
      }
    }
  }

  const CMatrix kc = conjugate(out.M, g_right);
  const CMatrix kbc = conjugate(out.M, g_left);
  out.right_tri = TriangularBoundary{right.alpha, kc(0, 0), kc(0, 1)};
  out.left_tri = TriangularBoundary{left.alpha, kbc(0, 0), kbc(0, 1)};

  const CMatrix kp = conjugate(out.M, build_K(probe, right, Side::right, eta));
  const CMatrix kbp = conjugate(out.M, build_K(probe, left, Side::left, eta));
  out.lower_left_residuals = {std::abs(kp(1, 0)) / std::max(kp.frobenius_norm(), 1e-300),
                              std::abs(kbp(1, 0)) / std::max(kbp.frobenius_norm(), 1e-300)};
  const cx s = -probe - eta;
  out.diagonal_residuals = {
      multiset_distance({kp(0, 0), kp(1, 1)}, {right.alpha + probe * b, right.alpha - probe * b}) /
          std::max(1.0, kp.frobenius_norm()),
      multiset_distance({kbp(0, 0), kbp(1, 1)}, {left.alpha + s * bbar, left.alpha - s * bbar}) /
          std::max(1.0, kbp.frobenius_norm())};
  return out;
}

CheckReport verify_parameter_map(const GeneralBoundary& right, const GeneralBoundary& left,
                                 const TriangularizationResult& result, double tolerance) {
  CheckReport rep;
  rep.check_name = "parameter_map";
  rep.parameters = json{{"right", to_json(right)}, {"left", to_json(left)}, {"printed_M", result.printed_M},
                        {"identity_M", result.identity_M}};
  rep.tolerance = tolerance;
  auto rel = [](cx x, cx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); };
  const bool check_c = result.printed_M || result.identity_M;
  for (const auto& [g, t] : {std::pair{right, result.right_tri}, std::pair{left, result.left_tri}}) {
    rep.record(rel(t.a, g.alpha));
    rep.record(rel(t.b * t.b, g.beta * g.beta + g.gamma * g.delta));
    if (check_c) rep.record(rel(t.c, g.gamma + g.delta));
  }
  if (!check_c) rep.notes.push_back("fallback M: c = gamma + delta not checked (normalization dependent)");
  rep.finalize();
  return rep;
}

}  // namespace openchain
