#include "openchain/lattice.hpp"

#include <cmath>
#include <string>

#include "openchain/errors.hpp"
#include "openchain/kernels.hpp"
#include "openchain/sampling.hpp"

namespace openchain {

namespace {

void guard(cx d, cx eta, const char* what, const std::string& factor) {
  const double mag = std::abs(d);
  if (!(mag > pole_threshold(eta))) throw PoleError(what, factor, mag);
}

std::size_t quantum_dim(const ModelParams& params) { return std::size_t{1} << params.length(); }

}  // namespace

CMatrix build_R(cx u, cx eta) {
  const RWeights w = r_weights(u, eta);
  return CMatrix{{w.a, 0, 0, 0}, {0, w.b, w.c, 0}, {0, w.c, w.b, 0}, {0, 0, 0, w.a}};
}

CMatrix permutation_matrix() {
  return CMatrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
}

CMatrix MonodromyBlocks::assembled() const {
  const std::size_t d = blocks[0].rows();
  CMatrix full(2 * d, 2 * d);
  full.set_block(0, 0, blocks[0]);
  full.set_block(0, d, blocks[1]);
  full.set_block(d, 0, blocks[2]);
  full.set_block(d, d, blocks[3]);
  return full;
}

MonodromyBlocks MonodromyBlocks::split(cx u, const CMatrix& full) {
  if (!full.is_square() || full.rows() % 2 != 0) throw InputError("split: not a 2x2 block operator");
  const std::size_t d = full.rows() / 2;
  return MonodromyBlocks{u, {full.block(0, 0, d, d), full.block(0, d, d, d), full.block(d, 0, d, d),
                             full.block(d, d, d, d)}};
}

MonodromyBlocks build_monodromy(cx u, const ModelParams& params) {
  const int L = params.length();
  if ((std::size_t{2} << L) > kMaxDimension) throw SizeError("monodromy exceeds the dimension cap");
  const cx eta = params.eta();
  CMatrix full = embed_two_leg(build_R(u - params.xi()[0], eta), 0, 1, L + 1);
  for (int j = 2; j <= L; ++j) {
    full = full * embed_two_leg(build_R(u - params.xi()[static_cast<std::size_t>(j - 1)], eta), 0, j, L + 1);
  }
  return MonodromyBlocks::split(u, full);
}

MonodromyBlocks build_inverse_monodromy_at_minus(cx u, const ModelParams& params) {
  const int L = params.length();
  if ((std::size_t{2} << L) > kMaxDimension) throw SizeError("monodromy exceeds the dimension cap");
  const cx eta = params.eta();
  cx norm = 1.0;
  for (int j = 0; j < L; ++j) {
    const cx x = params.xi()[static_cast<std::size_t>(j)];
    const std::string site = std::to_string(j + 1);
    guard(eta - u - x, eta, "inverse monodromy", "eta - u - xi_" + site);
    guard(eta + u + x, eta, "inverse monodromy", "eta + u + xi_" + site);
    norm *= (eta - u - x) * (eta + u + x);
  }
  CMatrix full = embed_two_leg(build_R(u + params.xi()[static_cast<std::size_t>(L - 1)], eta), 0, L, L + 1);
  for (int j = L - 1; j >= 1; --j) {
    full = full * embed_two_leg(build_R(u + params.xi()[static_cast<std::size_t>(j - 1)], eta), 0, j, L + 1);
  }
  full *= 1.0 / norm;
  return MonodromyBlocks::split(-u, full);
}

CMatrix build_K(cx u, const Boundary& bnd, Side side, cx eta) {
  const GeneralBoundary g = as_general(bnd);
  if (side == Side::right) {
    return CMatrix{{u * g.beta + g.alpha, u * g.gamma}, {u * g.delta, -u * g.beta + g.alpha}};
  }
  const cx s = -u - eta;
  return CMatrix{{s * g.beta + g.alpha, s * g.gamma}, {s * g.delta, -s * g.beta + g.alpha}};
}

CMatrix build_K_derivative(const GeneralBoundary& right) {
  return CMatrix{{right.beta, right.gamma}, {right.delta, -right.beta}};
}

double dual_reflection_residual(const std::function<CMatrix(cx)>& kbar, cx u, cx v, cx eta) {
  const CMatrix I2 = CMatrix::identity(2);
  const CMatrix b1 = kron(kbar(u).transpose(), I2);
  const CMatrix b2 = kron(I2, kbar(v).transpose());
  const CMatrix r_minus = build_R(-u + v, eta);
  const CMatrix r_plus = build_R(-u - v - 2.0 * eta, eta);
  const CMatrix lhs = r_minus * b1 * r_plus * b2;
  const CMatrix rhs = b2 * r_plus * b1 * r_minus;
  return relative_difference(lhs, rhs);
}

CheckReport check_dual_reflection(const GeneralBoundary& left, cx eta, int samples, std::uint64_t seed,
                                  double tolerance) {
  CheckReport rep;
  rep.check_name = "dual_reflection";
  rep.parameters = json{{"eta", complex_to_json(eta)}, {"left", to_json(left)}};
  rep.seed = seed;
  rep.tolerance = tolerance;
  Sampler s(seed);
  auto kbar = [&](cx x) { return build_K(x, left, Side::left, eta); };
  for (int i = 0; i < samples; ++i) {
    const cx u = s.annulus();
    const cx v = s.annulus();
    rep.record(dual_reflection_residual(kbar, u, v, eta));
  }
  rep.finalize();
  return rep;
}

CMatrix DoubleRowBlocks::assembled() const {
  const std::size_t d = b11.rows();
  CMatrix full(2 * d, 2 * d);
  full.set_block(0, 0, b11);
  full.set_block(0, d, b12);
  full.set_block(d, 0, b21);
  full.set_block(d, d, b22);
  return full;
}

DoubleRowBlocks build_double_row(cx u, const ModelParams& params, const CMatrix& k_at_u) {
  if (k_at_u.rows() != 2 || k_at_u.cols() != 2) throw InputError("build_double_row: K must be 2x2");
  const cx eta = params.eta();
  guard(2.0 * u + eta, eta, "double-row D", "2u + eta");
  const CMatrix t = build_monodromy(u, params).assembled();
  const CMatrix tinv = build_inverse_monodromy_at_minus(u, params).assembled();
  const CMatrix k = kron(k_at_u, CMatrix::identity(quantum_dim(params)));
  const MonodromyBlocks b = MonodromyBlocks::split(u, t * k * tinv);
  DoubleRowBlocks out{u, b.blocks[0], b.blocks[1], b.blocks[2], b.blocks[3], {}, {}, {}, {}};
  out.A = out.b11;
  out.B = out.b12;
  out.C = out.b21;
  out.D = out.b22 - (eta / (2.0 * u + eta)) * out.b11;
  return out;
}

DoubleRowBlocks build_double_row(cx u, const ModelParams& params, const Boundary& right) {
  return build_double_row(u, params, build_K(u, right, Side::right, params.eta()));
}

TransferMatrix build_transfer(cx u, const ModelParams& params, const Boundary& right, const Boundary& left,
                              double form_tolerance) {
  const cx eta = params.eta();
  const DoubleRowBlocks b = build_double_row(u, params, right);
  const CMatrix kb = build_K(u, left, Side::left, eta);
  TransferMatrix out;
  out.trace_form = kb(0, 0) * b.b11 + kb(0, 1) * b.b21 + kb(1, 0) * b.b12 + kb(1, 1) * b.b22;
  const GeneralBoundary lg = as_general(left);
  if (lg.delta == cx{}) {
    const cx k1 = kappa1(u, lg.alpha, lg.beta, eta);
    const cx k2 = kappa2(u, lg.alpha, lg.beta, eta);
    const cx k12 = kappa12(u, lg.gamma, eta);
    out.triangular_form = k1 * b.A + k2 * b.D + k12 * b.C;
    out.form_mismatch = relative_difference(out.trace_form, *out.triangular_form);
    if (!(out.form_mismatch <= form_tolerance)) {
      throw FormMismatchError("transfer matrix: trace and triangular forms disagree", out.form_mismatch);
    }
  }
  return out;
}

CMatrix transfer_matrix(cx u, const ModelParams& params, const Boundary& right, const Boundary& left) {
  return build_transfer(u, params, right, left).trace_form;
}

TransferFamily::TransferFamily(ModelParams params, Boundary right, Boundary left, bool cache_enabled)
    : params_(std::move(params)), right_(right), left_(left), cache_enabled_(cache_enabled) {}

CMatrix TransferFamily::at(cx u) const {
  if (!cache_enabled_) return transfer_matrix(u, params_, right_, left_);
  const Key key{u.real(), u.imag()};
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  CMatrix t = transfer_matrix(u, params_, right_, left_);
  std::unique_lock lock(mutex_);
  return cache_.emplace(key, std::move(t)).first->second;
}

std::size_t TransferFamily::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

CMatrix build_hamiltonian(const ModelParams& params, const GeneralBoundary& right, const GeneralBoundary& left) {
  if (!params.is_homogeneous()) throw InputError("Hamiltonian requires all xi_j = 0");
  if (right.alpha == cx{}) throw InputError("Hamiltonian requires alpha != 0");
  if (left.alpha == cx{}) throw InputError("Hamiltonian requires alpha-bar != 0");
  const int L = params.length();
  const cx eta = params.eta();
  const CMatrix P = permutation_matrix();
  CMatrix h(quantum_dim(params), quantum_dim(params));
  for (int j = 1; j < L; ++j) h += embed_two_site(P, j, j + 1, L);
  h += (1.0 / (2.0 * left.alpha)) * embed_one_site(build_K(0.0, left, Side::left, eta), 1, L);
  h += (eta / (2.0 * right.alpha)) * embed_one_site(build_K_derivative(right), L, L);
  return h;
}

cx hamiltonian_derivative_factor(cx eta, const GeneralBoundary& right, const GeneralBoundary& left) {
  return eta / (4.0 * right.alpha * left.alpha);
}

}  // namespace openchain
