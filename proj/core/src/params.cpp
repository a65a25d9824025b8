#include "openchain/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "openchain/errors.hpp"

namespace openchain {

PoleError::PoleError(std::string kernel, std::string factor, double magnitude)
    : Error("pole in " + kernel + ": |" + factor + "| = " + std::to_string(magnitude) +
            " below guard"),
      kernel_(std::move(kernel)),
      factor_(std::move(factor)),
      magnitude_(magnitude) {}

ModelParams::ModelParams(cx eta, std::vector<cx> xi) : eta_(eta), xi_(std::move(xi)) {
  if (!(std::abs(eta_) > 0.0)) throw InputError("eta must be nonzero");
  if (xi_.empty()) throw InputError("chain length must be at least 1");
}

ModelParams::ModelParams(cx eta, int length, std::vector<cx> xi) : ModelParams(eta, std::move(xi)) {
  if (length != this->length()) {
    throw InputError("xi has " + std::to_string(this->length()) + " entries, expected " +
                     std::to_string(length));
  }
}

ModelParams ModelParams::homogeneous(cx eta, int length) {
  if (length < 1) throw InputError("chain length must be at least 1");
  return ModelParams(eta, std::vector<cx>(static_cast<std::size_t>(length), cx{}));
}

bool ModelParams::is_homogeneous() const {
  return std::all_of(xi_.begin(), xi_.end(), [](cx x) { return x == cx{}; });
}

GeneralBoundary as_general(const TriangularBoundary& t) { return {t.a, t.b, t.c, cx{}}; }

GeneralBoundary as_general(const Boundary& b) {
  if (const auto* g = std::get_if<GeneralBoundary>(&b)) return *g;
  return as_general(std::get<TriangularBoundary>(b));
}

// --- IndexSet --------------------------------------------------------------

IndexSet::IndexSet(int n_max, std::vector<int> members) : n_max_(n_max), members_(std::move(members)) {
  if (n_max_ < 0) throw InputError("IndexSet: negative n_max");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] >= n_max_) throw InputError("IndexSet: member out of range");
    if (i > 0 && members_[i] <= members_[i - 1]) {
      throw InputError("IndexSet: members must be strictly increasing");
    }
  }
}

IndexSet IndexSet::full(int n_max) {
  std::vector<int> m(static_cast<std::size_t>(n_max));
  for (int i = 0; i < n_max; ++i) m[static_cast<std::size_t>(i)] = i;
  return IndexSet(n_max, std::move(m));
}

bool IndexSet::contains(int i) const { return std::binary_search(members_.begin(), members_.end(), i); }

IndexSet IndexSet::complement() const {
  std::vector<int> m;
  for (int i = 0; i < n_max_; ++i)
    if (!contains(i)) m.push_back(i);
  return IndexSet(n_max_, std::move(m));
}

IndexSet IndexSet::with(int i) const {
  if (contains(i)) throw InputError("IndexSet::with: element already present");
  std::vector<int> m = members_;
  m.insert(std::upper_bound(m.begin(), m.end(), i), i);
  return IndexSet(n_max_, std::move(m));
}

IndexSet IndexSet::with(int i, int j) const { return with(i).with(j); }

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ',';
    os << members_[i] + 1;
  }
  os << '}';
  return os.str();
}

std::vector<cx> RootSet::subset(const IndexSet& s) const {
  std::vector<cx> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (int i : s.members()) out.push_back(roots_.at(static_cast<std::size_t>(i)));
  return out;
}

std::optional<std::string> exclusion_violation(std::span<const cx> roots, const ModelParams& params,
                                               cx abar, cx bbar) {
  const cx eta = params.eta();
  const double guard = pole_threshold(eta);
  auto small = [guard](cx z) { return std::abs(z) <= guard; };
  const std::size_t n = roots.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cx u = roots[k];
    const std::string tag = "u_" + std::to_string(k + 1);
    if (small(u)) return tag + " = 0";
    if (small(2.0 * u + eta)) return "2" + tag + " + eta = 0";
    if (small(abar - bbar * u)) return "abar - bbar " + tag + " = 0";
    for (const cx x : params.xi()) {
      if (small(u - x + eta) || small(-u - x + eta) || small(u + x + eta) || small(-u + x + eta)) {
        return "a(+-" + tag + " +- xi) = 0";
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      const cx v = roots[j];
      const std::string pair = "(" + std::to_string(k + 1) + "," + std::to_string(j + 1) + ")";
      if (small(u - v)) return "coinciding roots " + pair;
      if (small(u + v)) return "u_k + u_j = 0 for " + pair;
      if (small(u + v + eta)) return "u_k + u_j + eta = 0 for " + pair;
      if (small(u + v + 2.0 * eta)) return "u_k + u_j + 2eta = 0 for " + pair;
      if (small(u - v + eta) || small(u - v - eta)) return "u_k - u_j = +-eta for " + pair;
    }
  }
  return std::nullopt;
}

}  // namespace openchain
