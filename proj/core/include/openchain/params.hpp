#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace openchain {

using cx = std::complex<double>;

/// Relative pole guard; the absolute threshold is kPoleGuard * (1 + |eta|).
inline constexpr double kPoleGuard = 1e-8;

inline double pole_threshold(cx eta) { return kPoleGuard * (1.0 + std::abs(eta)); }

/// Chain data: crossing parameter, number of sites and inhomogeneities.
class ModelParams {
 public:
  ModelParams(cx eta, std::vector<cx> xi);
  ModelParams(cx eta, int length, std::vector<cx> xi);

  /// All inhomogeneities zero.
  static ModelParams homogeneous(cx eta, int length);

  cx eta() const noexcept { return eta_; }
  int length() const noexcept { return static_cast<int>(xi_.size()); }
  std::span<const cx> xi() const noexcept { return xi_; }
  bool is_homogeneous() const;

 private:
  cx eta_;
  std::vector<cx> xi_;
};

/// Four-parameter boundary (alpha, beta, gamma, delta); the same type holds the
/// barred parameters of the left boundary.
struct GeneralBoundary {
  cx alpha, beta, gamma, delta;
};

/// Upper-triangular boundary (a, b, c); the left instance holds (a-bar, b-bar, c-bar).
struct TriangularBoundary {
  cx a, b, c;
};

using Boundary = std::variant<GeneralBoundary, TriangularBoundary>;

/// The general form equivalent to a triangular boundary (alpha=a, beta=b,
/// gamma=c, delta=0).
GeneralBoundary as_general(const TriangularBoundary& t);
GeneralBoundary as_general(const Boundary& b);

/// The c-free data that enters the Bethe equations and the eigenvalue.
struct SpectralBoundary {
  cx a, b, abar, bbar;

  static SpectralBoundary from(const TriangularBoundary& right, const TriangularBoundary& left) {
    return {right.a, right.b, left.a, left.b};
  }
};

/// Subset of {0..n-1} held as strictly increasing 0-based positions. Printed
/// 1-based.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(int n_max, std::vector<int> members);

  static IndexSet full(int n_max);
  static IndexSet empty(int n_max) { return IndexSet(n_max, {}); }

  int n_max() const noexcept { return n_max_; }
  int size() const noexcept { return static_cast<int>(members_.size()); }
  std::span<const int> members() const noexcept { return members_; }
  bool contains(int i) const;
  IndexSet complement() const;
  IndexSet with(int i) const;
  IndexSet with(int i, int j) const;

  std::string to_string() const;
  bool operator==(const IndexSet&) const = default;

 private:
  int n_max_ = 0;
  std::vector<int> members_;
};

/// Bethe parameters u_1..u_N.
class RootSet {
 public:
  RootSet() = default;
  explicit RootSet(std::vector<cx> roots) : roots_(std::move(roots)) {}

  int size() const noexcept { return static_cast<int>(roots_.size()); }
  std::span<const cx> roots() const noexcept { return roots_; }
  cx operator[](int i) const { return roots_[static_cast<std::size_t>(i)]; }

  /// Roots at the given positions, in the set's order.
  std::vector<cx> subset(const IndexSet& s) const;

 private:
  std::vector<cx> roots_;
};

/// First violated exclusion-set condition, or nothing. Checks every printed
/// denominator that involves roots: |u_k|, |2u_k+eta|, |u_k-u_j|, |u_k+u_j|,
/// |u_k+u_j+eta|, |u_k-u_j+-eta|, |u_k+u_j+2eta|, |abar-bbar u_k| and
/// |a(+-u_k+-xi_j)|.
std::optional<std::string> exclusion_violation(std::span<const cx> roots, const ModelParams& params,
                                               cx abar, cx bbar);

}  // namespace openchain
