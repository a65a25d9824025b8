#pragma once

// Dense complex linear algebra for desk-scale operators on (C^2)^{\otimes n}.
//
// Tensor legs are ordered most-significant first: on n legs the basis index is
// sum_k bit_k * 2^(n-1-k), with bit 0 meaning spin up.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace openchain {

using cx = std::complex<double>;

/// Maximum number of rows or columns of any constructed matrix.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 13;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim);
  CVector(std::initializer_list<cx> entries);
  explicit CVector(std::vector<cx> entries);

  static CVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return entries_.size(); }
  cx& operator[](std::size_t i) { return entries_[i]; }
  const cx& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const cx> entries() const noexcept { return entries_; }

  double norm() const;
  bool is_finite() const;

  CVector& operator+=(const CVector& other);
  CVector& operator-=(const CVector& other);
  CVector& operator*=(cx s);

 private:
  std::vector<cx> entries_;
};

CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator*(cx s, CVector v);

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::initializer_list<std::initializer_list<cx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cx> diag);
  static CMatrix diagonal(std::initializer_list<cx> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// Row-major entries.
  std::span<const cx> entries() const noexcept { return entries_; }
  std::span<cx> entries() noexcept { return entries_; }

  CMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const CMatrix& b);

  CMatrix transpose() const;
  cx trace() const;
  double frobenius_norm() const;
  bool is_finite() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cx> entries_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cx s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& v);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// ||a - b||_F / max(||a||_F, ||b||_F); 0 when both vanish.
double relative_difference(const CMatrix& a, const CMatrix& b);
double relative_difference(const CVector& a, const CVector& b);

/// Kronecker product, entry ((i*B.rows+k),(j*B.cols+l)) = A(i,j)*B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Places a 2x2 operator on leg `leg` of `n_legs` (0-based), identity elsewhere.
CMatrix embed_one_leg(const CMatrix& g, int leg, int n_legs);

/// Places a 4x4 operator on the ordered leg pair (first, second) of `n_legs`
/// (0-based). The first leg is the more significant index of `g`.
CMatrix embed_two_leg(const CMatrix& g, int first, int second, int n_legs);

/// Site-numbered (1..L) variant of embed_two_leg on the L-site quantum space.
CMatrix embed_two_site(const CMatrix& g, int i, int j, int length);

/// Site-numbered (1..L) variant of embed_one_leg.
CMatrix embed_one_site(const CMatrix& g, int i, int length);

struct InverseResult {
  CMatrix inverse;
  /// ||A * inverse - I||_F / ||I||_F
  double residual = 0.0;
  double condition = 0.0;
};

/// Dense inverse; throws SingularityError when the 1-norm condition estimate
/// exceeds `condition_cap`.
InverseResult inverse(const CMatrix& a, double condition_cap = 1e12);

/// Full spectrum of a general square matrix (complex Schur based).
std::vector<cx> eigenvalues(const CMatrix& a);

cx determinant(const CMatrix& a);

/// Greedy nearest matching of two equally sized multisets; returns the largest
/// matched distance.
double multiset_distance(std::vector<cx> a, std::vector<cx> b);

}  // namespace openchain
