#include "openchain/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "openchain/errors.hpp"

namespace openchain {
namespace {

using EigenMatrix = Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_dimension(std::size_t rows, std::size_t cols) {
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw SizeError("matrix dimension " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " exceeds cap " + std::to_string(kMaxDimension));
  }
}

Eigen::Map<const EigenMatrix> as_eigen(const CMatrix& a) {
  return {a.entries().data(), static_cast<Eigen::Index>(a.rows()),
          static_cast<Eigen::Index>(a.cols())};
}

CMatrix from_eigen(const EigenMatrix& m) {
  CMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  std::copy(m.data(), m.data() + m.size(), out.entries().begin());
  return out;
}

void require_square(const CMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw InputError(std::string(op) + ": matrix is not square");
  }
}

std::size_t pow2(int n) {
  if (n < 0 || n > 13) {
    throw SizeError("2^" + std::to_string(n) + " legs exceeds dimension cap");
  }
  return std::size_t{1} << n;
}

}  // namespace

// --- CVector ---------------------------------------------------------------

CVector::CVector(std::size_t dim) : entries_(dim) { check_dimension(dim, 1); }
CVector::CVector(std::initializer_list<cx> entries) : entries_(entries) {}
CVector::CVector(std::vector<cx> entries) : entries_(std::move(entries)) {}

CVector CVector::basis(std::size_t dim, std::size_t index) {
  CVector v(dim);
  v[index] = 1.0;
  return v;
}

double CVector::norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

bool CVector::is_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CVector& CVector::operator+=(const CVector& other) {
  if (other.dim() != dim()) throw InputError("vector dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& other) {
  if (other.dim() != dim()) throw InputError("vector dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

CVector& CVector::operator*=(cx s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }
CVector operator*(cx s, CVector v) { return v *= s; }

// --- CMatrix ---------------------------------------------------------------

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dimension(rows, cols);
  entries_.assign(rows * cols, cx{});
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  check_dimension(rows_, cols_);
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cx> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<cx> diag) {
  return diagonal(std::span<const cx>(diag.begin(), diag.size()));
}

CMatrix CMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                       std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw InputError("block out of range");
  CMatrix b(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    std::copy_n(&(*this)(row0 + i, col0), ncols, &b(i, 0));
  }
  return b;
}

void CMatrix::set_block(std::size_t row0, std::size_t col0, const CMatrix& b) {
  if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_) throw InputError("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::copy_n(&b(i, 0), b.cols(), &(*this)(row0 + i, col0));
  }
}

CMatrix CMatrix::transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

cx CMatrix::trace() const {
  require_square(*this, "trace");
  cx s{};
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

bool CMatrix::is_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw InputError("matrix shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw InputError("matrix shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cx s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  CMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cx* crow = &c(i, 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cx aik = a(i, k);
      if (aik == cx{}) continue;
      const cx* brow = &b(k, 0);
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

CVector operator*(const CMatrix& a, const CVector& v) {
  if (a.cols() != v.dim()) throw InputError("matrix-vector shape mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cx s{};
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
    out[i] = s;
  }
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double relative_difference(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max(a.frobenius_norm(), b.frobenius_norm());
  if (scale == 0.0) return 0.0;
  return (a - b).frobenius_norm() / scale;
}

double relative_difference(const CVector& a, const CVector& b) {
  const double scale = std::max(a.norm(), b.norm());
  if (scale == 0.0) return 0.0;
  return (a - b).norm() / scale;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  check_dimension(rows, cols);
  CMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cx aij = a(i, j);
      if (aij == cx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CMatrix embed_one_leg(const CMatrix& g, int leg, int n_legs) {
  if (g.rows() != 2 || g.cols() != 2) throw InputError("embed_one_leg: operator must be 2x2");
  if (leg < 0 || leg >= n_legs) throw InputError("embed_one_leg: leg out of range");
  const std::size_t dim = pow2(n_legs);
  const int shift = n_legs - 1 - leg;
  CMatrix out(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t bit = (col >> shift) & 1U;
    const std::size_t rest = col & ~(std::size_t{1} << shift);
    for (std::size_t r = 0; r < 2; ++r) {
      const cx v = g(r, bit);
      if (v == cx{}) continue;
      out(rest | (r << shift), col) += v;
    }
  }
  return out;
}

CMatrix embed_two_leg(const CMatrix& g, int first, int second, int n_legs) {
  if (g.rows() != 4 || g.cols() != 4) throw InputError("embed_two_leg: operator must be 4x4");
  if (first == second) throw InputError("embed_two_leg: legs must differ");
  if (first < 0 || second < 0 || first >= n_legs || second >= n_legs) {
    throw InputError("embed_two_leg: leg out of range");
  }
  const std::size_t dim = pow2(n_legs);
  const int s1 = n_legs - 1 - first;
  const int s2 = n_legs - 1 - second;
  const std::size_t mask = ~((std::size_t{1} << s1) | (std::size_t{1} << s2));
  CMatrix out(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t in = (((col >> s1) & 1U) << 1) | ((col >> s2) & 1U);
    const std::size_t rest = col & mask;
    for (std::size_t r = 0; r < 4; ++r) {
      const cx v = g(r, in);
      if (v == cx{}) continue;
      const std::size_t row = rest | ((r >> 1) << s1) | ((r & 1U) << s2);
      out(row, col) += v;
    }
  }
  return out;
}

CMatrix embed_two_site(const CMatrix& g, int i, int j, int length) {
  if (i < 1 || j < 1 || i > length || j > length) {
    throw InputError("embed_two_site: site out of range 1.." + std::to_string(length));
  }
  if (i == j) throw InputError("embed_two_site: sites must differ");
  return embed_two_leg(g, i - 1, j - 1, length);
}

CMatrix embed_one_site(const CMatrix& g, int i, int length) {
  if (i < 1 || i > length) {
    throw InputError("embed_one_site: site out of range 1.." + std::to_string(length));
  }
  return embed_one_leg(g, i - 1, length);
}

InverseResult inverse(const CMatrix& a, double condition_cap) {
  require_square(a, "inverse");
  const auto m = as_eigen(a);
  Eigen::PartialPivLU<EigenMatrix> lu(m);
  const double rcond = lu.rcond();
  const double condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(condition <= condition_cap)) {
    throw SingularityError("inverse: condition estimate " + std::to_string(condition) +
                               " above cap",
                           condition);
  }
  EigenMatrix inv = lu.inverse();
  InverseResult out;
  out.inverse = from_eigen(inv);
  const auto n = static_cast<Eigen::Index>(a.rows());
  out.residual = (m * inv - EigenMatrix::Identity(n, n)).norm() / std::sqrt(static_cast<double>(n));
  out.condition = condition;
  return out;
}

std::vector<cx> eigenvalues(const CMatrix& a) {
  require_square(a, "eigenvalues");
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(Eigen::MatrixXcd(as_eigen(a)), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: QR iteration did not converge for dimension " +
                         std::to_string(a.rows()));
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

cx determinant(const CMatrix& a) {
  require_square(a, "determinant");
  if (a.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<EigenMatrix>(as_eigen(a)).determinant();
}

double multiset_distance(std::vector<cx> a, std::vector<cx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  std::vector<bool> used_a(n, false), used_b(n, false);
  double worst = 0.0;
  // Repeatedly pair the globally closest remaining elements.
  for (std::size_t step = 0; step < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used_a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_b[j]) continue;
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace openchain
