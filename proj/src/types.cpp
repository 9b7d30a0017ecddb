#include "mixclust/types.hpp"

#include <cmath>
#include <cstdlib>

namespace mixclust {

SymmetricMatrix::SymmetricMatrix(int n) : n_(n) {
  if (n < 0) throw DimensionMismatch("SymmetricMatrix: negative order");
  upper_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
}

std::size_t SymmetricMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw DimensionMismatch("SymmetricMatrix: index out of range");
  if (i > j) std::swap(i, j);
  // Row-major upper triangle: row i starts after i full rows of shrinking width.
  return static_cast<std::size_t>(i) * (2 * n_ - i + 1) / 2 + (j - i);
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymmetricMatrix SymmetricMatrix::from_dense(const Matrix& m, double tol) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("from_dense: matrix not square");
  const int n = static_cast<int>(m.rows());
  const double scale = m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
  SymmetricMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double a = m(i, j), b = m(j, i);
      if (std::abs(a - b) > tol * std::max(1.0, scale))
        throw InvalidSpec("from_dense: input is not symmetric");
      if (!std::isfinite(a) || !std::isfinite(b))
        throw InvalidSpec("from_dense: non-finite entry");
      out.set(i, j, 0.5 * (a + b));
    }
  }
  return out;
}

Matrix SymmetricMatrix::dense() const {
  Matrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) m(i, j) = m(j, i) = (*this)(i, j);
  return m;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::grand_sum() const {
  double diag = 0.0, upper = 0.0;
  for (int i = 0; i < n_; ++i) {
    diag += (*this)(i, i);
    for (int j = i + 1; j < n_; ++j) upper += (*this)(i, j);
  }
  return diag + 2.0 * upper;
}

double SymmetricMatrix::inner(const SymmetricMatrix& o) const {
  if (o.n_ != n_) throw DimensionMismatch("inner: order mismatch");
  double diag = 0.0, upper = 0.0;
  for (int i = 0; i < n_; ++i) {
    diag += (*this)(i, i) * o(i, i);
    for (int j = i + 1; j < n_; ++j) upper += (*this)(i, j) * o(i, j);
  }
  return diag + 2.0 * upper;
}

double SymmetricMatrix::quad(const Vector& x) const {
  if (x.size() != n_) throw DimensionMismatch("quad: size mismatch");
  double diag = 0.0, upper = 0.0;
  for (int i = 0; i < n_; ++i) {
    diag += (*this)(i, i) * x[i] * x[i];
    for (int j = i + 1; j < n_; ++j) upper += (*this)(i, j) * x[i] * x[j];
  }
  return diag + 2.0 * upper;
}

double SymmetricMatrix::max_abs() const {
  double m = 0.0;
  for (double v : upper_) m = std::max(m, std::abs(v));
  return m;
}

double SymmetricMatrix::inf_norm() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    worst = std::max(worst, row);
  }
  return worst;
}

SymmetricMatrix& SymmetricMatrix::add_scaled_identity(double c) {
  for (int i = 0; i < n_; ++i) add(i, i, c);
  return *this;
}

SymmetricMatrix& SymmetricMatrix::scale(double c) {
  for (double& v : upper_) v *= c;
  return *this;
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.order() != b.order()) throw DimensionMismatch("operator-: order mismatch");
  SymmetricMatrix out(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = i; j < a.order(); ++j) out.set(i, j, a(i, j) - b(i, j));
  return out;
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.order() != b.order()) throw DimensionMismatch("operator+: order mismatch");
  SymmetricMatrix out(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = i; j < a.order(); ++j) out.set(i, j, a(i, j) + b(i, j));
  return out;
}

}  // namespace mixclust
