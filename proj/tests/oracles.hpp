#pragma once

// Test-side oracles. Everything here is deliberately independent of the
// library's iterative routines: dense eigensolvers, an interior-point dual
// bound for the elliptope SDP, and exhaustive enumerations at small n.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "mixclust/rng.hpp"
#include "mixclust/types.hpp"

namespace oracles {

using mixclust::Matrix;
using mixclust::Vector;

// Largest algebraic eigenvalue and its eigenvector.
inline std::pair<double, Vector> top_eigen_dense(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("top_eigen_dense: eigensolver failed");
  const int last = static_cast<int>(s.rows()) - 1;
  return {es.eigenvalues()[last], es.eigenvectors().col(last)};
}

inline double op_norm_dense(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("op_norm_dense: eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Angle in radians treating v and -v as the same direction.
// atan2 of the orthogonal residual keeps full precision at small angles,
// where acos of the cosine loses half the significant digits.
inline double angle_rad_upto_sign(const Vector& u, const Vector& v) {
  const Vector un = u / u.norm();
  Vector vn = v / v.norm();
  if (un.dot(vn) < 0.0) vn = -vn;
  const double c = un.dot(vn);
  const double s = (un - c * vn).norm();
  return std::atan2(s, c);
}

inline Matrix random_gaussian(int rows, int cols, std::uint64_t seed) {
  mixclust::rng::CounterRng g(seed, 0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = g.next_normal();
  return m;
}

inline Matrix random_symmetric(int n, std::uint64_t seed, double scale = 1.0) {
  mixclust::rng::CounterRng g(seed, 1);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = scale * g.next_normal();
  return m;
}

// Upper bound on max <A, Z> over {Z >= 0, diag Z = I} from the dual
// min 1'y s.t. Diag(y) >= A, solved by a short-step barrier method. The
// returned value exceeds the optimum by at most abs_gap.
inline double sdp_value_dual(const Matrix& a, double abs_gap) {
  const int n = static_cast<int>(a.rows());
  if (n != a.cols()) throw std::runtime_error("sdp_value_dual: not square");
  if (abs_gap <= 0.0) throw std::runtime_error("sdp_value_dual: gap <= 0");

  // Gershgorin start keeps Diag(y) - A strictly positive definite.
  Vector y = a.cwiseAbs().rowwise().sum() + Vector::Ones(n);

  const auto barrier = [&](const Vector& yy, double t, bool* ok) {
    Matrix s = Matrix(yy.asDiagonal()) - a;
    Eigen::LLT<Matrix> llt(s);
    if (llt.info() != Eigen::Success) {
      *ok = false;
      return 0.0;
    }
    *ok = true;
    const double logdet =
        2.0 * Matrix(llt.matrixL()).diagonal().array().log().sum();
    return t * yy.sum() - logdet;
  };

  double t = 1.0;
  while (true) {
    for (int step = 0; step < 200; ++step) {
      Matrix s = Matrix(y.asDiagonal()) - a;
      Eigen::LLT<Matrix> llt(s);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("sdp_value_dual: lost feasibility");
      const Matrix sinv = llt.solve(Matrix::Identity(n, n));
      const Vector grad = Vector::Constant(n, t) - sinv.diagonal();
      const Matrix hess = sinv.cwiseProduct(sinv);
      const Vector d = hess.ldlt().solve(-grad);
      const double decrement = -grad.dot(d);
      if (!(decrement > 1e-14 * (1.0 + t * std::abs(y.sum())))) break;

      bool ok = false;
      const double f0 = barrier(y, t, &ok);
      double alpha = 1.0;
      while (alpha > 1e-14) {
        const Vector cand = y + alpha * d;
        const double f1 = barrier(cand, t, &ok);
        if (ok && f1 <= f0 - 1e-4 * alpha * decrement) {
          y = cand;
          break;
        }
        alpha *= 0.5;
      }
      if (alpha <= 1e-14) break;
    }
    if (n / t <= abs_gap) return y.sum();
    t *= 20.0;
  }
}

// max over s, t in {-1,1}^n of t' M s, by full double enumeration. Only for
// validating the single-enumeration route at very small n.
inline double inf_to_one_enum_double(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  if (n > 12) throw std::runtime_error("inf_to_one_enum_double: n too large");
  double best = -1e300;
  for (std::uint32_t cs = 0; cs < (1u << n); ++cs) {
    Vector s(n);
    for (int i = 0; i < n; ++i) s[i] = (cs >> i) & 1u ? -1.0 : 1.0;
    const Vector ms = m * s;
    for (std::uint32_t ct = 0; ct < (1u << n); ++ct) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += ((ct >> i) & 1u ? -1.0 : 1.0) * ms[i];
      best = std::max(best, v);
    }
  }
  return best;
}

// k-means cost of splitting the rows of y into {0..t-1} and {t..n-1},
// each term computed from scratch against its own centroid.
inline double split_cost_naive(const Matrix& y, int t) {
  const int n = static_cast<int>(y.rows());
  if (t < 1 || t > n - 1) throw std::runtime_error("split_cost_naive: bad t");
  const auto sse = [&](int lo, int hi) {
    const Vector mean =
        y.middleRows(lo, hi - lo).colwise().mean().transpose();
    double c = 0.0;
    for (int i = lo; i < hi; ++i)
      c += (y.row(i).transpose() - mean).squaredNorm();
    return c;
  };
  return sse(0, t) + sse(t, n);
}

}  // namespace oracles
