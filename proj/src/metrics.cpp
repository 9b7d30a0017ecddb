#include "mixclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mixclust/rng.hpp"

namespace mixclust {

double success_rate(const Partition& pred, const Partition& truth) {
  if (pred.size() != truth.size())
    throw DimensionMismatch("success_rate: length mismatch");
  const int n = static_cast<int>(truth.size());
  if (n == 0) throw InvalidSpec("success_rate: empty partitions");
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (pred[i] == truth[i]) ++m;
  return static_cast<double>(std::max(m, n - m)) / n;
}

double angle_deg(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw DimensionMismatch("angle_deg: size mismatch");
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw InvalidSpec("angle_deg: zero vector");
  const double c = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

double aligned_l2(const Vector& u, const Vector& v) {
  if (u.size() != v.size())
    throw DimensionMismatch("aligned_l2: size mismatch");
  return std::min((u - v).norm(), (u + v).norm());
}

ZDistances z_distances(const SdpSolution& sol, const Partition& truth) {
  const Matrix& f = sol.factor;
  const int n = static_cast<int>(f.rows());
  if (static_cast<int>(truth.size()) != n)
    throw DimensionMismatch("z_distances: truth length != factor rows");
  Vector xbar(n);
  for (int i = 0; i < n; ++i) {
    if (truth[i] != 1 && truth[i] != -1)
      throw InvalidSpec("z_distances: truth entries must be +-1");
    xbar[i] = truth[i];
  }

  // Stream Zhat - xbar xbar^T in row blocks; track the max absolute row sum
  // as the power-iteration shift.
  double l1 = 0.0, fr2 = 0.0, max_rowabs = 0.0;
  const int block = 512;
  for (int i0 = 0; i0 < n; i0 += block) {
    const int b = std::min(block, n - i0);
    const Matrix g = f.middleRows(i0, b) * f.transpose();
    for (int bi = 0; bi < b; ++bi) {
      const int i = i0 + bi;
      double rowabs = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = g(bi, j) - xbar[i] * xbar[j];
        rowabs += std::abs(d);
        fr2 += d * d;
      }
      l1 += rowabs;
      max_rowabs = std::max(max_rowabs, rowabs);
    }
  }

  // Near-critical factors spread Zhat over many directions, so the top
  // eigenvalue of the difference can be numerically multiple. The norm stays
  // well defined regardless; power_value judges on the monotone Rayleigh
  // quotient and never needs the (ill-conditioned) eigenvector. The matvec
  // stays in the factored form: O(nr) per step, never an n x n dense matrix.
  double opn = 0.0;
  if (max_rowabs > 0.0) {
    const double c = max_rowabs;
    Vector t(f.cols());
    for (double sgn : {1.0, -1.0}) {
      const double ext = detail::power_value(
          n,
          [&](const Vector& x, Vector& y) {
            t.noalias() = f.transpose() * x;
            y.noalias() = f * t;
            y -= xbar * xbar.dot(x);
            if (sgn < 0.0) y = -y;
            y += c * x;
          },
          c, 1e-9, 40 * n + 4000);
      opn = std::max(opn, ext);
    }
  }
  return {l1 / (static_cast<double>(n) * n), std::sqrt(fr2) / n, opn / n};
}

}  // namespace mixclust
