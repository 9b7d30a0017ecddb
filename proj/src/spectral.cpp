#include "mixclust/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "mixclust/sdp.hpp"

namespace mixclust {

namespace detail {

EigenResult power_iteration(
    int n, const std::function<void(const Vector&, Vector&)>& shifted_matvec,
    double shift, double tol, int max_iters, double residual_floor) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 / (i + 1);
  v /= v.norm();
  Vector w(n);

  double prev = std::numeric_limits<double>::infinity();
  double best_res = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int it = 1; it <= max_iters; ++it) {
    shifted_matvec(v, w);
    const double ray = v.dot(w);       // eigenvalue of the shifted operator
    const double lam = ray - shift;    // eigenvalue of S
    const double residual = (w - ray * v).norm();
    if (residual <= std::max(tol * std::abs(lam), residual_floor)) {
      for (int i = 0; i < n; ++i) {
        if (v[i] != 0.0) {
          if (v[i] < 0.0) v = -v;
          break;
        }
      }
      return {lam, std::move(v), it, residual};
    }
    // Degenerate top pair: the Rayleigh quotient has frozen AND the residual
    // has stopped decaying. Healthy convergence keeps shrinking the residual
    // geometrically, so the second condition resets the counter.
    if (std::abs(ray - prev) <= 1e-14 * (std::abs(ray) + 1.0) &&
        residual > 0.99 * best_res) {
      if (++stall >= 50)
        throw DegenerateSpectrum(
            "power iteration: Rayleigh quotient stalled with large residual "
            "(top eigenvalue numerically multiple)");
    } else {
      stall = 0;
    }
    best_res = std::min(best_res, residual);
    prev = ray;
    const double wn = w.norm();
    if (wn == 0.0) {  // kernel of the shifted operator; residual check caught
      return {-shift, std::move(v), it, 0.0};
    }
    v = w / wn;
  }
  throw NonConvergence("power iteration: iteration cap reached");
}

double power_value(
    int n, const std::function<void(const Vector&, Vector&)>& shifted_matvec,
    double shift, double tol, int max_iters) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 / (i + 1);
  v /= v.norm();
  Vector w(n);

  double value = -shift;
  int stall = 0;
  for (int it = 0; it < max_iters; ++it) {
    shifted_matvec(v, w);
    const double ray = v.dot(w);
    stall = ray - (value + shift) <= tol * (shift + std::abs(ray)) ? stall + 1
                                                                   : 0;
    value = ray - shift;
    if (stall >= 10) break;
    const double wn = w.norm();
    if (wn == 0.0) break;  // kernel of the shifted operator
    v = w / wn;
  }
  return value;
}

}  // namespace detail

EigenResult top_eigen(const SymmetricMatrix& s, double tol) {
  if (!(tol > 0.0)) throw InvalidSpec("top_eigen: tol must be > 0");
  const int n = s.order();
  const double c = s.inf_norm();
  const Matrix d = s.dense();
  const auto mv = [&](const Vector& x, Vector& y) {
    y.noalias() = d * x;
    y.noalias() += c * x;
  };
  return detail::power_iteration(n, mv, c, tol, 10 * n + 1000);
}

Vector reference_v1(const MixtureSpec& spec) {
  spec.validate();
  const int n1 = spec.n1();
  const double w1 = spec.w1_realized();
  const double w2 = spec.w2_realized();
  const double s = 1.0 / std::sqrt(w1 * w2 * spec.n);
  Vector v(spec.n);
  for (int i = 0; i < spec.n; ++i) v[i] = i < n1 ? w2 * s : -w1 * s;
  return v;
}

Partition peng_wei_split(const Vector& v, const Matrix& y) {
  const int n = static_cast<int>(v.size());
  if (y.rows() != n) throw DimensionMismatch("peng_wei_split: rows != |v|");
  Partition part = Partition::Constant(n, 1);
  if (n < 2) return part;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return v[a] > v[b]; });

  const int p = static_cast<int>(y.cols());
  Vector total = Vector::Zero(p);
  double total_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    total += y.row(i);
    total_sq += y.row(i).squaredNorm();
  }

  Vector head = Vector::Zero(p);
  double head_sq = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
  int best_t = 1;
  for (int t = 1; t < n; ++t) {
    head += y.row(order[t - 1]);
    head_sq += y.row(order[t - 1]).squaredNorm();
    const double cost = (head_sq - head.squaredNorm() / t) +
                        ((total_sq - head_sq) -
                         (total - head).squaredNorm() / (n - t));
    if (cost < best_cost) {
      best_cost = cost;
      best_t = t;
    }
  }

  const double threshold = v[order[best_t - 1]];
  for (int i = 0; i < n; ++i) part[i] = v[i] >= threshold ? 1 : -1;
  return part;
}

Partition sign_split(const Vector& v) { return round_signs(v); }

SymmetricMatrix z1_projector(const SymmetricMatrix& z) {
  const int n = z.order();
  const Matrix zd = z.dense();
  const Vector rowsum = zd.rowwise().sum();
  for (int i = 0; i < n; ++i)
    if (std::abs(rowsum[i] - 1.0) > 1e-8)
      throw InvalidSpec("z1_projector: Z 1 != 1");
  const double grand = rowsum.sum();
  SymmetricMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      out.set(i, j,
              zd(i, j) - rowsum[i] / n - rowsum[j] / n + grand / (n * double(n)));
  return out;
}

}  // namespace mixclust
