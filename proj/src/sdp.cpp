#include "mixclust/sdp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <json.hpp>

#include "mixclust/rng.hpp"

namespace mixclust {

void SolverOptions::validate() const {
  if (rank != 0 && rank < 2)
    throw InvalidSpec("solver: rank must be 0 (auto) or >= 2");
  if (!(tol > 0.0)) throw InvalidSpec("solver: tol must be > 0");
  if (max_iters < 1) throw InvalidSpec("solver: max_iters must be >= 1");
  if (restarts < 1) throw InvalidSpec("solver: restarts must be >= 1");
}

int default_rank(int n) {
  const int r = static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
  return std::min(r, 32);
}

namespace {

Matrix random_unit_rows(int n, int r, std::uint64_t key) {
  rng::CounterRng g(key, 0);
  Matrix v(n, r);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) v(i, j) = g.next_normal();
    const double norm = v.row(i).norm();
    if (norm < 1e-300) {
      v.row(i).setZero();
      v(i, i % r) = 1.0;
    } else {
      v.row(i) /= norm;
    }
  }
  return v;
}

struct RunResult {
  Matrix v;
  double obj = 0.0;
  int iters = 0;
  bool converged = false;
};

// Riemannian ascent on the product of unit spheres: project the euclidean
// gradient 2AV onto each row's tangent space, retract by row normalization,
// Armijo backtracking from a step that grows after every accepted iterate.
RunResult ascend(const Matrix& a, Matrix v, double tol, int max_iters) {
  const int n = static_cast<int>(v.rows());
  const int r = static_cast<int>(v.cols());
  double step = 1.0 / a.cwiseAbs().rowwise().sum().maxCoeff();

  Matrix av(n, r), g(n, r), w(n, r), aw(n, r);
  av.noalias() = a * v;
  double obj = (v.array() * av.array()).sum();

  int consec = 0;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    g.noalias() = 2.0 * av;
    for (int i = 0; i < n; ++i)
      g.row(i) -= g.row(i).dot(v.row(i)) * v.row(i);
    const double gnorm2 = g.squaredNorm();

    bool accepted = false;
    if (gnorm2 > 0.0) {
      double alpha = 2.0 * step;
      for (int half = 0; half < 60 && !accepted; ++half) {
        w.noalias() = v + alpha * g;
        for (int i = 0; i < n; ++i) {
          const double norm = w.row(i).norm();
          if (norm < 1e-300)
            w.row(i) = v.row(i);
          else
            w.row(i) /= norm;
        }
        aw.noalias() = a * w;
        const double cand = (w.array() * aw.array()).sum();
        if (cand >= obj + 1e-4 * alpha * gnorm2) {
          const double rel = (cand - obj) / std::max(1.0, std::abs(cand));
          consec = rel < tol ? consec + 1 : 0;
          std::swap(v, w);
          std::swap(av, aw);
          obj = cand;
          step = alpha;
          accepted = true;
        } else {
          alpha *= 0.5;
        }
      }
    }
    if (!accepted) ++consec;  // numerically stationary
    if (consec >= 5) return {std::move(v), obj, iter + 1, true};
  }
  return {std::move(v), obj, iter, false};
}

// Top eigenvector of VV' through the r x r matrix V'V; throws when the top
// eigenvalue is numerically multiple. VV' carries n-r extra zero eigenvalues,
// so for r = 1 the competing eigenvalue is 0.
Vector factor_top(const Matrix& v) {
  const int n = static_cast<int>(v.rows());
  if (n == 0 || v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0)
    throw InvalidSpec("leading_eigvec: zero factor");
  const Matrix vtv = v.transpose() * v;
  Eigen::SelfAdjointEigenSolver<Matrix> es(vtv);
  if (es.info() != Eigen::Success)
    throw NonConvergence("leading_eigvec: eigensolver failed");
  const int r = static_cast<int>(vtv.rows());
  const double l1 = es.eigenvalues()[r - 1];
  const double l2 = r >= 2 ? es.eigenvalues()[r - 2] : 0.0;
  const double runner = n > r ? std::max(l2, 0.0) : l2;
  if (l1 <= 0.0 || l1 - runner < 1e-12 * l1)
    throw DegenerateSpectrum("leading_eigvec: top eigenvalue is multiple");
  Vector u = v * es.eigenvectors().col(r - 1);
  Vector x = std::sqrt(static_cast<double>(n)) * u / u.norm();
  for (int i = 0; i < n; ++i) {
    if (x[i] != 0.0) {
      if (x[i] < 0.0) x = -x;
      break;
    }
  }
  return x;
}

}  // namespace

SdpSolution solve(const SymmetricMatrix& a, const SolverOptions& opts) {
  opts.validate();
  const int n = a.order();
  if (n < 1) throw DimensionMismatch("solve: empty matrix");
  const int r =
      std::min(opts.rank == 0 ? default_rank(n) : opts.rank, std::max(2, n));

  SdpSolution best;
  if (a.max_abs() == 0.0) {
    best.factor = random_unit_rows(n, r, rng::derive(opts.seed, 0));
    best.objective = 0.0;
    best.converged = true;
  } else {
    const Matrix ad = a.dense();
    best.objective = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < opts.restarts; ++k) {
      auto run = ascend(ad, random_unit_rows(n, r, rng::derive(opts.seed, k)),
                        opts.tol, opts.max_iters);
      if (run.obj > best.objective) {
        best.factor = std::move(run.v);
        best.objective = run.obj;
        best.iterations = run.iters;
        best.converged = run.converged;
      }
    }
  }
  try {
    best.xhat = factor_top(best.factor);
  } catch (const DegenerateSpectrum&) {
    best.xhat = Vector();
  }
  return best;
}

Vector leading_eigvec(const SdpSolution& sol) {
  if (sol.xhat.size() > 0) return sol.xhat;
  return factor_top(sol.factor);
}

Partition round_signs(const Vector& x) {
  Partition p(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) p[i] = x[i] >= 0.0 ? 1 : -1;
  return p;
}

SymmetricMatrix sdp2_matrix(const CenteredData& cd) {
  SymmetricMatrix m = cd.gram;
  const int n = m.order();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.add(i, j, -cd.lambda);
  return m;
}

SolverOptions solver_options_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("config: parse error: ") + e.what());
  }
  SolverOptions o;
  try {
    if (j.contains("sdp")) {
      const auto& s = j.at("sdp");
      o.rank = s.value("rank", o.rank);
      o.tol = s.value("tol", o.tol);
      o.max_iters = s.value("max_iters", o.max_iters);
      o.restarts = s.value("restarts", o.restarts);
      o.seed = s.value("seed", o.seed);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("config: sdp section: ") + e.what());
  }
  try {
    o.validate();
  } catch (const InvalidSpec& e) {
    throw InvalidConfig(std::string("config: ") + e.what());
  }
  return o;
}

}  // namespace mixclust
