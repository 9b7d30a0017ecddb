#pragma once

#include <functional>

#include "mixclust/mixture.hpp"
#include "mixclust/types.hpp"

namespace mixclust {

// Top eigenpair of a symmetric matrix.
struct EigenResult {
  double value = 0.0;    // top algebraic eigenvalue
  Vector vector;         // unit eigenvector, first nonzero component positive
  int iterations = 0;
  double residual = 0.0;  // ||S v - value v||_2, <= tol * |value| on success
};

namespace detail {

// Power iteration on a caller-shifted operator S + shift*I; the caller picks
// shift >= rho(S) so the iterated operator is PSD and its top eigenvalue is
// the algebraic max of S plus shift. Start vector is the normalized
// (1, 1/2, 1/3, ...). Converges when the unshifted residual satisfies
// ||S v - lambda v|| <= max(tol*|lambda|, residual_floor). Throws
// DegenerateSpectrum when, for 50 consecutive iterations, the Rayleigh
// quotient stalls while the residual is large and no longer decreasing
// (numerically multiple top eigenvalue); NonConvergence when max_iters is
// exhausted.
EigenResult power_iteration(
    int n, const std::function<void(const Vector&, Vector&)>& shifted_matvec,
    double shift, double tol, int max_iters, double residual_floor = 0.0);

// Top eigenvalue (minus shift) of the same PSD-shifted operator, judged on
// the Rayleigh value alone. On a PSD operator the quotient is monotone
// nondecreasing under power iteration, so the value settles even when the
// top eigenvalue is numerically multiple and the vector keeps wandering.
// Stops after 10 consecutive increments <= tol*(shift + |value|); at the
// iteration cap the current estimate (a lower bound) is returned. Use for
// norm/value queries; use power_iteration when the eigenvector matters.
double power_value(
    int n, const std::function<void(const Vector&, Vector&)>& shifted_matvec,
    double shift, double tol, int max_iters);

}  // namespace detail

// Top eigenpair by power iteration with spectral shift c = ||S||_inf.
// Iteration cap 10n + 1000.
EigenResult top_eigen(const SymmetricMatrix& s, double tol = 1e-10);

// Reference eigenvector of R with realized weights:
// v1 = [w2 1_{n1}; -w1 1_{n2}] / sqrt(w1 w2 n). <v1, 1> = 0, ||v1|| = 1,
// and R v1 = tr(R) v1.
Vector reference_v1(const MixtureSpec& spec);

// 1-D k-means (k = 2) over v: sorts v descending, scans the n-1 contiguous
// splits, and picks the one minimizing the total within-group sum of squared
// distances of the rows of y; ties keep the smallest split index. Labels are
// +1 iff v_i >= the t-th largest value, so a constant v yields all-+1.
Partition peng_wei_split(const Vector& v, const Matrix& y);

// Signs of v as a partition (0 counts as +1).
Partition sign_split(const Vector& v);

// Z1 = (I - E/n) Z (I - E/n) for Z feasible in the sense Z 1 = 1 (checked
// entrywise to 1e-8; violations throw InvalidSpec). tr(Z1) = tr(Z) - 1.
SymmetricMatrix z1_projector(const SymmetricMatrix& z);

}  // namespace mixclust
