#pragma once

#include "mixclust/sdp.hpp"
#include "mixclust/types.hpp"

namespace mixclust {

// All per-trial evaluation quantities. Angles in degrees; z-distances are
// the normalized deviations of Zhat = V V^T from xbar xbar^T.
struct TrialMetrics {
  double success_rate = 0.0;   // in [0.5, 1] up to imbalance floor
  double theta_sdp = 0.0;      // angle(xhat, xbar)
  double theta_1 = 0.0;        // angle(v1, v1bar)
  double phi = 0.0;            // angle(xhat, v1)
  double sin_theta_sdp = 0.0;
  double sin_theta_1 = 0.0;
  double z_l1 = 0.0;           // ||Zhat - xbar xbar^T||_1 / n^2
  double z_frob = 0.0;         // ||.||_F / n
  double z_op = 0.0;           // ||.||_2 / n
  double aligned_l2 = 0.0;     // min_alpha ||alpha xhat - xbar|| / sqrt(n)
  double snr = 0.0;            // s^2
  double np_gamma_sq = 0.0;    // n p gamma^2
};

struct ZDistances {
  double z_l1 = 0.0;
  double z_frob = 0.0;
  double z_op = 0.0;
};

// Label-swap-maximized agreement max(m, n-m)/n with m = #{pred_i == truth_i}.
// Symmetric in its arguments; invariant under simultaneous permutation.
double success_rate(const Partition& pred, const Partition& truth);

// arccos(<u,v>/(||u|| ||v||)) in degrees, clamped to [0, 180]. Zero vectors
// are rejected (InvalidSpec).
double angle_deg(const Vector& u, const Vector& v);

// min over alpha in {-1, +1} of ||alpha u - v||_2. For the optimal alpha,
// aligned_l2^2 = ||u||^2 + ||v||^2 - 2|<u,v>|.
double aligned_l2(const Vector& u, const Vector& v);

// Normalized distances between Zhat = factor factor^T and xbar xbar^T built
// from a +-1 truth partition. Entries are streamed from the factor in row
// blocks (Zhat is never materialized densely); the operator norm runs power
// iteration on the factored form with a Rayleigh-value stopping rule, so a
// numerically multiple top eigenvalue still yields the norm. Chain
// z_op <= z_frob <= sqrt(2 z_l1) holds on every input.
ZDistances z_distances(const SdpSolution& sol, const Partition& truth);

}  // namespace mixclust
