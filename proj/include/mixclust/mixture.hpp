#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "mixclust/types.hpp"

namespace mixclust {

enum class NoiseKind {
  BernoulliIndependent,  // X_ik ~ Bernoulli(mu_k); noise is X - EX
  IsotropicGaussian,     // unit-variance gaussian coordinates
  DiagonalFactor,        // per-cluster diagonal sigma vectors (length p)
  GeneralFactor,         // per-cluster factor H (p x m, m >= p): Z = H W
};

struct NoiseModel {
  NoiseKind kind = NoiseKind::IsotropicGaussian;
  Vector sigma1, sigma2;  // DiagonalFactor
  Matrix H1, H2;          // GeneralFactor
};

// Two-population mixture: row i is mu^(1) + Z_i for the first n1 samples and
// mu^(2) + Z_i for the rest. All analytic quantities (reference matrices,
// expected Gram, bias, v-bar) use the realized cluster fractions n1/n and
// n2/n so the exact identities they satisfy survive weight rounding.
struct MixtureSpec {
  int n = 0;
  int p = 0;
  double w1 = 0.5;
  Vector mu1, mu2;
  NoiseModel noise;
  double subgaussian_bound = 1.0;  // psi_2 bound C0, used only for SNR

  // Mean-pattern provenance when built by make_bernoulli_spec or from JSON;
  // NaN for hand-assembled means.
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double eps = std::numeric_limits<double>::quiet_NaN();

  int n1() const;  // round(n*w1), ties up
  int n2() const { return n - n1(); }
  double w1_realized() const { return static_cast<double>(n1()) / n; }
  double w2_realized() const { return static_cast<double>(n2()) / n; }

  void validate() const;  // throws InvalidSpec
};

struct Dataset {
  Matrix X;              // n x p samples
  Partition membership;  // +1 for the leading n1 rows, -1 after
  MixtureSpec spec;
  std::uint64_t seed = 0;
};

struct Separation {
  double delta_sq;  // ||mu1 - mu2||^2
  double gamma;     // delta_sq / p
};

struct VarianceProfiles {
  double v1;  // tr Cov(Z_j), j in cluster 1
  double v2;
};

// Mirrored bernoulli design: half the features take the high mean
// (1+alpha)/2 + eps/2 for cluster 1 and the low mean (1-alpha)/2 + eps/2 for
// cluster 2; roles swap on the other half (ceil(p/2)/floor(p/2) when p is
// odd). gamma = alpha^2 regardless of the split.
MixtureSpec make_bernoulli_spec(double alpha, double eps, int p, int n,
                                double w1);

// Deterministic: row i draws from a counter stream keyed by (seed, i), so the
// dataset is identical under any evaluation order.
Dataset sample(const MixtureSpec& spec, std::uint64_t seed);

Separation separation(const MixtureSpec& spec);

// Signal-to-noise s^2. Bernoulli and isotropic models use
// min(delta^2/C0^2, n p gamma^2/C0^4); factor models divide by the largest
// per-cluster covariance operator norm and its square.
double snr(const MixtureSpec& spec);

VarianceProfiles variance_profiles(const MixtureSpec& spec);

// Flat key-value config: model, n, p, w1, alpha, eps, sigma1, sigma2, seed;
// factor matrices as row-major flat arrays H1, H2 (+ optional m).
MixtureSpec spec_from_json(const std::string& text);
std::string spec_to_json(const MixtureSpec& spec);

}  // namespace mixclust
