#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mixclust/mixture.hpp"
#include "mixclust/sdp.hpp"
#include "mixclust/types.hpp"

namespace mixclust {

// Upper bound on the Grothendieck constant used in all sandwich bounds.
inline constexpr double kGrothendieckBound = 1.783;

// Enumeration cap for the exact inf->1 norm and max-cut (2^n loops).
inline constexpr int kEnumLimit = 22;

enum class NormMethod { exact_enum, power_iter };

// op_norm is always power iteration; inf_to_one is exact enumeration
// (n <= kEnumLimit, no approximate fallback). cut_norm_lb = inf_to_one / 4.
// Note inf_to_one >= op_norm is false in general; inf_to_one <= n * op_norm.
struct NormReport {
  double op_norm = 0.0;
  double inf_to_one = 0.0;
  double cut_norm_lb = 0.0;
  NormMethod method = NormMethod::exact_enum;
};

// |lambda|_max via shifted power iteration on both M + cI and -M + cI.
double op_norm(const SymmetricMatrix& m, double tol = 1e-8);

// max over s in {-1,+1}^n of ||M s||_1 by Gray-code enumeration. Square
// matrices only; rejects n > kEnumLimit (InvalidSpec).
double inf_to_one_exact(const Matrix& m);

NormReport norm_report(const SymmetricMatrix& m, double tol = 1e-8);

struct GrothendieckReport {
  double sdp_value = 0.0;   // max(solve(M), solve(-M)) objective
  double inf_to_one = 0.0;
  double ratio = 0.0;       // sdp_value / inf_to_one (0 when both vanish)
  bool pass = false;        // ratio <= kGrothendieckBound + 1e-6
};

GrothendieckReport grothendieck_check(const SymmetricMatrix& m,
                                      const SolverOptions& opts = {});

struct MaxcutResult {
  Partition x_opt;
  double value = 0.0;
};

// Exhaustive max of x^T A x over {-1,+1}^n; ties keep the lexicographically
// first x with +1 < -1 (so all-+1 wins when everything ties). n <= kEnumLimit.
MaxcutResult brute_force_maxcut(const SymmetricMatrix& a);

struct CurvatureReport {
  double lhs = 0.0;   // <R, Z* - Z>
  double rhs = 0.0;   // p gamma w_min^2 ||Z - Z*||_1
  bool holds = false;  // lhs >= rhs - 1e-9 n^2 p gamma
};

// Z entries must lie in [-1, 1] (to 1e-9). Z* and R use realized weights.
CurvatureReport curvature_check(const MixtureSpec& spec,
                                const SymmetricMatrix& z);

struct EnvelopeReport {
  int trials = 0;
  double gram_dev_max = 0.0;   // max_t ||YY^T - E YY^T||_2
  double gram_dev_mean = 0.0;
  double c_hat = 0.0;          // gram_dev_max / ((sqrt(pn) v n) + n sqrt(p gamma))
  double bias_dev_max = 0.0;   // max_t ||B - R||_2
  double bias_dev_mean = 0.0;
  double xi_hat = 0.0;         // bias_dev_max / (n p gamma)
};

// Monte-Carlo deviation envelopes against the analytic E YY^T and R.
// Requires trials >= 30; per-trial seeds derived from seed.
EnvelopeReport deviation_envelope(const MixtureSpec& spec, int trials,
                                  std::uint64_t seed);

struct SandwichReport {
  double lhs = 0.0;          // <R, Z* - Zhat>
  double upper = 0.0;        // 2 K_G ||B - R||_{inf->1}
  double delta = 0.0;        // ||Zhat - Z*||_1 / n^2
  double delta_bound = 0.0;  // upper / (n^2 p gamma w_min^2)
  bool lower_ok = false;     // lhs >= -tol
  bool upper_ok = false;     // lhs <= upper + tol
  bool delta_ok = false;     // delta <= delta_bound + tol
  bool solver_ok = false;    // <B, Zhat> >= <B, Z*> (solver at least as good)
  bool pass() const { return lower_ok && upper_ok && delta_ok && solver_ok; }
};

// One full pipeline run (sample -> center -> build_A -> solve) checked
// against the exact enumeration bounds. Requires n <= 20.
SandwichReport sandwich_check(const MixtureSpec& spec, std::uint64_t seed,
                              const SolverOptions& opts = {});

// One CSV row of the verification report.
struct CheckRow {
  std::string name;
  std::string fingerprint;
  double statistic = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// Deterministic short description of a spec, e.g.
// "model=diagonal n=16 p=100 w1=0.7".
std::string spec_fingerprint(const MixtureSpec& spec);

// Header "check,fingerprint,statistic,bound,pass" plus one row per check.
void write_check_rows(const std::vector<CheckRow>& rows, std::ostream& os);

}  // namespace mixclust
