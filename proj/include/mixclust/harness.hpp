#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "mixclust/mixture.hpp"
#include "mixclust/sdp.hpp"
#include "mixclust/verify.hpp"

namespace mixclust {

enum class RunMode { sweep, angles, verify };

// sdp: center -> build_A -> solve -> round_signs.
// spectral_pw: top eigenvector of the gram, then the contiguous k-means split.
// spectral_sign: same eigenvector, signs only.
enum class Algorithm { sdp, spectral_pw, spectral_sign };

const char* to_string(RunMode mode);
const char* to_string(Algorithm algo);
RunMode mode_from_string(const std::string& name);        // throws InvalidConfig
Algorithm algorithm_from_string(const std::string& name); // throws InvalidConfig

// Comma-separated names, e.g. "sdp,spectral_pw". Throws InvalidConfig on
// unknown names, duplicates, or an empty list.
std::vector<Algorithm> parse_algorithms(const std::string& list);

// One experiment: a grid of (n, p) cells, `trials` datasets per cell shared
// across the requested algorithms. Cells draw their seeds from
// (master_seed, n, p, trial), never from grid position, so a cell's results
// are independent of what else the plan contains.
struct ExperimentPlan {
  RunMode mode = RunMode::sweep;
  std::vector<int> n_grid;
  std::vector<int> p_grid;
  double w1 = 0.5;
  double alpha = 0.04;
  // NaN means "0.1 * alpha"; see eps_value().
  double eps = std::numeric_limits<double>::quiet_NaN();
  int trials = 10;
  std::uint64_t master_seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::sdp, Algorithm::spectral_pw,
                                    Algorithm::spectral_sign};
  std::string output_path;  // empty writes to stdout
  // Noise attached to the mirrored mean pattern: bernoulli is the default
  // design; isotropic/diagonal reuse the same means with gaussian noise
  // (diagonal takes constant per-coordinate sigmas). General factor plans
  // are not supported.
  NoiseKind model = NoiseKind::BernoulliIndependent;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  SolverOptions sdp;  // per-trial seeds override sdp.seed
  int threads = 1;

  double eps_value() const;
  MixtureSpec cell_spec(int n, int p) const;
  void validate() const;  // throws InvalidSpec
};

// One CSV row: an (algorithm, n, p) cell aggregated over trials. Angle and
// z-distance semantics depend on the row's algorithm: sdp rows report
// theta(xhat, xbar) and Zhat deviations, spectral rows report
// theta(v1, v1bar) and NaN z-columns. A trial counts as failed when its
// algorithm throws (degenerate spectrum, non-convergence); means and stds
// are over the surviving trials, population convention.
struct SweepRow {
  Algorithm algorithm = Algorithm::sdp;
  int n = 0;
  int p = 0;
  double gamma = 0.0;
  double np_gamma_sq = 0.0;
  int trials = 0;
  double mean_success = 0.0;
  double std_success = 0.0;
  double mean_theta_deg = 0.0;
  double mean_sin_theta = 0.0;
  double mean_z_l1 = 0.0;
  double mean_z_frob = 0.0;
  double mean_z_op = 0.0;
  int failures = 0;
  double wall_ms = 0.0;
  // angles mode only; NaN in sweep mode.
  double mean_phi_deg = std::numeric_limits<double>::quiet_NaN();
  double ref_angle_deg = std::numeric_limits<double>::quiet_NaN();
};

// Rows in deterministic order: n_grid outer, p_grid inner, then the plan's
// algorithm order. Byte-identical across runs and thread counts except for
// wall_ms.
std::vector<SweepRow> run_sweep(const ExperimentPlan& plan);

// run_sweep plus the angle study: phi = angle(xhat, v1) on sdp rows and the
// static reference angle(v1bar, xbar) on every row of the cell.
std::vector<SweepRow> run_angles(const ExperimentPlan& plan);

struct VerifyReport {
  std::vector<CheckRow> rows;
  bool all_pass() const;
};

// Fixed-size deterministic verification battery: exact centering identities
// (lambda recomputed through an independent route, so a tampered formula
// fails here), leading-eigenvector consistency, Grothendieck ratio table,
// curvature and sandwich inequalities, oracle recoveries, and the deviation
// envelopes.
VerifyReport run_verify(std::uint64_t seed);

// Header exactly
// "algorithm,n,p,gamma,np_gamma_sq,trials,mean_success,std_success,
//  mean_theta_deg,mean_sin_theta,mean_z_l1,mean_z_frob,mean_z_op,failures,
//  wall_ms"; angles mode appends mean_phi_deg,ref_angle_deg. %.10g values.
void write_sweep_csv(const std::vector<SweepRow>& rows, RunMode mode,
                     std::ostream& os);

// Top-level keys: mode, n_grid, p_grid, w1, alpha, eps, trials, seed,
// algorithms, out, threads, model, sigma1, sigma2, sdp (nested solver
// options). Unknown keys are rejected. Parsing only; call validate() after
// merging CLI overrides.
ExperimentPlan plan_from_json(const std::string& text);  // throws InvalidConfig

}  // namespace mixclust
