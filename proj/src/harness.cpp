#include "mixclust/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mixclust/metrics.hpp"
#include "mixclust/preprocess.hpp"
#include "mixclust/rng.hpp"
#include "mixclust/spectral.hpp"

namespace mixclust {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Child-stream tags under a trial key.
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kSolverStream = 2;

std::uint64_t trial_key(const ExperimentPlan& plan, int n, int p, int trial) {
  const std::uint64_t cell =
      rng::derive(rng::derive(plan.master_seed, static_cast<std::uint64_t>(n)),
                  static_cast<std::uint64_t>(p));
  return rng::derive(cell, static_cast<std::uint64_t>(trial));
}

// +1 for the leading n1 indices, -1 after: the planted labeling the
// analytic references are built from.
Partition planted_membership(const MixtureSpec& spec) {
  Partition x(spec.n);
  const int n1 = spec.n1();
  for (int i = 0; i < spec.n; ++i) x[i] = i < n1 ? 1 : -1;
  return x;
}

double sin_of_deg(double deg) {
  return std::sin(deg * std::numbers::pi / 180.0);
}

// One algorithm's measurements on one trial; NaN marks columns the
// algorithm does not produce.
struct TrialSlot {
  bool failed = false;
  double success = kNaN;
  double theta = kNaN;
  double sin_theta = kNaN;
  double z_l1 = kNaN;
  double z_frob = kNaN;
  double z_op = kNaN;
  double phi = kNaN;
  double wall_ms = 0.0;
};

struct CellPlan {
  int n = 0;
  int p = 0;
  MixtureSpec spec;
  double gamma = 0.0;
};

// All algorithms of one (cell, trial) pair share the dataset, the centering,
// and the top gram eigenvector.
std::vector<TrialSlot> run_trial(const ExperimentPlan& plan,
                                 const CellPlan& cell, int trial,
                                 bool angles) {
  const std::uint64_t key = trial_key(plan, cell.n, cell.p, trial);
  const Dataset ds = sample(cell.spec, rng::derive(key, kDataStream));
  const CenteredData cd = center(ds.X);
  const Vector xbar = ds.membership.cast<double>();

  // The shared eigenvector's outcome (vector or failure) is computed once
  // and replayed to every consumer, so a degenerate spectrum fails each of
  // them the same way.
  bool need_v1 = angles;
  for (Algorithm algo : plan.algorithms)
    need_v1 = need_v1 || algo != Algorithm::sdp;
  Vector v1;
  std::exception_ptr v1_error;
  if (need_v1) {
    try {
      v1 = top_eigen(cd.gram).vector;
    } catch (const DegenerateSpectrum&) {
      v1_error = std::current_exception();
    } catch (const NonConvergence&) {
      v1_error = std::current_exception();
    }
  }

  std::vector<TrialSlot> slots(plan.algorithms.size());
  for (std::size_t k = 0; k < plan.algorithms.size(); ++k) {
    TrialSlot& slot = slots[k];
    const auto start = std::chrono::steady_clock::now();
    try {
      if (plan.algorithms[k] == Algorithm::sdp) {
        SolverOptions opts = plan.sdp;
        opts.seed = rng::derive(key, kSolverStream);
        const SdpSolution sol = solve(build_A(cd), opts);
        const Vector xhat = leading_eigvec(sol);
        slot.success = success_rate(round_signs(xhat), ds.membership);
        slot.theta = angle_deg(xhat, xbar);
        slot.sin_theta = sin_of_deg(slot.theta);
        const ZDistances zd = z_distances(sol, ds.membership);
        slot.z_l1 = zd.z_l1;
        slot.z_frob = zd.z_frob;
        slot.z_op = zd.z_op;
        if (angles) {
          if (v1_error) std::rethrow_exception(v1_error);
          slot.phi = angle_deg(xhat, v1);
        }
      } else {
        if (v1_error) std::rethrow_exception(v1_error);
        const Partition pred = plan.algorithms[k] == Algorithm::spectral_pw
                                   ? peng_wei_split(v1, cd.Y)
                                   : sign_split(v1);
        slot.success = success_rate(pred, ds.membership);
        slot.theta = angle_deg(v1, reference_v1(cell.spec));
        slot.sin_theta = sin_of_deg(slot.theta);
      }
    } catch (const DegenerateSpectrum&) {
      slot.failed = true;
    } catch (const NonConvergence&) {
      slot.failed = true;
    }
    slot.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  }
  return slots;
}

SweepRow aggregate(const CellPlan& cell, Algorithm algo, int trials,
                   const std::vector<TrialSlot>& slots, bool angles,
                   double ref_angle) {
  SweepRow row;
  row.algorithm = algo;
  row.n = cell.n;
  row.p = cell.p;
  row.gamma = cell.gamma;
  row.np_gamma_sq =
      static_cast<double>(cell.n) * cell.p * cell.gamma * cell.gamma;
  row.trials = trials;

  double s = 0.0, s2 = 0.0, th = 0.0, st = 0.0;
  double l1 = 0.0, fr = 0.0, op = 0.0, ph = 0.0;
  int survivors = 0;
  for (const TrialSlot& slot : slots) {
    row.wall_ms += slot.wall_ms;
    if (slot.failed) {
      ++row.failures;
      continue;
    }
    ++survivors;
    s += slot.success;
    s2 += slot.success * slot.success;
    th += slot.theta;
    st += slot.sin_theta;
    l1 += slot.z_l1;
    fr += slot.z_frob;
    op += slot.z_op;
    ph += slot.phi;
  }
  if (survivors > 0) {
    const double m = survivors;
    row.mean_success = s / m;
    row.std_success =
        std::sqrt(std::max(0.0, s2 / m - (s / m) * (s / m)));
    row.mean_theta_deg = th / m;
    row.mean_sin_theta = st / m;
    row.mean_z_l1 = l1 / m;
    row.mean_z_frob = fr / m;
    row.mean_z_op = op / m;
    if (angles) row.mean_phi_deg = ph / m;
  } else {
    row.mean_success = row.std_success = kNaN;
    row.mean_theta_deg = row.mean_sin_theta = kNaN;
    row.mean_z_l1 = row.mean_z_frob = row.mean_z_op = kNaN;
  }
  if (angles) row.ref_angle_deg = ref_angle;
  return row;
}

std::vector<SweepRow> run_plan(const ExperimentPlan& plan, bool angles) {
  plan.validate();

  std::vector<CellPlan> cells;
  for (int n : plan.n_grid)
    for (int p : plan.p_grid) {
      CellPlan cell;
      cell.n = n;
      cell.p = p;
      cell.spec = plan.cell_spec(n, p);
      cell.gamma = separation(cell.spec).gamma;
      cells.push_back(std::move(cell));
    }

  // Jobs are (cell, trial) pairs pulled from an atomic counter; results land
  // in preassigned slots, so the schedule never changes the output.
  const int trials = plan.trials;
  const std::size_t total = cells.size() * static_cast<std::size_t>(trials);
  std::vector<std::vector<TrialSlot>> results(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  const auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) break;
      try {
        results[i] = run_trial(plan, cells[i / trials],
                               static_cast<int>(i % trials), angles);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(plan.threads), total);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);  // earliest job wins deterministically

  std::vector<SweepRow> rows;
  rows.reserve(cells.size() * plan.algorithms.size());
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    double ref_angle = kNaN;
    if (angles) {
      const Vector xb = planted_membership(cells[ci].spec).cast<double>();
      ref_angle = angle_deg(reference_v1(cells[ci].spec), xb);
    }
    for (std::size_t k = 0; k < plan.algorithms.size(); ++k) {
      std::vector<TrialSlot> slots(trials);
      for (int t = 0; t < trials; ++t)
        slots[t] = results[ci * trials + t][k];
      rows.push_back(aggregate(cells[ci], plan.algorithms[k], trials, slots,
                               angles, ref_angle));
    }
  }
  return rows;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

SymmetricMatrix random_trit(int n, std::uint64_t seed) {
  rng::CounterRng g(seed);
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      m.set(i, j, std::floor(g.next_uniform() * 3.0) - 1.0);
  return m;
}

Matrix random_unit_rows(int n, int r, std::uint64_t seed) {
  rng::CounterRng g(seed);
  Matrix v(n, r);
  for (int i = 0; i < n; ++i) {
    do {
      for (int j = 0; j < r; ++j) v(i, j) = g.next_normal();
    } while (v.row(i).norm() == 0.0);
    v.row(i) /= v.row(i).norm();
  }
  return v;
}

}  // namespace

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::sweep:
      return "sweep";
    case RunMode::angles:
      return "angles";
    case RunMode::verify:
      return "verify";
  }
  return "sweep";
}

const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::sdp:
      return "sdp";
    case Algorithm::spectral_pw:
      return "spectral_pw";
    case Algorithm::spectral_sign:
      return "spectral_sign";
  }
  return "sdp";
}

RunMode mode_from_string(const std::string& name) {
  if (name == "sweep") return RunMode::sweep;
  if (name == "angles") return RunMode::angles;
  if (name == "verify") return RunMode::verify;
  throw InvalidConfig("config: unknown mode '" + name + "'");
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "sdp") return Algorithm::sdp;
  if (name == "spectral_pw") return Algorithm::spectral_pw;
  if (name == "spectral_sign") return Algorithm::spectral_sign;
  throw InvalidConfig("config: unknown algorithm '" + name + "'");
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
  std::vector<Algorithm> out;
  std::size_t begin = 0;
  while (begin <= list.size()) {
    const std::size_t end = std::min(list.find(',', begin), list.size());
    const Algorithm algo =
        algorithm_from_string(list.substr(begin, end - begin));
    if (std::find(out.begin(), out.end(), algo) != out.end())
      throw InvalidConfig("config: duplicate algorithm '" +
                          std::string(to_string(algo)) + "'");
    out.push_back(algo);
    begin = end + 1;
  }
  return out;
}

double ExperimentPlan::eps_value() const {
  return std::isnan(eps) ? 0.1 * alpha : eps;
}

MixtureSpec ExperimentPlan::cell_spec(int n, int p) const {
  MixtureSpec spec = make_bernoulli_spec(alpha, eps_value(), p, n, w1);
  switch (model) {
    case NoiseKind::BernoulliIndependent:
      break;
    case NoiseKind::IsotropicGaussian:
      spec.noise.kind = NoiseKind::IsotropicGaussian;
      break;
    case NoiseKind::DiagonalFactor:
      spec.noise.kind = NoiseKind::DiagonalFactor;
      spec.noise.sigma1 = Vector::Constant(p, sigma1);
      spec.noise.sigma2 = Vector::Constant(p, sigma2);
      break;
    case NoiseKind::GeneralFactor:
      throw InvalidSpec("plan: general factor model is not supported");
  }
  spec.validate();
  return spec;
}

void ExperimentPlan::validate() const {
  if (trials < 1) throw InvalidSpec("plan: trials must be >= 1");
  if (n_grid.empty()) throw InvalidSpec("plan: n_grid is empty");
  if (p_grid.empty()) throw InvalidSpec("plan: p_grid is empty");
  for (int n : n_grid)
    if (n < 2) throw InvalidSpec("plan: every n must be >= 2");
  for (int p : p_grid)
    if (p < 1) throw InvalidSpec("plan: every p must be >= 1");
  if (algorithms.empty()) throw InvalidSpec("plan: algorithms is empty");
  for (std::size_t i = 0; i < algorithms.size(); ++i)
    for (std::size_t j = i + 1; j < algorithms.size(); ++j)
      if (algorithms[i] == algorithms[j])
        throw InvalidSpec("plan: duplicate algorithm '" +
                          std::string(to_string(algorithms[i])) + "'");
  if (!(w1 > 0.0 && w1 < 1.0))
    throw InvalidSpec("plan: w1 must lie in (0,1)");
  if (!(alpha > 0.0)) throw InvalidSpec("plan: alpha must be positive");
  if (!std::isnan(eps) && eps < 0.0)
    throw InvalidSpec("plan: eps must be >= 0");
  if (model == NoiseKind::GeneralFactor)
    throw InvalidSpec("plan: general factor model is not supported");
  if (sigma1 < 0.0 || sigma2 < 0.0)
    throw InvalidSpec("plan: sigmas must be >= 0");
  if (threads < 1) throw InvalidSpec("plan: threads must be >= 1");
  sdp.validate();
}

std::vector<SweepRow> run_sweep(const ExperimentPlan& plan) {
  return run_plan(plan, false);
}

std::vector<SweepRow> run_angles(const ExperimentPlan& plan) {
  return run_plan(plan, true);
}

bool VerifyReport::all_pass() const {
  for (const CheckRow& row : rows)
    if (!row.pass) return false;
  return true;
}

VerifyReport run_verify(std::uint64_t seed) {
  VerifyReport rep;
  const auto add = [&rep](const char* name, const std::string& fp,
                          double stat, double bound, bool pass) {
    rep.rows.push_back(CheckRow{name, fp, stat, bound, pass});
  };

  // Pipeline identities on one noisy instance.
  const MixtureSpec spec = make_bernoulli_spec(0.5, 0.05, 40, 16, 0.6);
  const std::string fp = spec_fingerprint(spec);
  const Dataset ds = sample(spec, rng::derive(seed, 1));
  const CenteredData cd = center(ds.X);
  const int n = spec.n;

  // lambda through two routes the centering never uses together: the tau
  // scalar and the gram's off-diagonal grand sum. A tampered formula breaks
  // the tie.
  const double lam_tau = -cd.tau / (n - 1);
  const double lam_sum = (cd.gram.grand_sum() - cd.gram.trace()) /
                         (static_cast<double>(n) * (n - 1));
  const double lam_stat =
      std::max(std::abs(cd.lambda - lam_tau), std::abs(cd.lambda - lam_sum)) /
      (1.0 + std::abs(cd.lambda));
  add("lambda_tie", fp, lam_stat, 1e-9, lam_stat <= 1e-9);

  const double gram_scale = 1.0 + cd.gram.trace();
  const double gs_stat = std::abs(cd.gram.grand_sum()) / gram_scale;
  add("gram_grand_sum", fp, gs_stat, 1e-9, gs_stat <= 1e-9);

  const SymmetricMatrix a = build_A(cd);
  const double a_stat =
      std::abs(a.grand_sum() - cd.gram.trace()) / gram_scale;
  add("a_grand_identity", fp, a_stat, 1e-9, a_stat <= 1e-9);

  const SymmetricMatrix r = reference_R(spec);
  const double tr_expected = spec.w1_realized() * spec.w2_realized() * n *
                             spec.p * separation(spec).gamma;
  const double tr_stat =
      std::abs(r.trace() - tr_expected) / (1.0 + std::abs(tr_expected));
  add("trace_R", fp, tr_stat, 1e-12, tr_stat <= 1e-12);

  // A, B, and the gram share the leading eigenvector. Kahan's atan2 form
  // resolves angles far below the acos roundoff floor (~1.5e-8 rad).
  {
    const auto angle_rad = [](const Vector& u, const Vector& v) {
      const Vector w = u.dot(v) < 0.0 ? Vector(-v) : v;
      return 2.0 * std::atan2((u - w).norm(), (u + w).norm());
    };
    const Vector va = top_eigen(a).vector;
    const Vector vg = top_eigen(cd.gram).vector;
    const Vector vb = top_eigen(oracle_B(cd, spec)).vector;
    const double stat =
        std::max({angle_rad(va, vg), angle_rad(va, vb), angle_rad(vg, vb)});
    add("eigvec_consistency", fp, stat, 1e-8, stat <= 1e-8);
  }

  // Grothendieck ratio table on random trit matrices.
  {
    double worst = 0.0;
    bool pass = true;
    for (int i = 0; i < 5; ++i) {
      const GrothendieckReport g =
          grothendieck_check(random_trit(6, rng::derive(seed, 30 + i)));
      worst = std::max(worst, g.ratio);
      pass = pass && g.pass;
    }
    add("grothendieck_ratio", "random trit n=6 trials=5", worst,
        kGrothendieckBound + 1e-6, pass);
  }

  // Curvature over random feasible Z, plus the Z = I equality case.
  {
    const MixtureSpec cspec = make_bernoulli_spec(0.5, 0.05, 30, 10, 0.6);
    const double pg = cspec.p * separation(cspec).gamma;
    const double margin = 1e-9 * cspec.n * cspec.n * pg;
    double worst_gap = 0.0;
    bool pass = true;
    for (int t = 0; t < 50; ++t) {
      const Matrix v = random_unit_rows(10, 4, rng::derive(seed, 60 + t));
      const CurvatureReport c = curvature_check(
          cspec, SymmetricMatrix::from_dense(v * v.transpose()));
      worst_gap = std::max(worst_gap, c.rhs - c.lhs);
      pass = pass && c.holds;
    }
    add("curvature", spec_fingerprint(cspec), worst_gap, margin, pass);

    const MixtureSpec bspec = make_bernoulli_spec(0.5, 0.05, 30, 10, 0.5);
    const CurvatureReport ci =
        curvature_check(bspec, SymmetricMatrix::identity(10));
    const double id_stat = std::abs(ci.lhs - ci.rhs) / (1.0 + std::abs(ci.rhs));
    add("curvature_identity", spec_fingerprint(bspec), id_stat, 1e-9,
        ci.holds && id_stat <= 1e-9);
  }

  // Sandwich chain on full pipeline runs; Z* is near-optimal here, so the
  // solver must be run essentially to optimality.
  {
    const MixtureSpec sspec = make_bernoulli_spec(0.6, 0.06, 30, 12, 0.5);
    // Z* is within roundoff of the argmax, so solver_ok needs the ascent
    // driven essentially to optimality.
    SolverOptions opts;
    opts.tol = 1e-12;
    opts.max_iters = 30000;
    double worst_delta = 0.0, bound = 0.0;
    bool pass = true;
    for (int i = 0; i < 3; ++i) {
      const SandwichReport s =
          sandwich_check(sspec, rng::derive(seed, 40 + i), opts);
      if (s.delta >= worst_delta) {
        worst_delta = s.delta;
        bound = s.delta_bound;
      }
      pass = pass && s.pass();
    }
    add("sandwich", spec_fingerprint(sspec), worst_delta, bound, pass);

    // Exhaustive max-cut of R recovers the planted labels.
    const SymmetricMatrix rr = reference_R(sspec);
    const MaxcutResult mc = brute_force_maxcut(rr);
    const Partition xb = planted_membership(sspec);
    int mism = 0, mism_neg = 0;
    for (int i = 0; i < sspec.n; ++i) {
      mism += mc.x_opt[i] != xb[i];
      mism_neg += mc.x_opt[i] != -xb[i];
    }
    const double stat = std::min(mism, mism_neg);
    const Vector xbd = xb.cast<double>();
    const bool value_ok =
        std::abs(mc.value - rr.quad(xbd)) <= 1e-12 * (1.0 + std::abs(mc.value));
    add("maxcut_recovery", spec_fingerprint(sspec), stat, 0.0,
        stat == 0.0 && value_ok);

    // solve(R) lands on the rank-one optimum.
    SolverOptions zopts;
    zopts.tol = 1e-10;
    zopts.max_iters = 20000;
    zopts.seed = rng::derive(seed, 90);
    const ZDistances zd = z_distances(solve(rr, zopts), xb);
    add("oracle_z_l1", spec_fingerprint(sspec), zd.z_l1, 1e-6,
        zd.z_l1 <= 1e-6);
  }

  // Zero-noise spectral pipeline recovers the planted partition exactly.
  {
    MixtureSpec zspec = make_bernoulli_spec(0.5, 0.05, 30, 14, 0.5);
    zspec.noise.kind = NoiseKind::DiagonalFactor;
    zspec.noise.sigma1 = Vector::Zero(30);
    zspec.noise.sigma2 = Vector::Zero(30);
    const Dataset zds = sample(zspec, rng::derive(seed, 70));
    const CenteredData zcd = center(zds.X);
    const Vector v1 = top_eigen(zcd.gram).vector;
    const double sr =
        success_rate(peng_wei_split(v1, zcd.Y), zds.membership);
    add("spectral_recovery", spec_fingerprint(zspec), 1.0 - sr, 0.0,
        sr == 1.0);
  }

  // Deviation envelopes stay within generous dimension-free constants.
  {
    const EnvelopeReport env = deviation_envelope(spec, 30, rng::derive(seed, 80));
    add("envelope_c", fp, env.c_hat, 10.0,
        env.c_hat >= 0.0 && env.c_hat <= 10.0);
    add("envelope_xi", fp, env.xi_hat, 10.0,
        env.xi_hat >= 0.0 && env.xi_hat <= 10.0);
  }

  return rep;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, RunMode mode,
                     std::ostream& os) {
  const bool angles = mode == RunMode::angles;
  os << "algorithm,n,p,gamma,np_gamma_sq,trials,mean_success,std_success,"
        "mean_theta_deg,mean_sin_theta,mean_z_l1,mean_z_frob,mean_z_op,"
        "failures,wall_ms";
  if (angles) os << ",mean_phi_deg,ref_angle_deg";
  os << '\n';
  for (const SweepRow& row : rows) {
    os << to_string(row.algorithm) << ',' << row.n << ',' << row.p << ','
       << fmt(row.gamma) << ',' << fmt(row.np_gamma_sq) << ',' << row.trials
       << ',' << fmt(row.mean_success) << ',' << fmt(row.std_success) << ','
       << fmt(row.mean_theta_deg) << ',' << fmt(row.mean_sin_theta) << ','
       << fmt(row.mean_z_l1) << ',' << fmt(row.mean_z_frob) << ','
       << fmt(row.mean_z_op) << ',' << row.failures << ','
       << fmt(row.wall_ms);
    if (angles)
      os << ',' << fmt(row.mean_phi_deg) << ',' << fmt(row.ref_angle_deg);
    os << '\n';
  }
}

ExperimentPlan plan_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("config: parse error: ") + e.what());
  }
  if (!j.is_object())
    throw InvalidConfig("config: top level must be an object");

  static const char* const kKnown[] = {
      "mode",   "n_grid",     "p_grid", "w1",     "alpha",
      "eps",    "trials",     "seed",   "algorithms", "out",
      "threads", "model",     "sigma1", "sigma2", "sdp"};
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : kKnown) known = known || item.key() == key;
    if (!known)
      throw InvalidConfig("config: unknown key '" + item.key() + "'");
  }

  ExperimentPlan plan;
  try {
    if (j.contains("mode"))
      plan.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("n_grid"))
      plan.n_grid = j.at("n_grid").get<std::vector<int>>();
    if (j.contains("p_grid"))
      plan.p_grid = j.at("p_grid").get<std::vector<int>>();
    plan.w1 = j.value("w1", plan.w1);
    plan.alpha = j.value("alpha", plan.alpha);
    plan.eps = j.value("eps", plan.eps);
    plan.trials = j.value("trials", plan.trials);
    plan.master_seed = j.value("seed", plan.master_seed);
    if (j.contains("algorithms")) {
      plan.algorithms.clear();
      for (const auto& name : j.at("algorithms"))
        plan.algorithms.push_back(
            algorithm_from_string(name.get<std::string>()));
    }
    plan.output_path = j.value("out", plan.output_path);
    plan.threads = j.value("threads", plan.threads);
    if (j.contains("model")) {
      const std::string model = j.at("model").get<std::string>();
      if (model == "bernoulli")
        plan.model = NoiseKind::BernoulliIndependent;
      else if (model == "isotropic")
        plan.model = NoiseKind::IsotropicGaussian;
      else if (model == "diagonal")
        plan.model = NoiseKind::DiagonalFactor;
      else
        throw InvalidConfig("config: unknown model '" + model + "'");
    }
    plan.sigma1 = j.value("sigma1", plan.sigma1);
    plan.sigma2 = j.value("sigma2", plan.sigma2);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("config: ") + e.what());
  }
  plan.sdp = solver_options_from_json(text);
  return plan;
}

}  // namespace mixclust
