#include "mixclust/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "mixclust/preprocess.hpp"
#include "mixclust/rng.hpp"
#include "mixclust/spectral.hpp"

namespace mixclust {

namespace {

Vector membership_vector(const MixtureSpec& spec) {
  Vector xb(spec.n);
  xb.head(spec.n1()).setOnes();
  xb.tail(spec.n2()).setConstant(-1.0);
  return xb;
}

void check_enum_order(int n, const char* who) {
  if (n < 1) throw InvalidSpec(std::string(who) + ": empty matrix");
  if (n > kEnumLimit)
    throw InvalidSpec(std::string(who) + ": n exceeds the enumeration limit " +
                      std::to_string(kEnumLimit));
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

double op_norm(const SymmetricMatrix& m, double tol) {
  if (!(tol > 0.0)) throw InvalidSpec("op_norm: tol must be positive");
  const int n = m.order();
  if (n == 0 || m.max_abs() == 0.0) return 0.0;
  const double c = m.inf_norm();
  const Matrix d = m.dense();
  // The shift compresses relative gaps by up to c/|lambda_1| <= n, so slow
  // geometric decay needs a far larger budget than the vector-quality
  // callers of power_iteration. Only the value is wanted, so judge on the
  // monotone Rayleigh quotient: deviation matrices routinely carry
  // numerically multiple extremes that stall any eigenvector residual.
  const int cap = 50 * n + 50000;
  const auto extreme = [&](double sign) {
    return detail::power_value(
        n,
        [&](const Vector& x, Vector& y) {
          y.noalias() = sign * (d * x);
          y += c * x;
        },
        c, tol, cap);
  };
  return std::max(extreme(1.0), extreme(-1.0));
}

double inf_to_one_exact(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("inf_to_one_exact: matrix must be square");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 0.0;
  check_enum_order(n, "inf_to_one_exact");

  // Gray-code walk over s: one coordinate flips per step, so y = M s follows
  // with a single column update. Periodic resyncs cap the accumulated
  // rounding at a few thousand increments' worth.
  Vector s = Vector::Ones(n);
  Vector y = m * s;
  double best = y.cwiseAbs().sum();
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int j = std::countr_zero(k);
    y -= (2.0 * s[j]) * m.col(j);
    s[j] = -s[j];
    if ((k & 4095ull) == 0) y.noalias() = m * s;
    best = std::max(best, y.cwiseAbs().sum());
  }
  return best;
}

NormReport norm_report(const SymmetricMatrix& m, double tol) {
  NormReport rep;
  rep.op_norm = op_norm(m, tol);
  rep.inf_to_one = inf_to_one_exact(m.dense());
  rep.cut_norm_lb = 0.25 * rep.inf_to_one;
  rep.method = NormMethod::exact_enum;
  return rep;
}

GrothendieckReport grothendieck_check(const SymmetricMatrix& m,
                                      const SolverOptions& opts) {
  GrothendieckReport rep;
  SymmetricMatrix neg = m;
  neg.scale(-1.0);
  rep.sdp_value = std::max(solve(m, opts).objective, solve(neg, opts).objective);
  rep.inf_to_one = m.order() == 0 ? 0.0 : inf_to_one_exact(m.dense());
  if (rep.inf_to_one > 0.0) {
    rep.ratio = rep.sdp_value / rep.inf_to_one;
  } else {
    // The norm vanishes only for M = 0, where the SDP value is 0 too.
    rep.ratio = rep.sdp_value == 0.0
                    ? 0.0
                    : std::numeric_limits<double>::infinity();
  }
  rep.pass = rep.ratio <= kGrothendieckBound + 1e-6;
  return rep;
}

MaxcutResult brute_force_maxcut(const SymmetricMatrix& a) {
  const int n = a.order();
  check_enum_order(n, "brute_force_maxcut");
  const Matrix d = a.dense();
  const auto fresh = [&](const Vector& sv) { return sv.dot(d * sv); };

  // Incremental values only screen; every candidate within `slack` of the
  // running best is recomputed from scratch, so comparisons -- including the
  // lexicographic tie-break -- operate on exact quadratic forms. The slack
  // dominates the drift a few thousand increments can accumulate.
  Vector s = Vector::Ones(n);
  Vector y = d * s;
  double val = s.dot(y);
  double best = val;
  std::uint32_t lex = 0;  // bit (n-1-i) set <=> s_i == -1
  std::uint32_t best_lex = 0;
  const double slack = 1e-6 * (1.0 + 4.0 * n * a.max_abs());
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int j = std::countr_zero(k);
    val += -4.0 * s[j] * y[j] + 4.0 * d(j, j);
    y -= (2.0 * s[j]) * d.col(j);
    s[j] = -s[j];
    lex ^= 1u << (n - 1 - j);
    if ((k & 4095ull) == 0) {
      y.noalias() = d * s;
      val = s.dot(y);
    }
    if (val >= best - slack) {
      const double exact = fresh(s);
      val = exact;
      if (exact > best || (exact == best && lex < best_lex)) {
        best = exact;
        best_lex = lex;
      }
    }
  }

  MaxcutResult out;
  out.x_opt = Partition(n);
  for (int i = 0; i < n; ++i)
    out.x_opt[i] = (best_lex >> (n - 1 - i)) & 1u ? -1 : 1;
  out.value = best;
  return out;
}

CurvatureReport curvature_check(const MixtureSpec& spec,
                                const SymmetricMatrix& z) {
  spec.validate();
  if (z.order() != spec.n)
    throw DimensionMismatch("curvature_check: Z order must equal spec.n");
  if (z.max_abs() > 1.0 + 1e-9)
    throw InvalidSpec("curvature_check: Z entries must lie in [-1, 1]");

  const int n = spec.n;
  const Vector xb = membership_vector(spec);
  const SymmetricMatrix zstar = SymmetricMatrix::from_dense(xb * xb.transpose());
  const SymmetricMatrix diff = zstar - z;  // exact zero at Z = Z*
  const double pg = separation(spec).gamma * spec.p;
  const double wmin = std::min(spec.w1_realized(), spec.w2_realized());

  CurvatureReport rep;
  rep.lhs = reference_R(spec).inner(diff);
  rep.rhs = pg * wmin * wmin * diff.dense().cwiseAbs().sum();
  rep.holds = rep.lhs >= rep.rhs - 1e-9 * n * n * pg;
  return rep;
}

EnvelopeReport deviation_envelope(const MixtureSpec& spec, int trials,
                                  std::uint64_t seed) {
  spec.validate();
  if (trials < 30)
    throw InvalidSpec("deviation_envelope: trials must be >= 30");

  const Matrix eg = expected_gram(spec).dense();
  const Matrix rd = reference_R(spec).dense();
  EnvelopeReport rep;
  rep.trials = trials;
  double gsum = 0.0, bsum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Dataset ds = sample(spec, rng::derive(seed, static_cast<std::uint64_t>(t)));
    const CenteredData cd = center(ds.X);
    const double g =
        op_norm(SymmetricMatrix::from_dense(cd.gram.dense() - eg));
    const double b =
        op_norm(SymmetricMatrix::from_dense(oracle_B(cd, spec).dense() - rd));
    rep.gram_dev_max = std::max(rep.gram_dev_max, g);
    rep.bias_dev_max = std::max(rep.bias_dev_max, b);
    gsum += g;
    bsum += b;
  }
  rep.gram_dev_mean = gsum / trials;
  rep.bias_dev_mean = bsum / trials;

  const double gamma = separation(spec).gamma;
  const double pn = static_cast<double>(spec.p) * spec.n;
  rep.c_hat = rep.gram_dev_max /
              (std::max(std::sqrt(pn), static_cast<double>(spec.n)) +
               spec.n * std::sqrt(spec.p * gamma));
  rep.xi_hat = rep.bias_dev_max / (spec.n * spec.p * gamma);
  return rep;
}

SandwichReport sandwich_check(const MixtureSpec& spec, std::uint64_t seed,
                              const SolverOptions& opts) {
  spec.validate();
  if (spec.n > 20)
    throw InvalidSpec("sandwich_check: n must be <= 20 for the exact bounds");

  const int n = spec.n;
  const Dataset ds = sample(spec, seed);
  const CenteredData cd = center(ds.X);
  const SdpSolution sol = solve(build_A(cd), opts);
  const Matrix bd = oracle_B(cd, spec).dense();
  const Matrix rd = reference_R(spec).dense();
  const Matrix zhat = sol.factor * sol.factor.transpose();
  const Vector xb = ds.membership.cast<double>();
  const Matrix zstar = xb * xb.transpose();

  const double pg = separation(spec).gamma * spec.p;
  const double wmin = std::min(spec.w1_realized(), spec.w2_realized());
  const double scale = static_cast<double>(n) * n * pg;

  SandwichReport rep;
  rep.lhs = rd.cwiseProduct(zstar - zhat).sum();
  rep.upper = 2.0 * kGrothendieckBound * inf_to_one_exact(bd - rd);
  rep.delta = (zhat - zstar).cwiseAbs().sum() / (static_cast<double>(n) * n);
  rep.delta_bound = rep.upper / (scale * wmin * wmin);
  rep.lower_ok = rep.lhs >= -1e-9 * scale;
  rep.upper_ok = rep.lhs <= rep.upper + 1e-9 * scale;
  rep.delta_ok = rep.delta <= rep.delta_bound + 1e-9 * (1.0 + rep.delta_bound);
  const double b_zhat = bd.cwiseProduct(zhat).sum();
  const double b_zstar = xb.dot(bd * xb);
  rep.solver_ok = b_zhat >= b_zstar - 1e-9 * (1.0 + std::abs(b_zstar));
  return rep;
}

std::string spec_fingerprint(const MixtureSpec& spec) {
  const char* model = "bernoulli";
  switch (spec.noise.kind) {
    case NoiseKind::BernoulliIndependent:
      model = "bernoulli";
      break;
    case NoiseKind::IsotropicGaussian:
      model = "isotropic";
      break;
    case NoiseKind::DiagonalFactor:
      model = "diagonal";
      break;
    case NoiseKind::GeneralFactor:
      model = "general";
      break;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "model=%s n=%d p=%d w1=%.6g", model, spec.n,
                spec.p, spec.w1);
  return buf;
}

void write_check_rows(const std::vector<CheckRow>& rows, std::ostream& os) {
  os << "check,fingerprint,statistic,bound,pass\n";
  for (const CheckRow& row : rows) {
    os << row.name << ',' << row.fingerprint << ',' << fmt_double(row.statistic)
       << ',' << fmt_double(row.bound) << ',' << (row.pass ? 1 : 0) << '\n';
  }
}

}  // namespace mixclust
