#include "mixclust/mixture.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mixclust/rng.hpp"

namespace mixclust {

namespace {

bool inside_open_unit(double q) { return q > 0.0 && q < 1.0; }

// Operator norm of H Hᵀ by power iteration on x -> H (Hᵀ x); H is p x m.
double cov_op_norm(const Matrix& h, double tol) {
  const int p = static_cast<int>(h.rows());
  if (h.size() == 0 || h.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Vector x(p);
  for (int i = 0; i < p; ++i) x[i] = 1.0 / (i + 1);
  x.normalize();
  double lambda = 0.0;
  const int cap = 10 * p + 1000;
  for (int it = 0; it < cap; ++it) {
    Vector y = h * (h.transpose() * x);
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;  // x in the kernel: restart direction
    y /= norm;
    lambda = y.dot(h * (h.transpose() * y));
    const double residual = (h * (h.transpose() * y) - lambda * y).norm();
    x = y;
    if (residual <= tol * std::max(1.0, std::abs(lambda))) return lambda;
  }
  throw NonConvergence("snr: covariance operator-norm iteration stalled");
}

}  // namespace

int MixtureSpec::n1() const {
  return static_cast<int>(std::floor(n * w1 + 0.5));
}

void MixtureSpec::validate() const {
  if (n < 2) throw InvalidSpec("spec: need n >= 2");
  if (p < 1) throw InvalidSpec("spec: need p >= 1");
  if (!(w1 > 0.0 && w1 < 1.0)) throw InvalidSpec("spec: w1 must lie in (0,1)");
  if (n1() < 1 || n2() < 1)
    throw InvalidSpec("spec: each cluster needs at least one sample");
  if (mu1.size() != p || mu2.size() != p)
    throw InvalidSpec("spec: mean vectors must have length p");
  if (!mu1.allFinite() || !mu2.allFinite())
    throw InvalidSpec("spec: non-finite mean entry");
  if (subgaussian_bound < 0.0)
    throw InvalidSpec("spec: subgaussian bound must be >= 0");
  switch (noise.kind) {
    case NoiseKind::BernoulliIndependent:
      for (int k = 0; k < p; ++k)
        if (!inside_open_unit(mu1[k]) || !inside_open_unit(mu2[k]))
          throw InvalidSpec("spec: bernoulli means must lie strictly in (0,1)");
      break;
    case NoiseKind::IsotropicGaussian:
      break;
    case NoiseKind::DiagonalFactor:
      if (noise.sigma1.size() != p || noise.sigma2.size() != p)
        throw InvalidSpec("spec: sigma vectors must have length p");
      if (!noise.sigma1.allFinite() || !noise.sigma2.allFinite() ||
          noise.sigma1.minCoeff() < 0.0 || noise.sigma2.minCoeff() < 0.0)
        throw InvalidSpec("spec: sigma entries must be finite and >= 0");
      break;
    case NoiseKind::GeneralFactor: {
      if (noise.H1.rows() != p || noise.H2.rows() != p)
        throw InvalidSpec("spec: factor matrices must have p rows");
      if (noise.H1.cols() < p || noise.H2.cols() != noise.H1.cols())
        throw InvalidSpec("spec: factors need a common width m >= p");
      if (!noise.H1.allFinite() || !noise.H2.allFinite())
        throw InvalidSpec("spec: non-finite factor entry");
      break;
    }
  }
}

MixtureSpec make_bernoulli_spec(double alpha, double eps, int p, int n,
                                double w1) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw InvalidSpec("make_bernoulli_spec: alpha must lie in [0,1)");
  const double high = (1.0 + alpha) / 2.0 + eps / 2.0;
  const double low = (1.0 - alpha) / 2.0 + eps / 2.0;
  if (!inside_open_unit(high) || !inside_open_unit(low))
    throw InvalidSpec("make_bernoulli_spec: means pushed outside (0,1)");

  MixtureSpec spec;
  spec.n = n;
  spec.p = p;
  spec.w1 = w1;
  spec.alpha = alpha;
  spec.eps = eps;
  spec.noise.kind = NoiseKind::BernoulliIndependent;
  spec.mu1 = Vector(p);
  spec.mu2 = Vector(p);
  const int half = (p + 1) / 2;  // cluster 1 takes the high value here
  for (int k = 0; k < p; ++k) {
    spec.mu1[k] = k < half ? high : low;
    spec.mu2[k] = k < half ? low : high;
  }
  spec.validate();
  return spec;
}

Dataset sample(const MixtureSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int n = spec.n, p = spec.p, n1 = spec.n1();

  Dataset out;
  out.spec = spec;
  out.seed = seed;
  out.X.resize(n, p);
  out.membership.resize(n);

  for (int i = 0; i < n; ++i) {
    const bool first = i < n1;
    out.membership[i] = first ? 1 : -1;
    const Vector& mu = first ? spec.mu1 : spec.mu2;
    rng::CounterRng g(seed, static_cast<std::uint64_t>(i));
    switch (spec.noise.kind) {
      case NoiseKind::BernoulliIndependent:
        for (int k = 0; k < p; ++k)
          out.X(i, k) = g.next_bernoulli(mu[k]) ? 1.0 : 0.0;
        break;
      case NoiseKind::IsotropicGaussian:
        for (int k = 0; k < p; ++k) out.X(i, k) = mu[k] + g.next_normal();
        break;
      case NoiseKind::DiagonalFactor: {
        const Vector& s = first ? spec.noise.sigma1 : spec.noise.sigma2;
        for (int k = 0; k < p; ++k)
          out.X(i, k) = mu[k] + s[k] * g.next_normal();
        break;
      }
      case NoiseKind::GeneralFactor: {
        const Matrix& h = first ? spec.noise.H1 : spec.noise.H2;
        Vector w(h.cols());
        for (int k = 0; k < w.size(); ++k) w[k] = g.next_normal();
        out.X.row(i) = (mu + h * w).transpose();
        break;
      }
    }
  }
  return out;
}

Separation separation(const MixtureSpec& spec) {
  const double delta_sq = (spec.mu1 - spec.mu2).squaredNorm();
  return {delta_sq, delta_sq / spec.p};
}

double snr(const MixtureSpec& spec) {
  spec.validate();
  const double c0 = spec.subgaussian_bound;
  if (!(c0 > 0.0)) throw InvalidSpec("snr: subgaussian bound must be > 0");
  const auto sep = separation(spec);
  const double c0sq = c0 * c0;
  const double base_a = sep.delta_sq / c0sq;
  const double base_b = spec.n * spec.p * sep.gamma * sep.gamma / (c0sq * c0sq);
  switch (spec.noise.kind) {
    case NoiseKind::BernoulliIndependent:
    case NoiseKind::IsotropicGaussian:
      return std::min(base_a, base_b);
    case NoiseKind::DiagonalFactor: {
      const double nu = std::max(spec.noise.sigma1.cwiseAbs2().maxCoeff(),
                                 spec.noise.sigma2.cwiseAbs2().maxCoeff());
      if (nu == 0.0) return std::min(base_a, base_b);  // degenerate: no noise
      return std::min(base_a / nu, base_b / (nu * nu));
    }
    case NoiseKind::GeneralFactor: {
      const double nu = std::max(cov_op_norm(spec.noise.H1, 1e-10),
                                 cov_op_norm(spec.noise.H2, 1e-10));
      if (nu == 0.0) return std::min(base_a, base_b);
      return std::min(base_a / nu, base_b / (nu * nu));
    }
  }
  throw InvalidSpec("snr: unknown noise kind");
}

VarianceProfiles variance_profiles(const MixtureSpec& spec) {
  switch (spec.noise.kind) {
    case NoiseKind::BernoulliIndependent: {
      double v1 = 0.0, v2 = 0.0;
      for (int k = 0; k < spec.p; ++k) {
        v1 += spec.mu1[k] * (1.0 - spec.mu1[k]);
        v2 += spec.mu2[k] * (1.0 - spec.mu2[k]);
      }
      return {v1, v2};
    }
    case NoiseKind::IsotropicGaussian:
      return {static_cast<double>(spec.p), static_cast<double>(spec.p)};
    case NoiseKind::DiagonalFactor:
      return {spec.noise.sigma1.squaredNorm(), spec.noise.sigma2.squaredNorm()};
    case NoiseKind::GeneralFactor:
      return {spec.noise.H1.squaredNorm(), spec.noise.H2.squaredNorm()};
  }
  throw InvalidSpec("variance_profiles: unknown noise kind");
}

namespace {

using nlohmann::json;

Vector sigma_from_json(const json& j, const char* key, int p) {
  if (!j.contains(key))
    throw InvalidConfig(std::string("config: missing key ") + key);
  const auto& v = j.at(key);
  if (v.is_number()) return Vector::Constant(p, v.get<double>());
  if (v.is_array()) {
    if (static_cast<int>(v.size()) != p)
      throw InvalidConfig(std::string("config: ") + key +
                          " must have length p");
    Vector out(p);
    for (int k = 0; k < p; ++k) out[k] = v.at(k).get<double>();
    return out;
  }
  throw InvalidConfig(std::string("config: ") + key +
                      " must be a number or array");
}

Matrix factor_from_json(const json& j, const char* key, int p, int m) {
  if (!j.contains(key))
    throw InvalidConfig(std::string("config: missing key ") + key);
  const auto& v = j.at(key);
  if (!v.is_array() || static_cast<int>(v.size()) != p * m)
    throw InvalidConfig(std::string("config: ") + key +
                        " must be a row-major flat array of length p*m");
  Matrix out(p, m);
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < m; ++k)
      out(i, k) = v.at(static_cast<std::size_t>(i) * m + k).get<double>();
  return out;
}

}  // namespace

MixtureSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config: parse error: ") + e.what());
  }
  try {
    const std::string model = j.value("model", "bernoulli");
    const int n = j.at("n").get<int>();
    const int p = j.at("p").get<int>();
    const double w1 = j.value("w1", 0.5);
    const double alpha = j.at("alpha").get<double>();
    const double eps = j.value("eps", 0.1 * alpha);

    MixtureSpec spec = make_bernoulli_spec(alpha, eps, p, n, w1);
    if (model == "bernoulli") {
      // keep the bernoulli noise kind
    } else if (model == "isotropic") {
      spec.noise.kind = NoiseKind::IsotropicGaussian;
    } else if (model == "diagonal") {
      spec.noise.kind = NoiseKind::DiagonalFactor;
      spec.noise.sigma1 = sigma_from_json(j, "sigma1", p);
      spec.noise.sigma2 = sigma_from_json(j, "sigma2", p);
    } else if (model == "general") {
      spec.noise.kind = NoiseKind::GeneralFactor;
      const int m = j.value("m", p);
      spec.noise.H1 = factor_from_json(j, "H1", p, m);
      spec.noise.H2 = factor_from_json(j, "H2", p, m);
    } else {
      throw InvalidConfig("config: unknown model '" + model + "'");
    }
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config: ") + e.what());
  } catch (const InvalidSpec& e) {
    throw InvalidConfig(std::string("config: ") + e.what());
  }
}

std::string spec_to_json(const MixtureSpec& spec) {
  if (!std::isfinite(spec.alpha))
    throw InvalidConfig(
        "spec_to_json: only mean-pattern specs (alpha/eps) serialize");
  json j;
  switch (spec.noise.kind) {
    case NoiseKind::BernoulliIndependent:
      j["model"] = "bernoulli";
      break;
    case NoiseKind::IsotropicGaussian:
      j["model"] = "isotropic";
      break;
    case NoiseKind::DiagonalFactor: {
      j["model"] = "diagonal";
      j["sigma1"] = std::vector<double>(
          spec.noise.sigma1.data(), spec.noise.sigma1.data() + spec.p);
      j["sigma2"] = std::vector<double>(
          spec.noise.sigma2.data(), spec.noise.sigma2.data() + spec.p);
      break;
    }
    case NoiseKind::GeneralFactor: {
      j["model"] = "general";
      j["m"] = static_cast<int>(spec.noise.H1.cols());
      std::vector<double> h1, h2;
      for (int i = 0; i < spec.p; ++i)
        for (int k = 0; k < spec.noise.H1.cols(); ++k) {
          h1.push_back(spec.noise.H1(i, k));
          h2.push_back(spec.noise.H2(i, k));
        }
      j["H1"] = h1;
      j["H2"] = h2;
      break;
    }
  }
  j["n"] = spec.n;
  j["p"] = spec.p;
  j["w1"] = spec.w1;
  j["alpha"] = spec.alpha;
  j["eps"] = spec.eps;
  return j.dump();
}

}  // namespace mixclust
