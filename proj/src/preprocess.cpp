#include "mixclust/preprocess.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace mixclust {

CenteredData center(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  if (n < 2) throw InvalidSpec("center: need at least two samples");
  if (!x.allFinite()) throw InvalidSpec("center: non-finite entry");

  CenteredData cd;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  cd.Y = x.rowwise() - mean;

  Matrix g = Matrix::Zero(n, n);
  g.selfadjointView<Eigen::Lower>().rankUpdate(cd.Y);
  const Matrix full = g.selfadjointView<Eigen::Lower>();
  cd.gram = SymmetricMatrix::from_dense(full, 1e-12);

  cd.tau = cd.gram.trace() / n;
  cd.lambda = (cd.gram.grand_sum() - cd.gram.trace()) /
              (static_cast<double>(n) * (n - 1));
  return cd;
}

SymmetricMatrix build_A(const CenteredData& cd) {
  const int n = cd.gram.order();
  SymmetricMatrix a = cd.gram;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a.add(i, j, -cd.lambda);
  return a;
}

SymmetricMatrix reference_R(const MixtureSpec& spec) {
  spec.validate();
  const int n = spec.n, n1 = spec.n1();
  const double pg = separation(spec).delta_sq;
  const double w1 = spec.w1_realized(), w2 = spec.w2_realized();
  SymmetricMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const bool i1 = i < n1, j1 = j < n1;
      const double w = i1 == j1 ? (i1 ? w2 * w2 : w1 * w1) : -w1 * w2;
      r.set(i, j, pg * w);
    }
  return r;
}

double expected_tau(const MixtureSpec& spec) {
  spec.validate();
  const auto prof = variance_profiles(spec);
  const double w1 = spec.w1_realized(), w2 = spec.w2_realized();
  const double tr_sigma = (spec.n - 1) * (w1 * prof.v1 + w2 * prof.v2);
  const double tr_r = w1 * w2 * spec.n * separation(spec).delta_sq;
  return (tr_sigma + tr_r) / spec.n;
}

SymmetricMatrix oracle_B(const CenteredData& cd, const MixtureSpec& spec) {
  if (cd.gram.order() != spec.n)
    throw DimensionMismatch("oracle_B: data and spec disagree on n");
  SymmetricMatrix b = build_A(cd);
  b.add_scaled_identity(-expected_tau(spec));
  return b;
}

SymmetricMatrix expected_gram(const MixtureSpec& spec) {
  SymmetricMatrix g = reference_R(spec);
  const auto prof = variance_profiles(spec);
  const int n = spec.n, n1 = spec.n1();
  const double w1 = spec.w1_realized(), w2 = spec.w2_realized();
  const double c = (w2 * prof.v1 + w1 * prof.v2) / n;
  const double d = (prof.v1 - prof.v2) / n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const bool i1 = i < n1, j1 = j < n1;
      const double w2_entry = i1 == j1 ? (i1 ? d : -d) : 0.0;
      double v = -c - w2_entry;
      if (i == j) v += i1 ? prof.v1 : prof.v2;
      g.add(i, j, v);
    }
  return g;
}

SymmetricMatrix expected_bias(const MixtureSpec& spec) {
  spec.validate();
  const auto prof = variance_profiles(spec);
  const int n = spec.n, n1 = spec.n1();
  const double w1 = spec.w1_realized(), w2 = spec.w2_realized();
  const double dv = prof.v1 - prof.v2;
  const double t = w1 * w2 * n * separation(spec).delta_sq / (n - 1);
  SymmetricMatrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const bool i1 = i < n1, j1 = j < n1;
      const double w0 = i == j ? dv * (i1 ? w2 : -w1) : 0.0;
      double w;
      if (i1 && j1)
        w = (dv / n) * 2.0 * w2;
      else if (!i1 && !j1)
        w = -(dv / n) * 2.0 * w1;
      else
        w = (dv / n) * (w2 - w1);
      const double trace_term = t * ((i == j ? 1.0 : 0.0) - 1.0 / n);
      b.set(i, j, w0 - w - trace_term);
    }
  return b;
}

void export_csv(const SymmetricMatrix& m, const std::string& kind,
                std::ostream& os) {
  if (kind != "A" && kind != "B" && kind != "R" && kind != "gram")
    throw InvalidSpec("export_csv: kind must be one of A, B, R, gram");
  const int n = m.order();
  os << "# n=" << n << " kind=" << kind << '\n';
  char buf[40];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      os << buf << (j + 1 < n ? ',' : '\n');
    }
  }
}

}  // namespace mixclust
