#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "mixclust/rng.hpp"
#include "mixclust/types.hpp"

using namespace mixclust;

namespace {
Matrix random_symmetric(int n, std::uint64_t seed) {
  rng::CounterRng g(seed, 0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = g.next_normal();
  return m;
}
}  // namespace

TEST_CASE("identity and entry round trip") {
  auto id = SymmetricMatrix::identity(4);
  CHECK(id(0, 0) == 1.0);
  CHECK(id(2, 3) == 0.0);
  CHECK(id.trace() == doctest::Approx(4.0));

  SymmetricMatrix m(3);
  m.set(0, 2, 5.0);
  CHECK(m(2, 0) == 5.0);  // writing (i,j) writes (j,i)
  m.add(2, 0, 1.0);
  CHECK(m(0, 2) == 6.0);
}

TEST_CASE("from_dense validates symmetry and finiteness") {
  Matrix bad(2, 2);
  bad << 0.0, 1.0, 2.0, 0.0;
  CHECK_THROWS_AS((void)SymmetricMatrix::from_dense(bad), InvalidSpec);

  Matrix inf2(2, 2);
  inf2 << 1.0, 0.0, 0.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)SymmetricMatrix::from_dense(inf2), InvalidSpec);

  Matrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS((void)SymmetricMatrix::from_dense(rect), DimensionMismatch);
}

TEST_CASE("reductions match dense linear algebra") {
  const int n = 9;
  const Matrix d = random_symmetric(n, 21);
  const auto s = SymmetricMatrix::from_dense(d);
  const Matrix back = s.dense();
  CHECK((back - d).cwiseAbs().maxCoeff() < 1e-15);

  CHECK(s.trace() == doctest::Approx(d.trace()).epsilon(1e-12));
  CHECK(s.grand_sum() == doctest::Approx(d.sum()).epsilon(1e-12));

  const Matrix d2 = random_symmetric(n, 22);
  const auto s2 = SymmetricMatrix::from_dense(d2);
  CHECK(s.inner(s2) ==
        doctest::Approx((d.array() * d2.array()).sum()).epsilon(1e-12));

  rng::CounterRng g(23, 0);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = g.next_normal();
  CHECK(s.quad(x) == doctest::Approx(x.dot(d * x)).epsilon(1e-12));

  CHECK(s.inf_norm() ==
        doctest::Approx(d.cwiseAbs().rowwise().sum().maxCoeff()));
  CHECK(s.max_abs() == doctest::Approx(d.cwiseAbs().maxCoeff()));
}

TEST_CASE("arithmetic helpers") {
  const Matrix d = random_symmetric(5, 31);
  auto s = SymmetricMatrix::from_dense(d);
  auto t = SymmetricMatrix::from_dense(d);
  auto diff = s - t;
  CHECK(diff.max_abs() == 0.0);
  auto sum = s + t;
  CHECK(sum.max_abs() == doctest::Approx(2.0 * s.max_abs()));

  s.add_scaled_identity(3.0);
  CHECK(s(1, 1) == doctest::Approx(d(1, 1) + 3.0));
  CHECK(s(0, 1) == doctest::Approx(d(0, 1)));
  s.scale(0.5);
  CHECK(s(0, 1) == doctest::Approx(0.5 * d(0, 1)));

  CHECK_THROWS_AS((void)(SymmetricMatrix(2) - SymmetricMatrix(3)),
                  DimensionMismatch);
}
