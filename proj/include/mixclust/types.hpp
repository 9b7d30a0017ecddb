#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixclust {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Two-way partition label vector; every entry is +1 or -1.
using Partition = Eigen::VectorXi;

struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSpectrum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense real symmetric matrix of order n, stored as the upper triangle
// (row-major, diagonal included). Symmetry holds by construction: there is
// no way to write an (i,j) entry without writing (j,i).
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int n);

  static SymmetricMatrix identity(int n);
  // Validates |M - Mᵀ|max <= tol·max|M| then averages the two triangles.
  static SymmetricMatrix from_dense(const Matrix& m, double tol = 1e-9);

  int order() const { return n_; }
  double operator()(int i, int j) const { return upper_[index(i, j)]; }
  void set(int i, int j, double v) { upper_[index(i, j)] = v; }
  void add(int i, int j, double v) { upper_[index(i, j)] += v; }

  Matrix dense() const;
  double trace() const;
  double grand_sum() const;                       // 1ᵀ M 1
  double inner(const SymmetricMatrix& o) const;   // ⟨M, O⟩ = Σᵢⱼ mᵢⱼ oᵢⱼ
  double quad(const Vector& x) const;             // xᵀ M x
  double max_abs() const;
  double inf_norm() const;                        // maxᵢ Σⱼ |mᵢⱼ|

  SymmetricMatrix& add_scaled_identity(double c); // M += c·I
  SymmetricMatrix& scale(double c);               // M *= c

 private:
  std::size_t index(int i, int j) const;
  int n_ = 0;
  std::vector<double> upper_;
};

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);

}  // namespace mixclust
