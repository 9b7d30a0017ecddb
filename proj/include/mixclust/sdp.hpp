#pragma once

#include <cstdint>
#include <string>

#include "mixclust/preprocess.hpp"
#include "mixclust/types.hpp"

namespace mixclust {

// rank 0 requests default_rank(n) at solve time.
struct SolverOptions {
  int rank = 0;
  double tol = 1e-7;
  int max_iters = 2000;
  int restarts = 3;
  std::uint64_t seed = 0;

  void validate() const;  // throws InvalidSpec
};

// ceil(sqrt(2n)) + 1 capped at 32: above the elliptope barrier rank until
// the cap bites.
int default_rank(int n);

struct SdpSolution {
  Matrix factor;  // n x r with unit rows; the iterate Z = factor factor'
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  // Leading eigenvector of Z scaled to sqrt(n), first nonzero coordinate
  // positive; empty when the top eigenvalue is numerically multiple.
  Vector xhat;
};

// Maximizes <A, VV'> over unit-row factors by Riemannian ascent with Armijo
// backtracking; best of opts.restarts runs wins, ties keep the earliest.
// Non-convergence is reported through converged=false on the best iterate,
// never thrown.
SdpSolution solve(const SymmetricMatrix& a, const SolverOptions& opts = {});

// Cached xhat when solve produced one; otherwise computed from the factor.
// Throws DegenerateSpectrum when the top eigenvalue gap is below 1e-12
// relative.
Vector leading_eigvec(const SdpSolution& sol);

// Componentwise signs, zeros to +1.
Partition round_signs(const Vector& x);

// YY' - lambda E_n: same elliptope argmax as build_A's matrix, objectives
// offset by lambda n. Construction helper only; solve consumes either.
SymmetricMatrix sdp2_matrix(const CenteredData& cd);

// Reads the nested "sdp" object (keys rank, tol, max_iters, restarts, seed)
// from a JSON config; missing keys keep defaults. Throws InvalidConfig.
SolverOptions solver_options_from_json(const std::string& text);

}  // namespace mixclust
