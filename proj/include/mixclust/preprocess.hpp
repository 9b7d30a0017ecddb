#pragma once

#include <iosfwd>
#include <string>

#include "mixclust/mixture.hpp"
#include "mixclust/types.hpp"

namespace mixclust {

// Globally centered data and the scalars the adjusted objective needs.
// Invariants: Y has zero column sums, 1' gram 1 = 0 up to roundoff, and
// lambda = -tau/(n-1) because the gram's grand sum vanishes.
struct CenteredData {
  Matrix Y;              // X - P1 X
  SymmetricMatrix gram;  // YY'
  double lambda = 0.0;   // (2/(n(n-1))) sum_{i<j} gram_ij
  double tau = 0.0;      // tr(gram)/n
};

CenteredData center(const Matrix& x);  // throws InvalidSpec when n < 2

// A = YY' - lambda (E_n - I_n); shares the gram's diagonal.
SymmetricMatrix build_A(const CenteredData& cd);

// R = E(Y) E(Y)': p gamma scaled membership blocks, built from the realized
// cluster fractions so tr(R) = w1 w2 n p gamma and 1'R1 = 0 hold exactly.
SymmetricMatrix reference_R(const MixtureSpec& spec);

// Analytic E tau = (tr(Sigma_Y) + tr(R))/n = ((n-1)(w1 V1 + w2 V2) + tr(R))/n.
double expected_tau(const MixtureSpec& spec);

// B = A - (E tau) I with the analytic E tau; the exact oracle available here
// because the generator is known.
SymmetricMatrix oracle_B(const CenteredData& cd, const MixtureSpec& spec);

// E YY' = Sigma_Y + R where Sigma_Y = blockdiag(V1 I, V2 I)
//   - ((w2 V1 + w1 V2)/n) E_n - W2,  W2 = ((V1-V2)/n) blockdiag(E, -E).
SymmetricMatrix expected_gram(const MixtureSpec& spec);

// E B - R = W0 - W - (tr(R)/(n-1))(I - E_n/n), with
//   W0 = (V1-V2) blockdiag(w2 I, -w1 I),
//   W  = ((V1-V2)/n) [2 w2 E, (w2-w1) E; (w2-w1) E, -2 w1 E].
SymmetricMatrix expected_bias(const MixtureSpec& spec);

// Row-major CSV with header "# n=<n> kind=<A|B|R|gram>"; entries as %.17g so
// values round-trip exactly.
void export_csv(const SymmetricMatrix& m, const std::string& kind,
                std::ostream& os);

}  // namespace mixclust
