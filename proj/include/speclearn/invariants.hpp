#pragma once

// Spectral invariants: scalar spectra for commutative groups, operator-valued
// spectra via numerical Clebsch-Gordan decomposition for the general case,
// and the constructive completeness-recovery procedure.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "speclearn/group.hpp"
#include "speclearn/repr.hpp"

namespace speclearn {

struct SpectrumIndex {
  std::vector<int> indices;  // (rho_1, ..., rho_n)
  int order() const { return static_cast<int>(indices.size()); }
};

// beta(x) = x^_{rho_1} ... x^_{rho_n} conj(x^_{rho_1 ... rho_n})
std::complex<double> spectrum_commutative(const FiniteGroup& G,
                                          const IrrepSet& irr,
                                          const SpectrumIndex& idx,
                                          const Signal& x);

struct CGComponent {
  int target = 0;              // irrep index the component is isomorphic to
  Eigen::MatrixXcd isometry;   // (prod d) x d_target, orthonormal columns,
                               // intertwines: T(g) U = U rho_target(g)
};

struct CGDecomposition {
  std::vector<int> parent_dims;
  std::vector<CGComponent> components;

  int product_dim() const;
  // Square matrix [U_1 | ... | U_k]; unitary when the decomposition is exact.
  Eigen::MatrixXcd block_isometry() const;
};

inline constexpr std::uint64_t kDefaultCgSeed = 0x5eed0c9d;

// Numerical decomposition of rho_{i1} (x) ... (x) rho_{in}: isotypic
// projection via characters, then multiplicity splitting via eigenspaces of
// a random Hermitian commutant sample. Deterministic given the seed; retries
// with a fresh sample (at most 5) on eigenvalue ties or residual failure.
CGDecomposition clebsch_gordan(const FiniteGroup& G, const IrrepSet& irr,
                               const std::vector<int>& multi_index,
                               std::uint64_t seed = kDefaultCgSeed);

// beta(x) = (x^_{i1} (x) ... (x) x^_{in}) . U (diag_j x^_{T_j}^dag) U^dag
Eigen::MatrixXcd spectrum_nc(const FiniteGroup& G, const IrrepSet& irr,
                             const SpectrumIndex& idx, const Signal& x,
                             const CGDecomposition* cg = nullptr,
                             std::uint64_t seed = kDefaultCgSeed);

struct CompletenessResult {
  enum class Status { Recovered, Degenerate, NotRelated };
  Status status = Status::NotRelated;
  int g = -1;           // valid when Recovered
  double residual = 0;  // |x - g.y| relative to |x|, when Recovered
  bool parity_warning = false;  // n odd: completeness only proven for even n
};

// Recovers g with x = g . y from the Fourier ratio eta(rho) = x^_rho / y^_rho,
// for real signals with all Fourier coefficients nonzero.
CompletenessResult completeness_recover(const FiniteGroup& G,
                                        const IrrepSet& irr, const Signal& x,
                                        const Signal& y, int n = 2);

struct GenerateCheckReport {
  long candidates = 0;  // |dual|^(n+1) monomials examined
  long invariant = 0;   // count found invariant by character arithmetic
  long expected = 0;    // |dual|^n
  bool consistent = false;  // invariant set == { rho_{n+1} = rho_1...rho_n }
};

// Exhaustively confirms that a monomial x^_{rho_1}..x^_{rho_n} conj(x^_{rho})
// is invariant exactly when rho = rho_1 ... rho_n.
GenerateCheckReport spectra_generate_check(const FiniteGroup& G,
                                           const IrrepSet& irr, int n);

}  // namespace speclearn
