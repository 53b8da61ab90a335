#pragma once

// Irreducible unitary representations for the supported groups, the group
// Fourier transform and its inverse, and the ground-truth Fourier weights.
//
// Conventions, fixed once and tested everywhere downstream:
//   transform      x^_rho = sum_g rho(g)^dag x_g
//   equivariance   (g . x)^ = x^ . rho(g)^dag         (right composition)
//   convolution    (x * y)^ = y^ . x^
//   inverse        x_g = 1/|G| sum_i d_i tr(rho_i(g) x^_i)

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "speclearn/group.hpp"
#include "speclearn/weight_tensor.hpp"

namespace speclearn {

struct Irrep {
  int dim = 1;
  std::string label;
  std::vector<Eigen::MatrixXcd> mats;  // rho(g), indexed by group element

  std::complex<double> character(int g) const { return mats[g].trace(); }
};

struct IrrepSet {
  int group_order = 0;
  bool commutative = false;
  std::vector<Irrep> irreps;

  int size() const { return static_cast<int>(irreps.size()); }
  const Irrep& operator[](int i) const { return irreps[i]; }
};

// Complete irrep set: characters from the cyclic factorization for
// commutative groups, the rotation/reflection matrix family for dihedral.
// For commutative groups the character index follows the same factor-digit
// scheme as the element index, so the dual group is index-aligned with G.
IrrepSet irreps(const FiniteGroup& G);

// Dual-group product of characters (commutative groups only).
int dual_product(const FiniteGroup& G, const std::vector<int>& chars);
int dual_conjugate(const FiniteGroup& G, int chr);

struct FourierCoefficients {
  std::vector<Eigen::MatrixXcd> blocks;
};

FourierCoefficients fourier_transform(const FiniteGroup& G, const IrrepSet& irr,
                                      const Signal& x);

Signal inverse_fourier(const FiniteGroup& G, const IrrepSet& irr,
                       const FourierCoefficients& c);

// W_i(g) = rho_i(g)^dag; satisfies W^dag W = |G| I and W_i(1) = I.
WeightTensor fourier_weight_tensor(const FiniteGroup& G, const IrrepSet& irr);

// Max residual of the Schur orthogonality relations over all matrix-entry
// pairs: sum_g conj(rho_i(g)_ab) rho_j(g)_cd = (|G|/d_i) delta delta delta.
double verify_schur(const FiniteGroup& G, const IrrepSet& irr);

}  // namespace speclearn
