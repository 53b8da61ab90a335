#pragma once

// Spectral Network forward passes (scalar and capsule), McCulloch-Pitts
// neurons, the adjunction identity, and constructive unitary-symmetry
// witnesses (Procrustes alignment of stacked weight blocks).
//
// Unitary symmetry is right composition: W and W' parametrize the same
// function exactly when W_i(g) = W_i'(g) U_i for slot-constant unitaries U_i.
// The weight action mirrors the signal action: (g . W)_i(h) = W_i(g^-1 h).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "speclearn/group.hpp"
#include "speclearn/repr.hpp"
#include "speclearn/weight_tensor.hpp"

namespace speclearn {

enum class Activation { AbsSquare, SigmoidAbs, LeakyReluAbs };

Activation parse_activation(const std::string& tag);
std::string activation_name(Activation a);

// phi(W, x) = W_{i1} x ... W_{in} x . conj((W_{i1} (.) ... (.) W_{in}) x)
// for all-one-dimensional weight tensors; (.) is the entrywise product of
// weight rows over G.
std::complex<double> forward_commutative(const WeightTensor& W,
                                         const std::vector<int>& multi_index,
                                         const Signal& x);

// phi(W, x) = W_i(x)^{(x) n} . sum_g (W_i(g)^dag)^{(x) n} conj(x_g)
Eigen::MatrixXcd forward_nc(const WeightTensor& W, int slot, int order,
                            const Signal& x);

// sigma(W x) for a single-row weight tensor.
std::complex<double> mcculloch_forward(const WeightTensor& W, const Signal& x,
                                       Activation act, double bias = 0.0);

WeightTensor act_on_weights(const FiniteGroup& G, int g, const WeightTensor& W);

struct ModelSpec {
  enum class Kind { Spectral, McCulloch };
  Kind kind = Kind::Spectral;
  int order = 1;  // n; Spectral only
  Activation activation = Activation::AbsSquare;  // McCulloch only
  double bias = 0.0;

  static ModelSpec spectral(int n) { return {Kind::Spectral, n, Activation::AbsSquare, 0.0}; }
  static ModelSpec mcculloch(Activation a, double bias = 0.0) {
    return {Kind::McCulloch, 1, a, bias};
  }
};

// Concatenated slot outputs (flattened matrices for capsule slots).
std::vector<std::complex<double>> model_outputs(const ModelSpec& spec,
                                                const WeightTensor& W,
                                                const Signal& x);

// | phi(W, g.x) - phi(g^-1.W, x) |, max over output entries.
double adjunction_check(const FiniteGroup& G, const ModelSpec& spec,
                        const WeightTensor& W, const Signal& x, int g);

struct AlignResult {
  Eigen::MatrixXcd unitary;
  double residual = 0.0;      // |A - B U|_F
  int ambiguous_dim = 0;      // kernel dimension of B^dag A; > 0 warns
  double gram_mismatch = 0.0; // |A A^dag - B B^dag|_F precondition residual
};

// Closest-unitary (Procrustes) solution of A ~ B U for stacked k*d x d
// matrices with A A^dag ~ B B^dag.
AlignResult align_unitary(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                          double tol = 1e-8);

struct WitnessSlot {
  Eigen::MatrixXcd unitary;
  double residual = 0.0;  // max_g |W_i(g) - W_i'(g) U_i|_F
};

struct WitnessResult {
  enum class Status { Succeeded, OutputsDiffer, ResidualTooLarge };
  Status status = Status::Succeeded;
  std::vector<WitnessSlot> slots;
  double max_residual = 0.0;
  double probe_discrepancy = 0.0;

  bool ok() const { return status == Status::Succeeded; }
};

// Per-slot unitaries U_i with W_i(g) ~ W_i'(g) U_i, or evidence against
// unitary symmetry. Throws a precondition error on slot-norm mismatch.
WitnessResult unitary_symmetry_witness(const ModelSpec& spec,
                                       const WeightTensor& W,
                                       const WeightTensor& Wprime,
                                       int probe_count = 64,
                                       std::uint64_t seed = 0x9a0b5eed);

struct IrrepAlignment {
  Eigen::MatrixXcd basis_change;  // V with W_i(g) W_i(1)^dag ~ V rho(g)^dag V^dag
  double relative_residual = 0.0;
};

// Aligns a trained slot against a reference irrep by solving for the
// intertwiner between (W_i(g) W_i(1)^dag)^dag and rho(g).
IrrepAlignment align_slot_to_irrep(const FiniteGroup& G,
                                   const WeightSlot& slot, const Irrep& rho,
                                   std::uint64_t seed = 0xa119ull);

}  // namespace speclearn
