#pragma once

// WeightTensor: per-irrep-slot blocks W_i(g) in End(V_i), viewed as a linear
// map C[G] -> (+)_i End(V_i). This is both the learnable object of the
// spectral networks and the home of the group Fourier matrix.
//
// The flattened view stacks slots in order, each block row-major, with rows
// scaled by sqrt(d_i) so that plain dot products of flat columns realize the
// normalized Hilbert-Schmidt pairing <A, B> = d_i tr(A^dag B).

#include <Eigen/Dense>
#include <vector>

#include "speclearn/errors.hpp"
#include "speclearn/group.hpp"

namespace speclearn {

struct WeightSlot {
  int dim = 1;
  std::vector<Eigen::MatrixXcd> blocks;  // indexed by group element
};

class WeightTensor {
 public:
  WeightTensor() = default;
  WeightTensor(int group_order, const std::vector<int>& dims);

  int group_order() const { return group_order_; }
  int num_slots() const { return static_cast<int>(slots_.size()); }
  const WeightSlot& slot(int i) const { return slots_[i]; }
  WeightSlot& slot(int i) { return slots_[i]; }
  const std::vector<WeightSlot>& slots() const { return slots_; }

  bool all_one_dim() const;
  int flat_dim() const { return flat_dim_; }  // sum of d_i^2

  // Column g of the flattened map, scaled by sqrt(d_i) per slot.
  Eigen::VectorXcd flat_column(int g) const;
  Eigen::MatrixXcd flat_matrix() const;  // flat_dim x |G|

  // Gram matrix W^dag W over group elements under the normalized
  // Hilbert-Schmidt pairing; equals |G| I for the exact Fourier weights.
  Eigen::MatrixXcd gram() const;

  // W_i(x) = sum_g W_i(g) x_g
  Eigen::MatrixXcd apply(int slot, const Signal& x) const;

  void set_identity_slice(int identity_index);
  double identity_slice_residual(int identity_index) const;

  // Interleaved real view (slot-major, element-major, row-major, re/im),
  // used by the optimizer and the finite-difference oracle.
  int param_count() const;  // number of complex entries
  void to_real(std::vector<double>& out) const;
  void from_real(const std::vector<double>& in);

  // Marks a tensor that is supposed to satisfy W^dag W = |G| I.
  bool expect_unitary = false;

 private:
  int group_order_ = 0;
  int flat_dim_ = 0;
  std::vector<WeightSlot> slots_;
};

}  // namespace speclearn
