#pragma once

// Multiplication-table recovery from weights,
//   table[g][h] = argmin_l | W(h) . W(g)  -  W(l) |
// under the normalized Hilbert-Schmidt norm (blocks compose second-argument
// first, so the exact Fourier weights reproduce the constructor table:
// rho(h)^dag rho(g)^dag = rho(gh)^dag), plus the relaxation quantities of the
// recovery theorem and table-accuracy scoring.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "speclearn/group.hpp"
#include "speclearn/specnet.hpp"
#include "speclearn/weight_tensor.hpp"

namespace speclearn {

struct RecoveryReport {
  Eigen::MatrixXi table;
  Eigen::MatrixXd margins;  // best-vs-second-best norm gap per (g, h)
  double L = 0.0;           // |W^dag W - |G| I|_inf
  bool identity_slice_ok = true;  // W_i(1) ~ I within 1e-3 (warning otherwise)
  std::optional<IsoResult> vs_truth;
};

RecoveryReport recover_table(const WeightTensor& W);
RecoveryReport recover_table(const WeightTensor& W,
                             const Eigen::MatrixXi& truth);

// Max absolute entry of the Gram defect W^dag W - |G| I.
double compute_L(const WeightTensor& W);

// Closed-form unitarity defect bound for a coercive McCulloch-Pitts neuron
// with |sigma(0) - sigma(x)| >= C |x|^n; valid for delta < C.
double mcculloch_omega_bound(double delta, double C, int n);

struct DefectBound {
  double delta = 0.0;      // max probe discrepancy between phi(g.W) and phi(W)
  double omega = 0.0;      // bound on the unitarity defect at delta
  double bound_rhs = 0.0;  // sqrt(1/2 - L/|G|) / (sqrt(|G| + L) + 1)
  double L = 0.0;
  bool bound_available = false;
  bool premise_bound = false;
  bool premise_L = false;
  bool premise_identity = false;
  bool satisfied = false;  // all premises hold (requires an available bound)
};

// Checks the recovery theorem's premises. The probe estimate of the sup
// distance is a lower bound, so "satisfied" may be optimistic; this is
// reported, never asserted. Models without a closed-form defect bound yield
// bound_available = false and satisfied = false.
DefectBound relaxation_premises(const FiniteGroup& G, const WeightTensor& W,
                                const ModelSpec& model, int probe_count = 256,
                                std::uint64_t seed = 0xb0be5ull);

// Fraction of runs whose table is isomorphic to the ground truth.
double table_accuracy(const std::vector<RecoveryReport>& runs,
                      const Eigen::MatrixXi& truth);

}  // namespace speclearn
