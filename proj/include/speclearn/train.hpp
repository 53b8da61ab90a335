#pragma once

// Orbit-pair datasets, the contrastive invariance objective
//   L(W) = sum_(x,y) sum_i |phi_i(W,x) - phi_i(W,y)|^2 + eta |dI - W W^dag|^2
// with analytic gradients on the real view, and Adam on complex weights
// treated as interleaved real pairs.

#include <cstdint>
#include <optional>
#include <vector>

#include "speclearn/group.hpp"
#include "speclearn/weight_tensor.hpp"

namespace speclearn {

struct OrbitPair {
  Signal x;
  Signal y;       // act(hidden_g, x) + noise
  int hidden_g;   // held out of the loss; stored for evaluation only
};

struct TrainConfig {
  double eta = 1.0;
  double lr = 1e-2;
  int steps = 5000;
  int batch = 64;
  int dataset_size = 4096;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  bool fix_identity_slice = true;
};

struct LossTerms {
  double invariance = 0.0;
  double orthogonality = 0.0;  // includes the eta factor
  double total() const { return invariance + orthogonality; }
};

struct TrainReport {
  std::vector<LossTerms> curve;  // one entry per completed step
  WeightTensor final_weights;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  bool diverged = false;
  int steps_completed = 0;
};

// x has i.i.d. standard-normal real and imaginary parts, g is uniform, and
// y = act(g, x) + eps with eps complex Gaussian of per-real-coordinate
// standard deviation noise_sigma. Bit-identical under a fixed seed.
std::vector<OrbitPair> gen_dataset(const FiniteGroup& G, int size,
                                   double noise_sigma, std::uint64_t seed);

// Irrep dimensions of G: the capsule layout of the spectral network.
std::vector<int> model_dims(const FiniteGroup& G);

// Complex Gaussian entries scaled by 1/sqrt(|G|), identity slice then forced.
WeightTensor init_weights(const FiniteGroup& G, const std::vector<int>& dims,
                          std::uint64_t seed, bool fix_identity_slice = true);

LossTerms loss(const FiniteGroup& G, const WeightTensor& W,
               const std::vector<OrbitPair>& batch, int order, double eta);

// grad is packed complex: entry = dL/dRe(w) + i dL/dIm(w).
LossTerms loss_and_gradient(const FiniteGroup& G, const WeightTensor& W,
                            const std::vector<OrbitPair>& batch, int order,
                            double eta, WeightTensor& grad);

struct AdamState {
  std::vector<double> m, v;
  long t = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  void init(int real_param_count) {
    m.assign(real_param_count, 0.0);
    v.assign(real_param_count, 0.0);
    t = 0;
  }
};

// One bias-corrected Adam step on the interleaved real view. Throws
// ErrorKind::TrainingDiverged on a non-finite gradient. When
// fix_identity_index is set, the W_i(identity) entries are restored to I
// after the update.
void adam_step(AdamState& state, WeightTensor& W, const WeightTensor& grad,
               double lr,
               std::optional<int> fix_identity_index = std::nullopt);

TrainReport train(const FiniteGroup& G, const std::vector<int>& dims,
                  const TrainConfig& cfg, int order);
TrainReport train(const FiniteGroup& G, const TrainConfig& cfg, int order = 1);

}  // namespace speclearn
