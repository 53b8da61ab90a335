#include "speclearn/recover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "speclearn/kernels.hpp"
#include "speclearn/rng.hpp"

namespace speclearn {

namespace {

RecoveryReport recover_impl(const WeightTensor& W,
                            const Eigen::MatrixXi* truth) {
  const auto& k = kernels::active();
  int d = W.group_order();
  if (d < 1) throw Error(ErrorKind::Shape, "empty weight tensor");

  RecoveryReport rep;
  rep.identity_slice_ok = W.identity_slice_residual(0) <= 1e-3;
  rep.L = compute_L(W);
  rep.table.resize(d, d);
  rep.margins.resize(d, d);

  Eigen::MatrixXcd cols = W.flat_matrix();
  std::vector<double> col_sq(d);
  for (int l = 0; l < d; ++l)
    col_sq[l] = k.sqnorm(cols.col(l).data(), cols.rows());

  std::vector<int> dims;
  for (const auto& s : W.slots()) dims.push_back(s.dim);
  WeightTensor composed(1, dims);  // scratch for one composed column

  for (int g = 0; g < d; ++g) {
    for (int h = 0; h < d; ++h) {
      // Blockwise operator composition, second argument first.
      for (int i = 0; i < W.num_slots(); ++i)
        composed.slot(i).blocks[0] =
            W.slot(i).blocks[h] * W.slot(i).blocks[g];
      Eigen::VectorXcd c = composed.flat_column(0);
      double c_sq = k.sqnorm(c.data(), c.size());

      double best = std::numeric_limits<double>::infinity();
      double second = best;
      int best_l = 0;
      for (int l = 0; l < d; ++l) {
        std::complex<double> cross =
            k.cdotc(cols.col(l).data(), c.data(), c.size());
        double dist_sq = std::max(0.0, c_sq + col_sq[l] - 2.0 * cross.real());
        if (dist_sq < best) {
          second = best;
          best = dist_sq;
          best_l = l;
        } else if (dist_sq < second) {
          second = dist_sq;
        }
      }
      rep.table(g, h) = best_l;
      rep.margins(g, h) =
          std::isfinite(second) ? std::sqrt(second) - std::sqrt(best) : 0.0;
    }
  }
  if (truth != nullptr) rep.vs_truth = tables_isomorphic(rep.table, *truth);
  return rep;
}

}  // namespace

RecoveryReport recover_table(const WeightTensor& W) {
  return recover_impl(W, nullptr);
}

RecoveryReport recover_table(const WeightTensor& W,
                             const Eigen::MatrixXi& truth) {
  return recover_impl(W, &truth);
}

double compute_L(const WeightTensor& W) {
  Eigen::MatrixXcd gram = W.gram();
  gram.diagonal().array() -= static_cast<double>(W.group_order());
  return gram.cwiseAbs().maxCoeff();
}

double mcculloch_omega_bound(double delta, double C, int n) {
  if (C <= 0 || n < 1)
    throw Error(ErrorKind::Precondition, "bound requires C > 0 and n >= 1");
  if (delta < 0) throw Error(ErrorKind::Precondition, "delta must be >= 0");
  if (delta >= C) return std::numeric_limits<double>::infinity();
  double r = std::pow(delta / C, 2.0 / static_cast<double>(n));
  return std::sqrt(2.0 * (1.0 - std::sqrt(1.0 - r)));
}

DefectBound relaxation_premises(const FiniteGroup& G, const WeightTensor& W,
                                const ModelSpec& model, int probe_count,
                                std::uint64_t seed) {
  if (G.order() != W.group_order())
    throw Error(ErrorKind::Shape, "group does not match weight tensor");
  DefectBound out;
  out.L = compute_L(W);
  double order = static_cast<double>(G.order());
  out.premise_L = out.L <= order / 2.0;
  out.premise_identity = W.identity_slice_residual(G.identity()) <= 1e-9;
  double inner = 0.5 - out.L / order;
  out.bound_rhs = inner > 0.0
                      ? std::sqrt(inner) / (std::sqrt(order + out.L) + 1.0)
                      : 0.0;

  // The per-slot output maps are coercive McCulloch-Pitts neurons only for
  // one-dimensional slots with |z|^2 (spectral order 1) or |z| activations.
  bool abs_square =
      (model.kind == ModelSpec::Kind::Spectral && model.order == 1) ||
      (model.kind == ModelSpec::Kind::McCulloch &&
       model.activation == Activation::AbsSquare);
  bool abs_linear = model.kind == ModelSpec::Kind::McCulloch &&
                    model.activation == Activation::LeakyReluAbs;
  out.bound_available = W.all_one_dim() && (abs_square || abs_linear);

  // Delta: max output discrepancy between phi(g.W, .) and phi(W, .) over a
  // seeded probe set on the unit sphere (uniform-metric surrogate).
  Rng rng(seed);
  std::vector<Signal> probes;
  probes.reserve(probe_count);
  for (int p = 0; p < probe_count; ++p) {
    Signal x = rng.cnormal_vector(G.order());
    x /= x.norm();
    probes.push_back(std::move(x));
  }
  std::vector<std::vector<std::complex<double>>> base;
  base.reserve(probes.size());
  for (const Signal& x : probes) base.push_back(model_outputs(model, W, x));
  for (int g = 0; g < G.order(); ++g) {
    WeightTensor Wg = act_on_weights(G, g, W);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      std::vector<std::complex<double>> o = model_outputs(model, Wg, probes[p]);
      for (std::size_t i = 0; i < o.size(); ++i)
        out.delta = std::max(out.delta, std::abs(o[i] - base[p][i]));
    }
  }

  if (out.bound_available) {
    double C = 1.0;
    int n_coercive = abs_square ? 2 : 1;
    out.omega = mcculloch_omega_bound(out.delta, C, n_coercive);
    out.premise_bound = out.omega < out.bound_rhs;
  } else {
    out.omega = std::numeric_limits<double>::quiet_NaN();
    out.premise_bound = false;
  }
  out.satisfied = out.bound_available && out.premise_bound && out.premise_L &&
                  out.premise_identity;
  return out;
}

double table_accuracy(const std::vector<RecoveryReport>& runs,
                      const Eigen::MatrixXi& truth) {
  if (runs.empty()) throw Error(ErrorKind::Shape, "no runs to score");
  int hits = 0;
  for (const RecoveryReport& r : runs) {
    if (r.table.rows() != truth.rows())
      throw Error(ErrorKind::Shape, "table dimension mismatch");
    if (tables_isomorphic(r.table, truth).isomorphic) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(runs.size());
}

}  // namespace speclearn
