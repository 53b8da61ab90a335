#include "speclearn/specnet.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "speclearn/kernels.hpp"
#include "speclearn/rng.hpp"

namespace speclearn {

namespace {

using cplx = std::complex<double>;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd kron_power(const Eigen::MatrixXcd& a, int n) {
  Eigen::MatrixXcd out = a;
  for (int k = 1; k < n; ++k) out = kron(out, a);
  return out;
}

void check_signal(const WeightTensor& W, const Signal& x) {
  if (x.size() != W.group_order())
    throw Error(ErrorKind::Shape, "signal length does not match weight tensor");
}

}  // namespace

Activation parse_activation(const std::string& tag) {
  if (tag == "abs_square") return Activation::AbsSquare;
  if (tag == "sigmoid_abs") return Activation::SigmoidAbs;
  if (tag == "leaky_relu_abs") return Activation::LeakyReluAbs;
  throw Error(ErrorKind::Parse, "unknown activation '" + tag + "'");
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::AbsSquare: return "abs_square";
    case Activation::SigmoidAbs: return "sigmoid_abs";
    case Activation::LeakyReluAbs: return "leaky_relu_abs";
  }
  return "?";
}

std::complex<double> forward_commutative(const WeightTensor& W,
                                         const std::vector<int>& multi_index,
                                         const Signal& x) {
  check_signal(W, x);
  if (!W.all_one_dim())
    throw Error(ErrorKind::Shape,
                "forward_commutative requires one-dimensional slots");
  if (multi_index.empty())
    throw Error(ErrorKind::Shape, "multi-index must have order >= 1");
  int d = W.group_order();
  const auto& k = kernels::active();

  Eigen::VectorXcd hadamard = Eigen::VectorXcd::Ones(d);
  cplx prod(1.0, 0.0);
  Eigen::VectorXcd row(d);
  for (int i : multi_index) {
    if (i < 0 || i >= W.num_slots())
      throw Error(ErrorKind::Shape, "slot index out of range");
    for (int g = 0; g < d; ++g) row[g] = W.slot(i).blocks[g](0, 0);
    prod *= k.cdotu(row.data(), x.data(), static_cast<std::size_t>(d));
    Eigen::VectorXcd next(d);
    k.chadamard(hadamard.data(), row.data(), next.data(),
                static_cast<std::size_t>(d));
    hadamard = next;
  }
  return prod *
         std::conj(k.cdotu(hadamard.data(), x.data(), static_cast<std::size_t>(d)));
}

Eigen::MatrixXcd forward_nc(const WeightTensor& W, int slot, int order,
                            const Signal& x) {
  check_signal(W, x);
  if (slot < 0 || slot >= W.num_slots())
    throw Error(ErrorKind::Shape, "slot index out of range");
  if (order < 1) throw Error(ErrorKind::Shape, "order must be >= 1");
  const WeightSlot& s = W.slot(slot);
  Eigen::MatrixXcd Z = W.apply(slot, x);
  Eigen::MatrixXcd Zn = kron_power(Z, order);
  int D = static_cast<int>(Zn.rows());
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(D, D);
  for (int g = 0; g < W.group_order(); ++g)
    B += kron_power(s.blocks[g].adjoint(), order) * std::conj(x[g]);
  return Zn * B;
}

std::complex<double> mcculloch_forward(const WeightTensor& W, const Signal& x,
                                       Activation act, double bias) {
  check_signal(W, x);
  if (W.num_slots() != 1 || W.slot(0).dim != 1)
    throw Error(ErrorKind::Shape,
                "McCulloch-Pitts neuron takes a single-row weight tensor");
  cplx z(0.0, 0.0);
  for (int g = 0; g < W.group_order(); ++g)
    z += W.slot(0).blocks[g](0, 0) * x[g];
  switch (act) {
    case Activation::AbsSquare:
      return std::norm(z);
    case Activation::SigmoidAbs:
      return 1.0 / (1.0 + std::exp(-std::abs(z))) + bias;
    case Activation::LeakyReluAbs: {
      double t = std::abs(z);
      return t >= 0.0 ? t : 0.01 * t;
    }
  }
  throw Error(ErrorKind::Parse, "unknown activation");
}

WeightTensor act_on_weights(const FiniteGroup& G, int g,
                            const WeightTensor& W) {
  if (G.order() != W.group_order())
    throw Error(ErrorKind::Shape, "group does not match weight tensor");
  WeightTensor out = W;
  int ginv = G.inverse(g);
  for (int i = 0; i < W.num_slots(); ++i)
    for (int h = 0; h < G.order(); ++h)
      out.slot(i).blocks[h] = W.slot(i).blocks[G.mult(ginv, h)];
  return out;
}

std::vector<std::complex<double>> model_outputs(const ModelSpec& spec,
                                                const WeightTensor& W,
                                                const Signal& x) {
  std::vector<cplx> out;
  if (spec.kind == ModelSpec::Kind::McCulloch) {
    if (!W.all_one_dim())
      throw Error(ErrorKind::Shape,
                  "McCulloch-Pitts model requires one-dimensional slots");
    for (int i = 0; i < W.num_slots(); ++i) {
      cplx z(0.0, 0.0);
      for (int g = 0; g < W.group_order(); ++g)
        z += W.slot(i).blocks[g](0, 0) * x[g];
      switch (spec.activation) {
        case Activation::AbsSquare: out.push_back(std::norm(z)); break;
        case Activation::SigmoidAbs:
          out.push_back(1.0 / (1.0 + std::exp(-std::abs(z))) + spec.bias);
          break;
        case Activation::LeakyReluAbs: out.push_back(std::abs(z)); break;
      }
    }
    return out;
  }
  for (int i = 0; i < W.num_slots(); ++i) {
    Eigen::MatrixXcd phi = forward_nc(W, i, spec.order, x);
    for (Eigen::Index r = 0; r < phi.rows(); ++r)
      for (Eigen::Index c = 0; c < phi.cols(); ++c) out.push_back(phi(r, c));
  }
  return out;
}

double adjunction_check(const FiniteGroup& G, const ModelSpec& spec,
                        const WeightTensor& W, const Signal& x, int g) {
  std::vector<cplx> lhs = model_outputs(spec, W, act(G, g, x));
  std::vector<cplx> rhs =
      model_outputs(spec, act_on_weights(G, G.inverse(g), W), x);
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  return worst;
}

AlignResult align_unitary(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                          double tol) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw Error(ErrorKind::Shape, "stacked matrices must have equal shapes");
  AlignResult res;
  res.gram_mismatch = (A * A.adjoint() - B * B.adjoint()).norm();
  if (res.gram_mismatch > tol * std::max(1.0, (B * B.adjoint()).norm()))
    throw Error(ErrorKind::Precondition,
                "A A^dag and B B^dag differ beyond tolerance");
  Eigen::MatrixXcd C = B.adjoint() * A;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  res.unitary = svd.matrixU() * svd.matrixV().adjoint();
  double smax = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] <= 1e-12 * std::max(1.0, smax))
      ++res.ambiguous_dim;
  res.residual = (A - B * res.unitary).norm();
  return res;
}

WitnessResult unitary_symmetry_witness(const ModelSpec& spec,
                                       const WeightTensor& W,
                                       const WeightTensor& Wprime,
                                       int probe_count, std::uint64_t seed) {
  if (W.group_order() != Wprime.group_order() ||
      W.num_slots() != Wprime.num_slots())
    throw Error(ErrorKind::Shape, "weight tensors have different shapes");
  for (int i = 0; i < W.num_slots(); ++i)
    if (W.slot(i).dim != Wprime.slot(i).dim)
      throw Error(ErrorKind::Shape, "weight tensors have different slot dims");

  // Same-norm precondition, per slot, under the ambient W-space norm.
  for (int i = 0; i < W.num_slots(); ++i) {
    double n1 = 0.0, n2 = 0.0;
    for (int g = 0; g < W.group_order(); ++g) {
      n1 += W.slot(i).dim * W.slot(i).blocks[g].squaredNorm();
      n2 += W.slot(i).dim * Wprime.slot(i).blocks[g].squaredNorm();
    }
    n1 = std::sqrt(n1);
    n2 = std::sqrt(n2);
    if (std::abs(n1 - n2) > 1e-8 * std::max(1.0, std::max(n1, n2)))
      throw Error(ErrorKind::Precondition,
                  "slot norms differ; unitary symmetry is impossible");
  }

  WitnessResult res;

  // Output agreement on a seeded probe set.
  Rng rng(seed);
  for (int p = 0; p < probe_count; ++p) {
    Signal x = rng.cnormal_vector(W.group_order());
    std::vector<cplx> a = model_outputs(spec, W, x);
    std::vector<cplx> b = model_outputs(spec, Wprime, x);
    double scale = 1.0;
    for (const cplx& v : a) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < a.size(); ++i)
      res.probe_discrepancy =
          std::max(res.probe_discrepancy, std::abs(a[i] - b[i]) / scale);
  }
  if (res.probe_discrepancy > 1e-8) {
    res.status = WitnessResult::Status::OutputsDiffer;
    return res;
  }

  for (int i = 0; i < W.num_slots(); ++i) {
    int d = W.slot(i).dim;
    Eigen::MatrixXcd A(W.group_order() * d, d), B(W.group_order() * d, d);
    for (int g = 0; g < W.group_order(); ++g) {
      A.middleRows(g * d, d) = W.slot(i).blocks[g];
      B.middleRows(g * d, d) = Wprime.slot(i).blocks[g];
    }
    AlignResult ar = align_unitary(A, B, 1e-6);
    WitnessSlot ws;
    ws.unitary = ar.unitary;
    for (int g = 0; g < W.group_order(); ++g)
      ws.residual = std::max(
          ws.residual, (W.slot(i).blocks[g] -
                        Wprime.slot(i).blocks[g] * ar.unitary)
                           .norm());
    res.max_residual = std::max(res.max_residual, ws.residual);
    res.slots.push_back(std::move(ws));
  }
  if (res.max_residual > 1e-6)
    res.status = WitnessResult::Status::ResidualTooLarge;
  return res;
}

IrrepAlignment align_slot_to_irrep(const FiniteGroup& G,
                                   const WeightSlot& slot, const Irrep& rho,
                                   std::uint64_t seed) {
  if (slot.dim != rho.dim)
    throw Error(ErrorKind::Shape, "slot and irrep dimensions differ");
  int d = slot.dim;
  // tau(g) = (W(g) W(1)^dag)^dag approximates a unitary irrep ~ rho.
  std::vector<Eigen::MatrixXcd> tau(G.order());
  Eigen::MatrixXcd w1d = slot.blocks[G.identity()].adjoint();
  for (int g = 0; g < G.order(); ++g)
    tau[g] = (slot.blocks[g] * w1d).adjoint();

  Rng rng(seed);
  Eigen::MatrixXcd best_v = Eigen::MatrixXcd::Identity(d, d);
  double best = 1e300;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::MatrixXcd X = rng.cnormal_matrix(d, d);
    Eigen::MatrixXcd V0 = Eigen::MatrixXcd::Zero(d, d);
    for (int g = 0; g < G.order(); ++g)
      V0 += tau[g] * X * rho.mats[g].adjoint();
    V0 /= static_cast<double>(G.order());
    if (V0.norm() < 1e-10) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        V0, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXcd V = svd.matrixU() * svd.matrixV().adjoint();
    double num = 0.0, den = 0.0;
    for (int g = 0; g < G.order(); ++g) {
      num += (slot.blocks[g] * w1d - V * rho.mats[g].adjoint() * V.adjoint())
                 .squaredNorm();
      den += rho.mats[g].squaredNorm();
    }
    double rel = std::sqrt(num / den);
    if (rel < best) {
      best = rel;
      best_v = V;
    }
  }
  return {best_v, best};
}

}  // namespace speclearn
