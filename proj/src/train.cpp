#include "speclearn/train.hpp"

#include <chrono>
#include <cmath>

#include "speclearn/kernels.hpp"
#include "speclearn/repr.hpp"
#include "speclearn/rng.hpp"

namespace speclearn {

namespace {

using cplx = std::complex<double>;

cplx cpow_int(cplx z, int n) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

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

// Scratch for the scalar (all slots one-dimensional) path of one slot.
struct ScalarSlot {
  Eigen::VectorXcd row;      // W_i(g)
  Eigen::VectorXcd rowpow;   // W_i(g)^n
  Eigen::VectorXcd rowpow1;  // W_i(g)^(n-1)
  Eigen::VectorXcd cograd;   // accumulated Wirtinger cogradient
};

// digits of a base-d multi-index, most significant first
inline void decode(int value, int d, int n, int* digits) {
  for (int k = n - 1; k >= 0; --k) {
    digits[k] = value % d;
    value /= d;
  }
}

// Cogradient contribution of one pair for a capsule slot (dim >= 2).
void capsule_pair_cograd(const WeightSlot& slot, int order, const Signal& x,
                         const Signal& y, double& inv_term,
                         std::vector<Eigen::MatrixXcd>& cograd) {
  int d = slot.dim;
  int n = order;
  int G = static_cast<int>(slot.blocks.size());

  auto z_of = [&](const Signal& u) {
    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(d, d);
    for (int g = 0; g < G; ++g) Z += slot.blocks[g] * u[g];
    return Z;
  };
  auto b_of = [&](const Signal& u) {
    Eigen::MatrixXcd Zad = slot.blocks[0].adjoint();
    Eigen::MatrixXcd B = kron_power(slot.blocks[0].adjoint(), n) * std::conj(u[0]);
    for (int g = 1; g < G; ++g)
      B += kron_power(slot.blocks[g].adjoint(), n) * std::conj(u[g]);
    return B;
  };

  Eigen::MatrixXcd Zx = z_of(x), Zy = z_of(y);
  Eigen::MatrixXcd Znx = kron_power(Zx, n), Zny = kron_power(Zy, n);
  Eigen::MatrixXcd Bx = b_of(x), By = b_of(y);
  Eigen::MatrixXcd D = Znx * Bx - Zny * By;
  inv_term += D.squaredNorm();

  int Dn = static_cast<int>(D.rows());
  std::vector<int> da(n), dc(n);

  for (int side = 0; side < 2; ++side) {
    double s = side == 0 ? 1.0 : -1.0;
    const Signal& u = side == 0 ? x : y;
    const Eigen::MatrixXcd& Z = side == 0 ? Zx : Zy;
    const Eigen::MatrixXcd& Zn = side == 0 ? Znx : Zny;
    const Eigen::MatrixXcd& B = side == 0 ? Bx : By;

    Eigen::MatrixXcd M1 = D * B.adjoint();      // contracts the Z^(x)n path
    Eigen::MatrixXcd M2 = D.adjoint() * Zn;     // contracts the B path

    // S1_pq = sum_k sum_{a_k=p, c_k=q} M1_ac conj(prod_{m!=k} Z_am_cm)
    Eigen::MatrixXcd S1 = Eigen::MatrixXcd::Zero(d, d);
    for (int a = 0; a < Dn; ++a) {
      decode(a, d, n, da.data());
      for (int c = 0; c < Dn; ++c) {
        decode(c, d, n, dc.data());
        for (int k = 0; k < n; ++k) {
          cplx f(1.0, 0.0);
          for (int m = 0; m < n; ++m)
            if (m != k) f *= Z(da[m], dc[m]);
          S1(da[k], dc[k]) += M1(a, c) * std::conj(f);
        }
      }
    }
    for (int g = 0; g < G; ++g) cograd[g] += (s * std::conj(u[g])) * S1;

    // S2_pq(g) = sum_k sum_{b_k=p, c_k=q} M2_bc prod_{m!=k} conj(W(g)_bm_cm)
    if (n == 1) {
      for (int g = 0; g < G; ++g) cograd[g] += (s * std::conj(u[g])) * M2;
    } else {
      for (int g = 0; g < G; ++g) {
        const Eigen::MatrixXcd& Wg = slot.blocks[g];
        Eigen::MatrixXcd S2 = Eigen::MatrixXcd::Zero(d, d);
        for (int b = 0; b < Dn; ++b) {
          decode(b, d, n, da.data());
          for (int c = 0; c < Dn; ++c) {
            decode(c, d, n, dc.data());
            for (int k = 0; k < n; ++k) {
              cplx f(1.0, 0.0);
              for (int m = 0; m < n; ++m)
                if (m != k) f *= std::conj(Wg(da[m], dc[m]));
              S2(da[k], dc[k]) += M2(b, c) * f;
            }
          }
        }
        cograd[g] += (s * std::conj(u[g])) * S2;
      }
    }
  }
}

}  // namespace

std::vector<OrbitPair> gen_dataset(const FiniteGroup& G, int size,
                                   double noise_sigma, std::uint64_t seed) {
  if (size < 1) throw Error(ErrorKind::Shape, "dataset size must be >= 1");
  Rng rng(seed);
  std::vector<OrbitPair> out;
  out.reserve(size);
  for (int i = 0; i < size; ++i) {
    OrbitPair p;
    p.x = rng.cnormal_vector(G.order());
    p.hidden_g = rng.uniform_int(G.order());
    p.y = act(G, p.hidden_g, p.x);
    if (noise_sigma > 0.0)
      for (int g = 0; g < G.order(); ++g)
        p.y[g] += noise_sigma * rng.cnormal();
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<int> model_dims(const FiniteGroup& G) {
  IrrepSet irr = irreps(G);
  std::vector<int> dims;
  dims.reserve(irr.size());
  for (const Irrep& r : irr.irreps) dims.push_back(r.dim);
  return dims;
}

WeightTensor init_weights(const FiniteGroup& G, const std::vector<int>& dims,
                          std::uint64_t seed, bool fix_identity_slice) {
  Rng rng(seed);
  WeightTensor W(G.order(), dims);
  double scale = 1.0 / std::sqrt(static_cast<double>(G.order()));
  for (int i = 0; i < W.num_slots(); ++i)
    for (int g = 0; g < G.order(); ++g)
      W.slot(i).blocks[g] = scale * rng.cnormal_matrix(dims[i], dims[i]);
  if (fix_identity_slice) W.set_identity_slice(G.identity());
  return W;
}

LossTerms loss(const FiniteGroup& G, const WeightTensor& W,
               const std::vector<OrbitPair>& batch, int order, double eta) {
  WeightTensor scratch(W.group_order(), [&] {
    std::vector<int> dims;
    for (const auto& s : W.slots()) dims.push_back(s.dim);
    return dims;
  }());
  return loss_and_gradient(G, W, batch, order, eta, scratch);
}

LossTerms loss_and_gradient(const FiniteGroup& G, const WeightTensor& W,
                            const std::vector<OrbitPair>& batch, int order,
                            double eta, WeightTensor& grad) {
  if (batch.empty()) throw Error(ErrorKind::Shape, "batch must be nonempty");
  if (order < 1) throw Error(ErrorKind::Shape, "order must be >= 1");
  if (W.group_order() != G.order())
    throw Error(ErrorKind::Shape, "weight tensor does not match group");
  for (const OrbitPair& p : batch)
    if (p.x.size() != G.order() || p.y.size() != G.order())
      throw Error(ErrorKind::Shape, "pair length does not match group");

  const auto& k = kernels::active();
  int d = G.order();
  int n = order;
  LossTerms terms;

  // Zero the cogradient accumulator (grad holds the Wirtinger cogradient
  // until the final doubling into the real view).
  {
    std::vector<int> dims;
    for (const auto& s : W.slots()) dims.push_back(s.dim);
    grad = WeightTensor(d, dims);
  }

  // Scalar fast path per one-dimensional slot; capsule path otherwise.
  std::vector<ScalarSlot> scalars(W.num_slots());
  for (int i = 0; i < W.num_slots(); ++i) {
    if (W.slot(i).dim != 1) continue;
    ScalarSlot& s = scalars[i];
    s.row.resize(d);
    for (int g = 0; g < d; ++g) s.row[g] = W.slot(i).blocks[g](0, 0);
    if (n > 1) {
      s.rowpow.resize(d);
      s.rowpow1.resize(d);
      for (int g = 0; g < d; ++g) {
        s.rowpow1[g] = cpow_int(s.row[g], n - 1);
        s.rowpow[g] = s.rowpow1[g] * s.row[g];
      }
    }
    s.cograd = Eigen::VectorXcd::Zero(d);
  }

  Eigen::VectorXcd tmp(d);
  for (const OrbitPair& p : batch) {
    for (int i = 0; i < W.num_slots(); ++i) {
      if (W.slot(i).dim != 1) {
        std::vector<Eigen::MatrixXcd> cograd_blocks(
            d, Eigen::MatrixXcd::Zero(W.slot(i).dim, W.slot(i).dim));
        capsule_pair_cograd(W.slot(i), n, p.x, p.y, terms.invariance,
                            cograd_blocks);
        for (int g = 0; g < d; ++g) grad.slot(i).blocks[g] += cograd_blocks[g];
        continue;
      }
      ScalarSlot& s = scalars[i];
      std::size_t len = static_cast<std::size_t>(d);
      cplx zx = k.cdotu(s.row.data(), p.x.data(), len);
      cplx zy = k.cdotu(s.row.data(), p.y.data(), len);
      cplx wx = (n == 1) ? zx : k.cdotu(s.rowpow.data(), p.x.data(), len);
      cplx wy = (n == 1) ? zy : k.cdotu(s.rowpow.data(), p.y.data(), len);
      cplx phix = cpow_int(zx, n) * std::conj(wx);
      cplx phiy = cpow_int(zy, n) * std::conj(wy);
      cplx D = phix - phiy;
      terms.invariance += std::norm(D);

      double nn = static_cast<double>(n);
      cplx alpha_x = nn * std::conj(D) * cpow_int(zx, n);
      cplx alpha_y = -nn * std::conj(D) * cpow_int(zy, n);
      cplx beta_x = nn * D * cpow_int(std::conj(zx), n - 1) * wx;
      cplx beta_y = -nn * D * cpow_int(std::conj(zy), n - 1) * wy;
      if (n == 1) {
        k.caxpy_conj(alpha_x + beta_x, p.x.data(), s.cograd.data(), len);
        k.caxpy_conj(alpha_y + beta_y, p.y.data(), s.cograd.data(), len);
      } else {
        k.caxpy_conj(beta_x, p.x.data(), s.cograd.data(), len);
        k.caxpy_conj(beta_y, p.y.data(), s.cograd.data(), len);
        k.chadamard(s.rowpow1.data(), p.x.data(), tmp.data(), len);
        k.caxpy_conj(alpha_x, tmp.data(), s.cograd.data(), len);
        k.chadamard(s.rowpow1.data(), p.y.data(), tmp.data(), len);
        k.caxpy_conj(alpha_y, tmp.data(), s.cograd.data(), len);
      }
    }
  }
  for (int i = 0; i < W.num_slots(); ++i) {
    if (W.slot(i).dim != 1) continue;
    for (int g = 0; g < d; ++g) grad.slot(i).blocks[g](0, 0) += scalars[i].cograd[g];
  }

  // Orthogonality penalty eta |dI - M M^dag|^2 on the scaled flat view;
  // cogradient is -2 eta E M.
  Eigen::MatrixXcd M = W.flat_matrix();
  Eigen::MatrixXcd E = -(M * M.adjoint());
  E.diagonal().array() += static_cast<double>(d);
  terms.orthogonality = eta * E.squaredNorm();
  Eigen::MatrixXcd cogradM = (-2.0 * eta) * (E * M);
  {
    int at = 0;
    for (int i = 0; i < W.num_slots(); ++i) {
      int di = W.slot(i).dim;
      double scale = std::sqrt(static_cast<double>(di));
      for (int r = 0; r < di; ++r)
        for (int c = 0; c < di; ++c) {
          for (int g = 0; g < d; ++g)
            grad.slot(i).blocks[g](r, c) += scale * cogradM(at, g);
          ++at;
        }
    }
  }

  // Real view: dL/dRe + i dL/dIm = 2 * cogradient.
  for (int i = 0; i < grad.num_slots(); ++i)
    for (int g = 0; g < d; ++g) grad.slot(i).blocks[g] *= 2.0;
  return terms;
}

void adam_step(AdamState& state, WeightTensor& W, const WeightTensor& grad,
               double lr, std::optional<int> fix_identity_index) {
  std::vector<double> g, w;
  grad.to_real(g);
  W.to_real(w);
  if (state.m.size() != g.size()) state.init(static_cast<int>(g.size()));
  for (double v : g)
    if (!std::isfinite(v))
      throw Error(ErrorKind::TrainingDiverged, "non-finite gradient");

  state.t += 1;
  double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < g.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g[i] * g[i];
    double mhat = state.m[i] / bc1;
    double vhat = state.v[i] / bc2;
    w[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
  }
  W.from_real(w);
  if (fix_identity_index.has_value())
    W.set_identity_slice(*fix_identity_index);
}

TrainReport train(const FiniteGroup& G, const std::vector<int>& dims,
                  const TrainConfig& cfg, int order) {
  if (cfg.lr <= 0 || cfg.eta < 0 || cfg.steps < 0 || cfg.batch < 1 ||
      cfg.dataset_size < 1 || cfg.noise_sigma < 0)
    throw Error(ErrorKind::Parse, "invalid training configuration");

  auto t0 = std::chrono::steady_clock::now();
  TrainReport rep;
  rep.seed = cfg.seed;

  std::vector<OrbitPair> data = gen_dataset(
      G, cfg.dataset_size, cfg.noise_sigma, cfg.seed ^ 0xDA7A5EEDull);
  WeightTensor W = init_weights(G, dims, cfg.seed, cfg.fix_identity_slice);

  AdamState adam;
  Rng batch_rng(cfg.seed ^ 0xBA7C85EEDull);
  std::vector<OrbitPair> batch(cfg.batch);
  WeightTensor grad;
  std::optional<int> fix = cfg.fix_identity_slice
                               ? std::optional<int>(G.identity())
                               : std::nullopt;

  rep.curve.reserve(cfg.steps);
  for (int step = 0; step < cfg.steps; ++step) {
    for (int b = 0; b < cfg.batch; ++b)
      batch[b] = data[batch_rng.uniform_int(cfg.dataset_size)];
    LossTerms terms;
    try {
      terms = loss_and_gradient(G, W, batch, order, cfg.eta, grad);
      if (!std::isfinite(terms.total()))
        throw Error(ErrorKind::TrainingDiverged, "non-finite loss");
      adam_step(adam, W, grad, cfg.lr, fix);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TrainingDiverged) throw;
      rep.diverged = true;
      break;
    }
    rep.curve.push_back(terms);
    rep.steps_completed = step + 1;
  }

  rep.final_weights = std::move(W);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

TrainReport train(const FiniteGroup& G, const TrainConfig& cfg, int order) {
  return train(G, model_dims(G), cfg, order);
}

}  // namespace speclearn
