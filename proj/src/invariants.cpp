#include "speclearn/invariants.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

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

void check_multi_index(const IrrepSet& irr, const std::vector<int>& idx) {
  if (idx.empty())
    throw Error(ErrorKind::Shape, "multi-index must have order >= 1");
  for (int i : idx)
    if (i < 0 || i >= irr.size())
      throw Error(ErrorKind::Shape, "irrep index out of range");
}

std::vector<Eigen::MatrixXcd> tensor_rep(const FiniteGroup& G,
                                         const IrrepSet& irr,
                                         const std::vector<int>& idx) {
  std::vector<Eigen::MatrixXcd> T;
  T.reserve(G.order());
  for (int g = 0; g < G.order(); ++g) {
    Eigen::MatrixXcd m = irr[idx[0]].mats[g];
    for (std::size_t k = 1; k < idx.size(); ++k)
      m = kron(m, irr[idx[k]].mats[g]);
    T.push_back(std::move(m));
  }
  return T;
}

// Unitary polar factor; exact when m is a scalar multiple of a unitary.
Eigen::MatrixXcd closest_unitary(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

std::complex<double> spectrum_commutative(const FiniteGroup& G,
                                          const IrrepSet& irr,
                                          const SpectrumIndex& idx,
                                          const Signal& x) {
  if (!G.commutative())
    throw Error(ErrorKind::UnsupportedGroup,
                "spectrum_commutative requires a commutative group; "
                "use spectrum_nc");
  check_multi_index(irr, idx.indices);
  FourierCoefficients c = fourier_transform(G, irr, x);
  cplx prod(1.0, 0.0);
  for (int i : idx.indices) prod *= c.blocks[i](0, 0);
  int target = dual_product(G, idx.indices);
  return prod * std::conj(c.blocks[target](0, 0));
}

int CGDecomposition::product_dim() const {
  int d = 1;
  for (int p : parent_dims) d *= p;
  return d;
}

Eigen::MatrixXcd CGDecomposition::block_isometry() const {
  int d = product_dim();
  Eigen::MatrixXcd u(d, d);
  int at = 0;
  for (const CGComponent& c : components) {
    u.middleCols(at, c.isometry.cols()) = c.isometry;
    at += static_cast<int>(c.isometry.cols());
  }
  return u;
}

CGDecomposition clebsch_gordan(const FiniteGroup& G, const IrrepSet& irr,
                               const std::vector<int>& multi_index,
                               std::uint64_t seed) {
  check_multi_index(irr, multi_index);
  const double kTieGap = 1e-6;
  const double kResidualTol = 1e-8;

  std::vector<Eigen::MatrixXcd> T = tensor_rep(G, irr, multi_index);
  int D = static_cast<int>(T[0].rows());
  double order = static_cast<double>(G.order());

  // Multiplicities from character inner products.
  std::vector<int> mult(irr.size(), 0);
  for (int j = 0; j < irr.size(); ++j) {
    cplx acc(0.0, 0.0);
    for (int g = 0; g < G.order(); ++g)
      acc += std::conj(irr[j].character(g)) * T[g].trace();
    double m = acc.real() / order;
    int mi = static_cast<int>(std::lround(m));
    if (std::abs(m - mi) > 1e-6 || std::abs(acc.imag()) > 1e-6 || mi < 0)
      throw Error(ErrorKind::DecompositionFailed,
                  "non-integral multiplicity in character decomposition");
    mult[j] = mi;
  }

  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < 5; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull);

    // Random Hermitian commutant sample, shared by all isotypic pieces.
    Eigen::MatrixXcd X = rng.hermitian(D);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
    for (int g = 0; g < G.order(); ++g) H += T[g] * X * T[g].adjoint();
    H /= order;

    CGDecomposition out;
    for (int i : multi_index) out.parent_dims.push_back(irr[i].dim);

    bool ok = true;
    for (int j = 0; j < irr.size() && ok; ++j) {
      if (mult[j] == 0) continue;
      int dj = irr[j].dim;

      // Isotypic projection; Hermitian idempotent, eigenvalues 0 or 1.
      Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(D, D);
      for (int g = 0; g < G.order(); ++g)
        P += std::conj(irr[j].character(g)) * T[g];
      P *= static_cast<double>(dj) / order;

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P);
      std::vector<int> image_cols;
      for (int c = 0; c < D; ++c)
        if (es.eigenvalues()[c] > 0.5) image_cols.push_back(c);
      if (static_cast<int>(image_cols.size()) != mult[j] * dj) {
        last_failure = "isotypic rank mismatch";
        ok = false;
        break;
      }
      Eigen::MatrixXcd Q(D, mult[j] * dj);
      for (std::size_t c = 0; c < image_cols.size(); ++c)
        Q.col(c) = es.eigenvectors().col(image_cols[c]);

      // Split multiplicity space along eigenspaces of the commutant sample.
      std::vector<Eigen::MatrixXcd> cluster_bases;
      if (mult[j] == 1) {
        cluster_bases.push_back(Q);
      } else {
        Eigen::MatrixXcd Hr = Q.adjoint() * H * Q;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(Hr);
        const auto& ev = es2.eigenvalues();
        int at = 0;
        while (at < ev.size()) {
          int end = at + 1;
          while (end < ev.size() && ev[end] - ev[end - 1] < kTieGap) ++end;
          if (end - at != dj) break;  // tie across copies: resample
          cluster_bases.push_back(Q * es2.eigenvectors().middleCols(at, dj));
          at = end;
        }
        if (static_cast<int>(cluster_bases.size()) != mult[j]) {
          last_failure = "eigenvalue tie in multiplicity splitting";
          ok = false;
          break;
        }
      }

      // Rotate each invariant subspace onto the reference irrep basis.
      for (const Eigen::MatrixXcd& Qc : cluster_bases) {
        Eigen::MatrixXcd S0 = Eigen::MatrixXcd::Zero(dj, dj);
        Eigen::MatrixXcd X2 = rng.cnormal_matrix(dj, dj);
        for (int g = 0; g < G.order(); ++g)
          S0 += (Qc.adjoint() * T[g] * Qc) * X2 * irr[j].mats[g].adjoint();
        S0 /= order;
        if (S0.norm() < 1e-8) {
          last_failure = "vanishing intertwiner sample";
          ok = false;
          break;
        }
        CGComponent comp;
        comp.target = j;
        comp.isometry = Qc * closest_unitary(S0);
        out.components.push_back(std::move(comp));
      }
    }
    if (!ok) continue;

    // Validate: intertwining residual and overall unitarity.
    double resid = 0.0;
    for (const CGComponent& c : out.components)
      for (int g = 0; g < G.order(); ++g)
        resid = std::max(resid, (T[g] * c.isometry -
                                 c.isometry * irr[c.target].mats[g])
                                    .norm());
    Eigen::MatrixXcd U = out.block_isometry();
    resid = std::max(
        resid, (U.adjoint() * U - Eigen::MatrixXcd::Identity(D, D)).norm());
    if (resid > kResidualTol) {
      last_failure = "intertwining residual " + std::to_string(resid);
      continue;
    }
    return out;
  }
  throw Error(ErrorKind::DecompositionFailed,
              "Clebsch-Gordan decomposition failed after 5 attempts: " +
                  last_failure);
}

Eigen::MatrixXcd spectrum_nc(const FiniteGroup& G, const IrrepSet& irr,
                             const SpectrumIndex& idx, const Signal& x,
                             const CGDecomposition* cg, std::uint64_t seed) {
  check_multi_index(irr, idx.indices);
  CGDecomposition local;
  if (cg == nullptr) {
    local = clebsch_gordan(G, irr, idx.indices, seed);
    cg = &local;
  }
  FourierCoefficients c = fourier_transform(G, irr, x);

  Eigen::MatrixXcd left = c.blocks[idx.indices[0]];
  for (std::size_t k = 1; k < idx.indices.size(); ++k)
    left = kron(left, c.blocks[idx.indices[k]]);

  int D = cg->product_dim();
  Eigen::MatrixXcd mid = Eigen::MatrixXcd::Zero(D, D);
  int at = 0;
  for (const CGComponent& comp : cg->components) {
    int dt = irr[comp.target].dim;
    mid.block(at, at, dt, dt) = c.blocks[comp.target].adjoint();
    at += dt;
  }
  Eigen::MatrixXcd U = cg->block_isometry();
  return left * (U * mid * U.adjoint());
}

CompletenessResult completeness_recover(const FiniteGroup& G,
                                        const IrrepSet& irr, const Signal& x,
                                        const Signal& y, int n) {
  if (!G.commutative())
    throw Error(ErrorKind::UnsupportedGroup,
                "completeness recovery is implemented for commutative groups");
  CompletenessResult res;
  res.parity_warning = (n % 2 != 0);

  FourierCoefficients cx = fourier_transform(G, irr, x);
  FourierCoefficients cy = fourier_transform(G, irr, y);
  double nx = x.norm(), ny = y.norm();
  for (int i = 0; i < irr.size(); ++i) {
    if (std::abs(cx.blocks[i](0, 0)) <= 1e-8 * nx ||
        std::abs(cy.blocks[i](0, 0)) <= 1e-8 * ny) {
      res.status = CompletenessResult::Status::Degenerate;
      return res;
    }
  }

  std::vector<cplx> eta(irr.size());
  for (int i = 0; i < irr.size(); ++i)
    eta[i] = cx.blocks[i](0, 0) / cy.blocks[i](0, 0);

  const double kTol = 1e-6;
  for (const cplx& e : eta)
    if (std::abs(std::abs(e) - 1.0) > kTol) {
      res.status = CompletenessResult::Status::NotRelated;
      return res;
    }
  for (int i = 0; i < irr.size(); ++i)
    for (int j = 0; j < irr.size(); ++j)
      if (std::abs(eta[i] * eta[j] - eta[dual_product(G, {i, j})]) > kTol) {
        res.status = CompletenessResult::Status::NotRelated;
        return res;
      }

  // eta must be the conjugate character column of some group element.
  int best_g = -1;
  double best = 1e300;
  for (int g = 0; g < G.order(); ++g) {
    double worst = 0.0;
    for (int i = 0; i < irr.size(); ++i)
      worst = std::max(worst,
                       std::abs(eta[i] - std::conj(irr[i].mats[g](0, 0))));
    if (worst < best) {
      best = worst;
      best_g = g;
    }
  }
  if (best > kTol) {
    res.status = CompletenessResult::Status::NotRelated;
    return res;
  }
  double resid = (x - act(G, best_g, y)).norm() / std::max(nx, 1e-300);
  if (resid > 1e-8) {
    res.status = CompletenessResult::Status::NotRelated;
    return res;
  }
  res.status = CompletenessResult::Status::Recovered;
  res.g = best_g;
  res.residual = resid;
  return res;
}

GenerateCheckReport spectra_generate_check(const FiniteGroup& G,
                                           const IrrepSet& irr, int n) {
  if (!G.commutative())
    throw Error(ErrorKind::UnsupportedGroup,
                "generation check is implemented for commutative groups");
  if (n < 1) throw Error(ErrorKind::Shape, "order must be >= 1");

  GenerateCheckReport rep;
  int k = irr.size();
  rep.expected = 1;
  for (int i = 0; i < n; ++i) rep.expected *= k;

  std::vector<int> tuple(n + 1, 0);
  bool agree = true;
  while (true) {
    ++rep.candidates;
    // Invariance by exhaustive character arithmetic.
    double worst = 0.0;
    for (int g = 0; g < G.order(); ++g) {
      cplx prod(1.0, 0.0);
      for (int m = 0; m < n; ++m) prod *= irr[tuple[m]].mats[g](0, 0);
      prod *= std::conj(irr[tuple[n]].mats[g](0, 0));
      worst = std::max(worst, std::abs(prod - 1.0));
    }
    bool invariant = worst < 1e-9;
    if (invariant) ++rep.invariant;

    std::vector<int> head(tuple.begin(), tuple.begin() + n);
    bool forced = (dual_product(G, head) == tuple[n]);
    if (invariant != forced) agree = false;

    int pos = n;
    while (pos >= 0 && ++tuple[pos] == k) tuple[pos--] = 0;
    if (pos < 0) break;
  }
  rep.consistent = agree && (rep.invariant == rep.expected);
  return rep;
}

}  // namespace speclearn
