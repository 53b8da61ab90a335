#include "speclearn/selfcheck.hpp"

#include <cmath>

#include "speclearn/invariants.hpp"
#include "speclearn/recover.hpp"
#include "speclearn/repr.hpp"
#include "speclearn/rng.hpp"
#include "speclearn/specnet.hpp"

namespace speclearn {

namespace {

using cplx = std::complex<double>;

double group_axiom_violations(const FiniteGroup& G) {
  int n = G.order();
  long bad = 0;
  for (int g = 0; g < n; ++g) {
    if (G.mult(G.identity(), g) != g || G.mult(g, G.identity()) != g) ++bad;
    if (G.mult(G.inverse(g), g) != G.identity() ||
        G.mult(g, G.inverse(g)) != G.identity())
      ++bad;
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        if (G.mult(G.mult(g, h), k) != G.mult(g, G.mult(h, k))) ++bad;
  }
  return static_cast<double>(bad);
}

double action_law_residual(const FiniteGroup& G, Rng& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    Signal x = rng.cnormal_vector(G.order());
    if ((act(G, G.identity(), x) - x).norm() > worst)
      worst = (act(G, G.identity(), x) - x).norm();
    for (int g = 0; g < G.order(); ++g)
      for (int h = 0; h < G.order(); ++h) {
        double r =
            (act(G, g, act(G, h, x)) - act(G, G.mult(g, h), x)).norm();
        worst = std::max(worst, r);
      }
  }
  return worst;
}

double convolution_residual(const FiniteGroup& G, Rng& rng) {
  double worst = 0.0;
  Signal unit = delta_signal(G, G.identity());
  for (int rep = 0; rep < 5; ++rep) {
    Signal x = rng.cnormal_vector(G.order());
    Signal y = rng.cnormal_vector(G.order());
    Signal z = rng.cnormal_vector(G.order());
    worst = std::max(worst, (convolve(G, unit, x) - x).norm());
    worst = std::max(worst, (convolve(G, x, unit) - x).norm());
    worst = std::max(
        worst, (convolve(G, convolve(G, x, y), z) -
                convolve(G, x, convolve(G, y, z)))
                   .norm());
  }
  return worst;
}

double irrep_structure_residual(const FiniteGroup& G, const IrrepSet& irr) {
  double worst = 0.0;
  for (const Irrep& rho : irr.irreps) {
    for (int g = 0; g < G.order(); ++g) {
      worst = std::max(worst, (rho.mats[g] * rho.mats[g].adjoint() -
                               Eigen::MatrixXcd::Identity(rho.dim, rho.dim))
                                  .norm());
      for (int h = 0; h < G.order(); ++h)
        worst = std::max(worst, (rho.mats[G.mult(g, h)] -
                                 rho.mats[g] * rho.mats[h])
                                    .norm());
    }
    // Character norm: sum_g |chi(g)|^2 = |G| for an irreducible rep.
    double cn = 0.0;
    for (int g = 0; g < G.order(); ++g) cn += std::norm(rho.character(g));
    worst = std::max(worst, std::abs(cn - G.order()));
  }
  // Completeness and distinctness.
  int dimsq = 0;
  for (const Irrep& rho : irr.irreps) dimsq += rho.dim * rho.dim;
  worst = std::max(worst, std::abs(static_cast<double>(dimsq - G.order())));
  for (int i = 0; i < irr.size(); ++i)
    for (int j = i + 1; j < irr.size(); ++j) {
      double diff = 0.0;
      for (int g = 0; g < G.order(); ++g)
        diff += std::abs(irr[i].character(g) - irr[j].character(g));
      if (diff < 1e-9) worst = std::max(worst, 1.0);
    }
  return worst;
}

double parseval_residual(const FiniteGroup& G, const IrrepSet& irr, Rng& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    Signal x = rng.cnormal_vector(G.order());
    FourierCoefficients c = fourier_transform(G, irr, x);
    double lhs = 0.0;
    for (int i = 0; i < irr.size(); ++i)
      lhs += irr[i].dim * c.blocks[i].squaredNorm();
    double rhs = G.order() * x.squaredNorm();
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return worst;
}

double roundtrip_residual(const FiniteGroup& G, const IrrepSet& irr, Rng& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    Signal x = rng.cnormal_vector(G.order());
    Signal back = inverse_fourier(G, irr, fourier_transform(G, irr, x));
    worst = std::max(worst, (back - x).norm());
  }
  return worst;
}

double equivariance_residual(const FiniteGroup& G, const IrrepSet& irr,
                             Rng& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    Signal x = rng.cnormal_vector(G.order());
    FourierCoefficients c = fourier_transform(G, irr, x);
    for (int g = 0; g < G.order(); ++g) {
      FourierCoefficients cg = fourier_transform(G, irr, act(G, g, x));
      for (int i = 0; i < irr.size(); ++i)
        worst = std::max(
            worst, (cg.blocks[i] - c.blocks[i] * irr[i].mats[g].adjoint())
                       .norm());
    }
  }
  return worst;
}

double convolution_theorem_residual(const FiniteGroup& G, const IrrepSet& irr,
                                    Rng& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    Signal x = rng.cnormal_vector(G.order());
    Signal y = rng.cnormal_vector(G.order());
    FourierCoefficients cx = fourier_transform(G, irr, x);
    FourierCoefficients cy = fourier_transform(G, irr, y);
    FourierCoefficients cc = fourier_transform(G, irr, convolve(G, x, y));
    for (int i = 0; i < irr.size(); ++i)
      worst = std::max(worst,
                       (cc.blocks[i] - cy.blocks[i] * cx.blocks[i]).norm());
  }
  return worst;
}

double spectra_invariance_residual(const FiniteGroup& G, const IrrepSet& irr,
                                   Rng& rng) {
  double worst = 0.0;
  // Order-1 spectra for every slot; order-2 over a subset of index pairs.
  std::vector<SpectrumIndex> indices;
  for (int i = 0; i < irr.size(); ++i) indices.push_back({{i}});
  for (int i = 0; i < irr.size(); ++i)
    indices.push_back({{i, (i + 1) % irr.size()}});

  std::vector<CGDecomposition> cgs;
  cgs.reserve(indices.size());
  for (const auto& idx : indices)
    cgs.push_back(clebsch_gordan(G, irr, idx.indices));

  int signals = 50;
  for (int rep = 0; rep < signals; ++rep) {
    Signal x = rng.cnormal_vector(G.order());
    for (std::size_t t = 0; t < indices.size(); ++t) {
      Eigen::MatrixXcd beta = spectrum_nc(G, irr, indices[t], x, &cgs[t]);
      for (int g = 0; g < G.order(); ++g) {
        Eigen::MatrixXcd betag =
            spectrum_nc(G, irr, indices[t], act(G, g, x), &cgs[t]);
        worst = std::max(worst, (betag - beta).norm());
      }
    }
  }
  return worst;
}

double cg_intertwining_residual(const FiniteGroup& G, const IrrepSet& irr) {
  double worst = 0.0;
  std::vector<std::vector<int>> multis;
  for (int i = 0; i < irr.size(); ++i)
    multis.push_back({i, (i * 2 + 1) % irr.size()});
  for (const auto& multi : multis) {
    CGDecomposition cg = clebsch_gordan(G, irr, multi);
    int D = cg.product_dim();
    for (const CGComponent& comp : cg.components) {
      for (int g = 0; g < G.order(); ++g) {
        Eigen::MatrixXcd T = irr[multi[0]].mats[g];
        for (std::size_t m = 1; m < multi.size(); ++m) {
          const Eigen::MatrixXcd& b = irr[multi[m]].mats[g];
          Eigen::MatrixXcd out(T.rows() * b.rows(), T.cols() * b.cols());
          for (Eigen::Index r = 0; r < T.rows(); ++r)
            for (Eigen::Index c = 0; c < T.cols(); ++c)
              out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) =
                  T(r, c) * b;
          T = std::move(out);
        }
        worst = std::max(
            worst, (T * comp.isometry - comp.isometry * irr[comp.target].mats[g])
                       .norm());
      }
    }
    Eigen::MatrixXcd U = cg.block_isometry();
    worst = std::max(
        worst, (U.adjoint() * U - Eigen::MatrixXcd::Identity(D, D)).norm());
  }
  return worst;
}

double fourier_weight_residuals(const FiniteGroup& G, const IrrepSet& irr) {
  WeightTensor W = fourier_weight_tensor(G, irr);
  double worst = compute_L(W);
  RecoveryReport rep = recover_table(W, G.table());
  if (rep.table != G.table()) worst = std::max(worst, 1.0);
  // Two-point norm spectrum: every argmin candidate is 0 or sqrt(2|G|) away.
  double expect = std::sqrt(2.0 * G.order());
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h) {
      double m = rep.margins(g, h);
      worst = std::max(worst, std::abs(m - expect));
    }
  return worst;
}

}  // namespace

std::vector<CheckResult> run_selfchecks(const FiniteGroup& G,
                                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  auto add = [&out](const std::string& name, double residual, double tol) {
    out.push_back({name, residual, tol, residual <= tol});
  };

  add("group-axioms", group_axiom_violations(G), 0.0);
  add("action-laws", action_law_residual(G, rng), 1e-10);
  add("convolution-unit-assoc", convolution_residual(G, rng), 1e-10);

  IrrepSet irr = irreps(G);
  add("irrep-structure", irrep_structure_residual(G, irr), 1e-10);
  add("schur-orthogonality", verify_schur(G, irr), 1e-9);
  add("parseval", parseval_residual(G, irr, rng), 1e-9);
  add("fourier-roundtrip", roundtrip_residual(G, irr, rng), 1e-10);
  add("fourier-equivariance", equivariance_residual(G, irr, rng), 1e-9);
  add("convolution-theorem", convolution_theorem_residual(G, irr, rng), 1e-9);
  add("spectra-invariance", spectra_invariance_residual(G, irr, rng), 1e-9);
  add("cg-intertwining", cg_intertwining_residual(G, irr), 1e-8);
  add("fourier-weights-recovery", fourier_weight_residuals(G, irr), 1e-9);
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace speclearn
