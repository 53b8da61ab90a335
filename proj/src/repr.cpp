#include "speclearn/repr.hpp"

#include <cmath>
#include <numbers>

namespace speclearn {

namespace {

using cplx = std::complex<double>;

Eigen::MatrixXcd scalar_mat(cplx v) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = v;
  return m;
}

IrrepSet commutative_irreps(const FiniteGroup& G) {
  const auto& factors = G.factor_spec();
  if (factors.empty())
    throw Error(ErrorKind::UnsupportedGroup,
                "commutative dual requires a cyclic factorization");
  IrrepSet set;
  set.group_order = G.order();
  set.commutative = true;
  set.irreps.reserve(G.order());
  for (int k = 0; k < G.order(); ++k) {
    std::vector<int> kd = G.factor_digits(k);
    Irrep chi;
    chi.dim = 1;
    chi.label = "chi" + std::to_string(k);
    chi.mats.reserve(G.order());
    for (int g = 0; g < G.order(); ++g) {
      std::vector<int> gd = G.factor_digits(g);
      double phase = 0.0;
      for (std::size_t j = 0; j < factors.size(); ++j)
        phase += 2.0 * std::numbers::pi * kd[j] * gd[j] / factors[j];
      chi.mats.push_back(scalar_mat({std::cos(phase), std::sin(phase)}));
    }
    set.irreps.push_back(std::move(chi));
  }
  return set;
}

Eigen::MatrixXcd rotation2(double theta) {
  Eigen::MatrixXcd m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return m;
}

// Reflection part: rho(s r^j) = diag(1, -1) * R(theta_j).
Eigen::MatrixXcd reflection2(double theta) {
  Eigen::MatrixXcd m(2, 2);
  m << std::cos(theta), -std::sin(theta), -std::sin(theta), -std::cos(theta);
  return m;
}

IrrepSet dihedral_irreps(const FiniteGroup& G) {
  int n = G.order() / 2;
  IrrepSet set;
  set.group_order = G.order();
  set.commutative = false;

  auto one_dim = [&](const std::string& label, double rot_sign,
                     double refl_sign) {
    Irrep chi;
    chi.dim = 1;
    chi.label = label;
    chi.mats.reserve(G.order());
    for (int j = 0; j < n; ++j)
      chi.mats.push_back(scalar_mat(std::pow(rot_sign, j)));
    for (int j = 0; j < n; ++j)
      chi.mats.push_back(scalar_mat(refl_sign * std::pow(rot_sign, j)));
    return chi;
  };

  set.irreps.push_back(one_dim("triv", 1.0, 1.0));
  set.irreps.push_back(one_dim("sign", 1.0, -1.0));
  if (n % 2 == 0) {
    set.irreps.push_back(one_dim("alt", -1.0, 1.0));
    set.irreps.push_back(one_dim("altsign", -1.0, -1.0));
  }

  int two_dim_count = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
  for (int k = 1; k <= two_dim_count; ++k) {
    Irrep rho;
    rho.dim = 2;
    rho.label = "rho" + std::to_string(k);
    rho.mats.reserve(G.order());
    for (int j = 0; j < n; ++j)
      rho.mats.push_back(rotation2(2.0 * std::numbers::pi * k * j / n));
    for (int j = 0; j < n; ++j)
      rho.mats.push_back(reflection2(2.0 * std::numbers::pi * k * j / n));
    set.irreps.push_back(std::move(rho));
  }
  return set;
}

}  // namespace

IrrepSet irreps(const FiniteGroup& G) {
  if (G.commutative()) return commutative_irreps(G);
  if (G.kind() == GroupKind::Dihedral) return dihedral_irreps(G);
  throw Error(ErrorKind::UnsupportedGroup,
              "no irrep construction for this group kind");
}

int dual_product(const FiniteGroup& G, const std::vector<int>& chars) {
  if (!G.commutative())
    throw Error(ErrorKind::UnsupportedGroup,
                "dual product requires a commutative group");
  const auto& factors = G.factor_spec();
  std::vector<int> acc(factors.size(), 0);
  for (int c : chars) {
    std::vector<int> d = G.factor_digits(c);
    for (std::size_t j = 0; j < factors.size(); ++j)
      acc[j] = (acc[j] + d[j]) % factors[j];
  }
  int index = 0;
  for (std::size_t j = 0; j < factors.size(); ++j)
    index = index * factors[j] + acc[j];
  return index;
}

int dual_conjugate(const FiniteGroup& G, int chr) {
  if (!G.commutative())
    throw Error(ErrorKind::UnsupportedGroup,
                "dual conjugate requires a commutative group");
  const auto& factors = G.factor_spec();
  std::vector<int> d = G.factor_digits(chr);
  int index = 0;
  for (std::size_t j = 0; j < factors.size(); ++j)
    index = index * factors[j] + (factors[j] - d[j]) % factors[j];
  return index;
}

FourierCoefficients fourier_transform(const FiniteGroup& G, const IrrepSet& irr,
                                      const Signal& x) {
  if (x.size() != G.order() || irr.group_order != G.order())
    throw Error(ErrorKind::Shape, "signal/irrep set does not match group");
  FourierCoefficients out;
  out.blocks.reserve(irr.size());
  for (const Irrep& rho : irr.irreps) {
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(rho.dim, rho.dim);
    for (int g = 0; g < G.order(); ++g) block += rho.mats[g].adjoint() * x[g];
    out.blocks.push_back(std::move(block));
  }
  return out;
}

Signal inverse_fourier(const FiniteGroup& G, const IrrepSet& irr,
                       const FourierCoefficients& c) {
  if (static_cast<int>(c.blocks.size()) != irr.size())
    throw Error(ErrorKind::Shape, "coefficient blocks do not match irrep set");
  for (int i = 0; i < irr.size(); ++i)
    if (c.blocks[i].rows() != irr[i].dim || c.blocks[i].cols() != irr[i].dim)
      throw Error(ErrorKind::Shape, "coefficient block dimension mismatch");
  Signal x(G.order());
  for (int g = 0; g < G.order(); ++g) {
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < irr.size(); ++i)
      acc += static_cast<double>(irr[i].dim) *
             (irr[i].mats[g] * c.blocks[i]).trace();
    x[g] = acc / static_cast<double>(G.order());
  }
  return x;
}

WeightTensor fourier_weight_tensor(const FiniteGroup& G, const IrrepSet& irr) {
  std::vector<int> dims;
  dims.reserve(irr.size());
  for (const Irrep& rho : irr.irreps) dims.push_back(rho.dim);
  WeightTensor W(G.order(), dims);
  for (int i = 0; i < irr.size(); ++i)
    for (int g = 0; g < G.order(); ++g)
      W.slot(i).blocks[g] = irr[i].mats[g].adjoint();
  W.expect_unitary = true;
  return W;
}

double verify_schur(const FiniteGroup& G, const IrrepSet& irr) {
  double worst = 0.0;
  for (int i = 0; i < irr.size(); ++i) {
    for (int j = 0; j < irr.size(); ++j) {
      const Irrep &ri = irr[i], &rj = irr[j];
      for (int a = 0; a < ri.dim; ++a)
        for (int b = 0; b < ri.dim; ++b)
          for (int c = 0; c < rj.dim; ++c)
            for (int d = 0; d < rj.dim; ++d) {
              std::complex<double> acc(0.0, 0.0);
              for (int g = 0; g < G.order(); ++g)
                acc += std::conj(ri.mats[g](a, b)) * rj.mats[g](c, d);
              std::complex<double> expected(0.0, 0.0);
              if (i == j && a == c && b == d)
                expected = static_cast<double>(G.order()) / ri.dim;
              worst = std::max(worst, std::abs(acc - expected));
            }
    }
  }
  return worst;
}

}  // namespace speclearn
