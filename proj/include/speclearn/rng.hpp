#pragma once

// Deterministic random numbers built on the standard mt19937_64 engine.
// Distributions are hand-rolled (the std:: ones are implementation-defined),
// so identical seeds give bit-identical streams on every platform.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace speclearn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double normal() {  // Box-Muller, pair cached
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> cnormal() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

  int uniform_int(int n) {  // [0, n)
    return static_cast<int>(eng_() % static_cast<std::uint64_t>(n));
  }

  Eigen::VectorXcd cnormal_vector(int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = cnormal();
    return v;
  }

  Eigen::MatrixXcd cnormal_matrix(int r, int c) {
    Eigen::MatrixXcd m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = cnormal();
    return m;
  }

  Eigen::MatrixXcd hermitian(int n) {
    Eigen::MatrixXcd m = cnormal_matrix(n, n);
    return 0.5 * (m + m.adjoint());
  }

  // Haar-ish random unitary via QR of a Gaussian matrix.
  Eigen::MatrixXcd unitary(int n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cnormal_matrix(n, n));
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    return q;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace speclearn
