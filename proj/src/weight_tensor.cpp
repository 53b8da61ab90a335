#include "speclearn/weight_tensor.hpp"

#include <cmath>

#include "speclearn/kernels.hpp"

namespace speclearn {

WeightTensor::WeightTensor(int group_order, const std::vector<int>& dims)
    : group_order_(group_order) {
  slots_.reserve(dims.size());
  flat_dim_ = 0;
  for (int d : dims) {
    if (d < 1) throw Error(ErrorKind::Shape, "slot dimension must be >= 1");
    WeightSlot s;
    s.dim = d;
    s.blocks.assign(group_order_, Eigen::MatrixXcd::Zero(d, d));
    slots_.push_back(std::move(s));
    flat_dim_ += d * d;
  }
}

bool WeightTensor::all_one_dim() const {
  for (const auto& s : slots_)
    if (s.dim != 1) return false;
  return true;
}

Eigen::VectorXcd WeightTensor::flat_column(int g) const {
  Eigen::VectorXcd col(flat_dim_);
  int at = 0;
  for (const auto& s : slots_) {
    double scale = std::sqrt(static_cast<double>(s.dim));
    const Eigen::MatrixXcd& b = s.blocks[g];
    for (int r = 0; r < s.dim; ++r)
      for (int c = 0; c < s.dim; ++c) col[at++] = scale * b(r, c);
  }
  return col;
}

Eigen::MatrixXcd WeightTensor::flat_matrix() const {
  Eigen::MatrixXcd m(flat_dim_, group_order_);
  for (int g = 0; g < group_order_; ++g) m.col(g) = flat_column(g);
  return m;
}

Eigen::MatrixXcd WeightTensor::gram() const {
  const auto& k = kernels::active();
  Eigen::MatrixXcd m = flat_matrix();
  Eigen::MatrixXcd gram(group_order_, group_order_);
  for (int g = 0; g < group_order_; ++g) {
    for (int h = g; h < group_order_; ++h) {
      std::complex<double> v =
          k.cdotc(m.col(g).data(), m.col(h).data(), static_cast<std::size_t>(flat_dim_));
      gram(g, h) = v;
      gram(h, g) = std::conj(v);
    }
  }
  return gram;
}

Eigen::MatrixXcd WeightTensor::apply(int slot, const Signal& x) const {
  if (x.size() != group_order_)
    throw Error(ErrorKind::Shape, "signal length does not match weight tensor");
  const WeightSlot& s = slots_[slot];
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(s.dim, s.dim);
  for (int g = 0; g < group_order_; ++g) out += s.blocks[g] * x[g];
  return out;
}

void WeightTensor::set_identity_slice(int identity_index) {
  for (auto& s : slots_)
    s.blocks[identity_index] = Eigen::MatrixXcd::Identity(s.dim, s.dim);
}

double WeightTensor::identity_slice_residual(int identity_index) const {
  double worst = 0.0;
  for (const auto& s : slots_) {
    double r = (s.blocks[identity_index] -
                Eigen::MatrixXcd::Identity(s.dim, s.dim))
                   .norm();
    worst = std::max(worst, r);
  }
  return worst;
}

int WeightTensor::param_count() const { return flat_dim_ * group_order_; }

void WeightTensor::to_real(std::vector<double>& out) const {
  out.resize(static_cast<std::size_t>(param_count()) * 2);
  std::size_t at = 0;
  for (const auto& s : slots_) {
    for (const auto& b : s.blocks) {
      for (int r = 0; r < s.dim; ++r) {
        for (int c = 0; c < s.dim; ++c) {
          out[at++] = b(r, c).real();
          out[at++] = b(r, c).imag();
        }
      }
    }
  }
}

void WeightTensor::from_real(const std::vector<double>& in) {
  if (in.size() != static_cast<std::size_t>(param_count()) * 2)
    throw Error(ErrorKind::Shape, "real view size mismatch");
  std::size_t at = 0;
  for (auto& s : slots_) {
    for (auto& b : s.blocks) {
      for (int r = 0; r < s.dim; ++r) {
        for (int c = 0; c < s.dim; ++c) {
          b(r, c) = {in[at], in[at + 1]};
          at += 2;
        }
      }
    }
  }
}

}  // namespace speclearn
