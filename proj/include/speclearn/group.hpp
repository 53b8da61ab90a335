#pragma once

// Finite groups with explicit multiplication tables, their action on signals
// in C[G], convolution, and multiplication-table utilities.
//
// Element encoding is a dense index 0..|G|-1 with constructor-defined order:
//   cyclic    residues 0..d-1
//   product   lexicographic, (a, b) -> a*|B| + b
//   dihedral  rotations r^k (0 <= k < n) first, then reflections s r^k

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "speclearn/errors.hpp"

namespace speclearn {

using Signal = Eigen::VectorXcd;

enum class GroupKind { Cyclic, Product, Dihedral };

// Group-order cap; default 64, overridable via SPECLEARN_MAX_ORDER.
int max_group_order();

class FiniteGroup {
 public:
  static FiniteGroup cyclic(int d);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
  static FiniteGroup dihedral(int n);

  int order() const { return order_; }
  int identity() const { return 0; }
  int mult(int g, int h) const { return mult_[g * order_ + h]; }
  int inverse(int g) const { return inv_[g]; }

  GroupKind kind() const { return kind_; }
  bool commutative() const { return kind_ != GroupKind::Dihedral; }

  // Cyclic factor orders for commutative constructions; empty for dihedral.
  const std::vector<int>& factor_spec() const { return factor_spec_; }

  // Digits of an index with respect to factor_spec (commutative only),
  // last factor fastest. Valid both for elements and for dual characters.
  std::vector<int> factor_digits(int index) const;

  // Canonical spec string ("C6", "C2xC3", "D4").
  const std::string& spec_string() const { return spec_; }

  Eigen::MatrixXi table() const;

  void check_element(int g) const;

 private:
  FiniteGroup() = default;
  void build_inverses();

  int order_ = 0;
  GroupKind kind_ = GroupKind::Cyclic;
  std::vector<int> mult_;  // row-major |G| x |G|
  std::vector<int> inv_;
  std::vector<int> factor_spec_;
  std::string spec_;

  friend Signal act(const FiniteGroup&, int, const Signal&);
  friend Signal convolve(const FiniteGroup&, const Signal&, const Signal&);
};

// Parse "C6", "C2xC2xC2", "D3" (case-insensitive) into a group.
FiniteGroup parse_group_spec(const std::string& spec);

// (g . x)_h = x_{g^-1 h}
Signal act(const FiniteGroup& G, int g, const Signal& x);

// (x * y)_g = sum_h x_h y_{h^-1 g}
Signal convolve(const FiniteGroup& G, const Signal& x, const Signal& y);

Signal delta_signal(const FiniteGroup& G, int g);

struct IsoResult {
  bool isomorphic = false;
  // When isomorphic: pi with pi(a[g][h]) = b[pi(g)][pi(h)] for all g, h.
  std::vector<int> perm;
};

bool is_latin_square(const Eigen::MatrixXi& t);

// Deterministic backtracking search pruned by element-order profiles.
// Throws ErrorKind::MalformedTable if an input is not a Latin square.
IsoResult tables_isomorphic(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b);

}  // namespace speclearn
