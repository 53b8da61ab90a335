#include "speclearn/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>

namespace speclearn {

int max_group_order() {
  static const int cap = [] {
    if (const char* env = std::getenv("SPECLEARN_MAX_ORDER")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 64;
  }();
  return cap;
}

void FiniteGroup::build_inverses() {
  inv_.assign(order_, -1);
  for (int g = 0; g < order_; ++g) {
    for (int h = 0; h < order_; ++h) {
      if (mult(g, h) == 0) {
        inv_[g] = h;
        break;
      }
    }
  }
}

void FiniteGroup::check_element(int g) const {
  if (g < 0 || g >= order_)
    throw Error(ErrorKind::Shape, "element index out of range");
}

FiniteGroup FiniteGroup::cyclic(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidOrder, "cyclic order must be >= 1");
  if (d > max_group_order())
    throw Error(ErrorKind::SizeLimit,
                "group order " + std::to_string(d) + " exceeds the cap " +
                    std::to_string(max_group_order()) +
                    " (set SPECLEARN_MAX_ORDER to raise it)");
  FiniteGroup G;
  G.order_ = d;
  G.kind_ = GroupKind::Cyclic;
  G.mult_.resize(static_cast<std::size_t>(d) * d);
  for (int g = 0; g < d; ++g)
    for (int h = 0; h < d; ++h) G.mult_[g * d + h] = (g + h) % d;
  G.factor_spec_ = {d};
  G.spec_ = "C" + std::to_string(d);
  G.build_inverses();
  return G;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  long long n = static_cast<long long>(a.order()) * b.order();
  if (n > max_group_order())
    throw Error(ErrorKind::SizeLimit,
                "product order " + std::to_string(n) + " exceeds the cap " +
                    std::to_string(max_group_order()) +
                    " (set SPECLEARN_MAX_ORDER to raise it)");
  FiniteGroup G;
  G.order_ = static_cast<int>(n);
  G.kind_ = GroupKind::Product;
  int nb = b.order();
  G.mult_.resize(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < G.order_; ++g) {
    for (int h = 0; h < G.order_; ++h) {
      int prod_a = a.mult(g / nb, h / nb);
      int prod_b = b.mult(g % nb, h % nb);
      G.mult_[g * G.order_ + h] = prod_a * nb + prod_b;
    }
  }
  if (a.commutative() && b.commutative()) {
    G.factor_spec_ = a.factor_spec_;
    G.factor_spec_.insert(G.factor_spec_.end(), b.factor_spec_.begin(),
                          b.factor_spec_.end());
  }
  G.spec_ = a.spec_ + "x" + b.spec_;
  G.build_inverses();
  return G;
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 3)
    throw Error(ErrorKind::InvalidOrder, "dihedral index must be >= 3");
  if (2 * n > max_group_order())
    throw Error(ErrorKind::SizeLimit,
                "group order " + std::to_string(2 * n) + " exceeds the cap " +
                    std::to_string(max_group_order()) +
                    " (set SPECLEARN_MAX_ORDER to raise it)");
  FiniteGroup G;
  G.order_ = 2 * n;
  G.kind_ = GroupKind::Dihedral;
  G.mult_.resize(static_cast<std::size_t>(G.order_) * G.order_);
  // Indices 0..n-1 are r^a, indices n..2n-1 are s r^a.
  // Relations r^n = s^2 = 1 and s r s = r^-1 give:
  //   r^a . r^b     = r^(a+b)
  //   r^a . s r^b   = s r^(b-a)
  //   s r^a . r^b   = s r^(a+b)
  //   s r^a . s r^b = r^(b-a)
  auto mod = [n](int v) { return ((v % n) + n) % n; };
  for (int i = 0; i < G.order_; ++i) {
    for (int j = 0; j < G.order_; ++j) {
      bool ri = i < n, rj = j < n;
      int a = ri ? i : i - n;
      int b = rj ? j : j - n;
      int out;
      if (ri && rj) out = mod(a + b);
      else if (ri && !rj) out = n + mod(b - a);
      else if (!ri && rj) out = n + mod(a + b);
      else out = mod(b - a);
      G.mult_[i * G.order_ + j] = out;
    }
  }
  G.spec_ = "D" + std::to_string(n);
  G.build_inverses();
  return G;
}

std::vector<int> FiniteGroup::factor_digits(int index) const {
  if (factor_spec_.empty())
    throw Error(ErrorKind::UnsupportedGroup,
                "no cyclic factorization for this group");
  std::vector<int> digits(factor_spec_.size());
  for (int j = static_cast<int>(factor_spec_.size()) - 1; j >= 0; --j) {
    digits[j] = index % factor_spec_[j];
    index /= factor_spec_[j];
  }
  return digits;
}

Eigen::MatrixXi FiniteGroup::table() const {
  Eigen::MatrixXi t(order_, order_);
  for (int g = 0; g < order_; ++g)
    for (int h = 0; h < order_; ++h) t(g, h) = mult(g, h);
  return t;
}

FiniteGroup parse_group_spec(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (s.empty()) throw Error(ErrorKind::Parse, "empty group spec");

  // Split on 'X' separators that are followed by a constructor letter, so
  // "C2xC2xC2" tokenizes correctly.
  std::vector<std::string> tokens;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'X' && i + 1 < s.size() && (s[i + 1] == 'C' || s[i + 1] == 'D')) {
      tokens.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(s[i]);
    }
  }
  tokens.push_back(cur);

  std::optional<FiniteGroup> result;
  for (const std::string& tok : tokens) {
    if (tok.size() < 2 || (tok[0] != 'C' && tok[0] != 'D'))
      throw Error(ErrorKind::Parse, "bad group token '" + tok + "'");
    for (std::size_t i = 1; i < tok.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        throw Error(ErrorKind::Parse, "bad group token '" + tok + "'");
    int v = std::atoi(tok.c_str() + 1);
    FiniteGroup g = (tok[0] == 'C') ? FiniteGroup::cyclic(v)
                                    : FiniteGroup::dihedral(v);
    result = result.has_value() ? FiniteGroup::product(*result, g) : g;
  }
  return *result;
}

Signal act(const FiniteGroup& G, int g, const Signal& x) {
  G.check_element(g);
  if (x.size() != G.order())
    throw Error(ErrorKind::Shape, "signal length does not match group order");
  Signal out(G.order());
  int ginv = G.inverse(g);
  for (int h = 0; h < G.order(); ++h) out[h] = x[G.mult(ginv, h)];
  return out;
}

Signal convolve(const FiniteGroup& G, const Signal& x, const Signal& y) {
  if (x.size() != G.order() || y.size() != G.order())
    throw Error(ErrorKind::Shape, "signal length does not match group order");
  Signal out = Signal::Zero(G.order());
  for (int g = 0; g < G.order(); ++g) {
    std::complex<double> acc(0.0, 0.0);
    for (int h = 0; h < G.order(); ++h)
      acc += x[h] * y[G.mult(G.inverse(h), g)];
    out[g] = acc;
  }
  return out;
}

Signal delta_signal(const FiniteGroup& G, int g) {
  G.check_element(g);
  Signal out = Signal::Zero(G.order());
  out[g] = 1.0;
  return out;
}

bool is_latin_square(const Eigen::MatrixXi& t) {
  int n = static_cast<int>(t.rows());
  if (t.cols() != n) return false;
  std::vector<bool> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), false);
    for (int c = 0; c < n; ++c) {
      int v = t(r, c);
      if (v < 0 || v >= n || seen[v]) return false;
      seen[v] = true;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), false);
    for (int r = 0; r < n; ++r) {
      int v = t(r, c);
      if (v < 0 || v >= n || seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

namespace {

// Identity element of a Latin square that happens to be a group table,
// or -1 when there is none.
int find_identity(const Eigen::MatrixXi& t) {
  int n = static_cast<int>(t.rows());
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      ok = (t(e, g) == g) && (t(g, e) == g);
    if (ok) return e;
  }
  return -1;
}

// Order profile: ord[g] = smallest k >= 1 with g^k = identity, or 0 when the
// table has no identity (quasigroup); used purely as a matching invariant.
std::vector<int> element_orders(const Eigen::MatrixXi& t, int identity) {
  int n = static_cast<int>(t.rows());
  std::vector<int> ord(n, 0);
  if (identity < 0) return ord;
  for (int g = 0; g < n; ++g) {
    int acc = g, k = 1;
    while (acc != identity && k <= n) {
      acc = t(acc, g);
      ++k;
    }
    ord[g] = (acc == identity) ? k : 0;
  }
  return ord;
}

struct IsoSearch {
  const Eigen::MatrixXi& a;
  const Eigen::MatrixXi& b;
  int n;
  std::vector<int> ord_a, ord_b;
  std::vector<int> pi;        // a-index -> b-index, -1 unassigned
  std::vector<bool> used;     // b-index taken

  bool consistent(int g) const {
    // Check all products involving g whose operands are assigned.
    for (int h = 0; h < n; ++h) {
      if (pi[h] < 0) continue;
      int p = a(g, h);
      if (pi[p] >= 0 && pi[p] != b(pi[g], pi[h])) return false;
      int q = a(h, g);
      if (pi[q] >= 0 && pi[q] != b(pi[h], pi[g])) return false;
    }
    return true;
  }

  bool assign(int g, int image, std::vector<std::pair<int, int>>& trail) {
    if (pi[g] >= 0) return pi[g] == image;
    if (used[image] || ord_a[g] != ord_b[image]) return false;
    pi[g] = image;
    used[image] = true;
    trail.emplace_back(g, image);
    if (!consistent(g)) return false;
    // Propagate products forced by the new assignment.
    for (int h = 0; h < n; ++h) {
      if (pi[h] < 0) continue;
      int p = a(g, h);
      if (pi[p] < 0 && !assign(p, b(pi[g], pi[h]), trail)) return false;
      int q = a(h, g);
      if (pi[q] < 0 && !assign(q, b(pi[h], pi[g]), trail)) return false;
    }
    return true;
  }

  void undo(std::vector<std::pair<int, int>>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      auto [g, image] = trail.back();
      trail.pop_back();
      pi[g] = -1;
      used[image] = false;
    }
  }

  bool search(std::vector<std::pair<int, int>>& trail) {
    int g = -1;
    for (int i = 0; i < n; ++i)
      if (pi[i] < 0) {
        g = i;
        break;
      }
    if (g < 0) return true;
    for (int image = 0; image < n; ++image) {
      if (used[image]) continue;
      std::size_t mark = trail.size();
      if (assign(g, image, trail) && search(trail)) return true;
      undo(trail, mark);
    }
    return false;
  }
};

}  // namespace

IsoResult tables_isomorphic(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
  if (!is_latin_square(a) || !is_latin_square(b))
    throw Error(ErrorKind::MalformedTable, "input is not a Latin square");
  IsoResult res;
  if (a.rows() != b.rows()) return res;
  int n = static_cast<int>(a.rows());

  IsoSearch s{a, b, n, {}, {}, std::vector<int>(n, -1),
              std::vector<bool>(n, false)};
  int ida = find_identity(a), idb = find_identity(b);
  if ((ida < 0) != (idb < 0)) return res;
  s.ord_a = element_orders(a, ida);
  s.ord_b = element_orders(b, idb);
  {
    std::vector<int> sa = s.ord_a, sb = s.ord_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return res;
  }

  std::vector<std::pair<int, int>> trail;
  if (ida >= 0 && !s.assign(ida, idb, trail)) return res;
  if (!s.search(trail)) return res;
  res.isomorphic = true;
  res.perm = s.pi;
  return res;
}

}  // namespace speclearn
