#ifndef ORBITQUAD_LIE_HPP
#define ORBITQUAD_LIE_HPP

// sl(n) with its positive roots and Chevalley generators.

#include <cstddef>
#include <string>
#include <vector>

#include "orbitquad/linalg.hpp"

namespace orbitquad {

/// Positive root e_i - e_j of sl(n), 1 <= i < j <= n. X = E_ij, Y = E_ji.
struct Root {
  int i = 0;
  int j = 0;
  friend bool operator==(const Root&, const Root&) = default;
};

/// Catalog symbol. For H, `root.i` is the simple index k (H = E_kk - E_{k+1,k+1}).
struct GenSym {
  enum class Kind { X, Y, H };
  Kind kind = Kind::X;
  Root root;

  bool nilpotent() const { return kind != Kind::H; }

  std::string str() const {
    switch (kind) {
      case Kind::X: return "X(" + std::to_string(root.i) + "," + std::to_string(root.j) + ")";
      case Kind::Y: return "Y(" + std::to_string(root.i) + "," + std::to_string(root.j) + ")";
      case Kind::H: return "H(" + std::to_string(root.i) + ")";
    }
    return {};
  }

  friend bool operator==(const GenSym&, const GenSym&) = default;
};

using Word = std::vector<GenSym>;

inline std::string word_str(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? " " : "") + w[k].str();
  return s;
}

inline Mat bracket(const Mat& a, const Mat& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw ShapeError("bracket: operands must be square of equal size");
  return a * b - b * a;
}

class LieAlg {
 public:
  std::size_t n() const { return n_; }
  const std::vector<Root>& positive_roots() const { return roots_; }
  const std::vector<GenSym>& symbols() const { return symbols_; }
  const std::vector<Mat>& catalog() const { return catalog_; }
  std::size_t size() const { return symbols_.size(); }

  std::size_t index_of(const GenSym& s) const {
    for (std::size_t k = 0; k < symbols_.size(); ++k)
      if (symbols_[k] == s) return k;
    throw Error("unknown generator symbol " + s.str());
  }

  const Mat& matrix(const GenSym& s) const { return catalog_[index_of(s)]; }

  /// Coordinates of a traceless n×n matrix in the catalog basis.
  Vec coordinates(const Mat& m) const {
    if (m.rows() != n_ || m.cols() != n_) throw ShapeError("coordinates: wrong matrix size");
    if (!is_zero(m.trace())) throw Error("coordinates: matrix is not traceless");
    Vec c = zero_vec(size());
    const std::size_t p = roots_.size();
    for (std::size_t k = 0; k < p; ++k) {
      c[k] = m(roots_[k].i - 1, roots_[k].j - 1);
      c[p + k] = m(roots_[k].j - 1, roots_[k].i - 1);
    }
    // diag(d) = Σ c_k (E_kk - E_{k+1,k+1}) with c_k = d_1 + ... + d_k
    Scalar acc = 0;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      acc += m(k, k);
      c[2 * p + k] = acc;
    }
    return c;
  }

  friend LieAlg make_sl(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<Root> roots_;
  std::vector<GenSym> symbols_;
  std::vector<Mat> catalog_;
};

/// sl(n): all X in lexicographic root order, then all Y, then the simple H_k.
inline LieAlg make_sl(std::size_t n) {
  if (n < 2) throw Error("sl(n) requires n >= 2");
  LieAlg g;
  g.n_ = n;
  for (int i = 1; i <= static_cast<int>(n); ++i)
    for (int j = i + 1; j <= static_cast<int>(n); ++j) g.roots_.push_back({i, j});
  auto unit = [n](int r, int c) {
    Mat m(n, n);
    m(r - 1, c - 1) = 1;
    return m;
  };
  for (const auto& rt : g.roots_) {
    g.symbols_.push_back({GenSym::Kind::X, rt});
    g.catalog_.push_back(unit(rt.i, rt.j));
  }
  for (const auto& rt : g.roots_) {
    g.symbols_.push_back({GenSym::Kind::Y, rt});
    g.catalog_.push_back(unit(rt.j, rt.i));
  }
  for (int k = 1; k < static_cast<int>(n); ++k) {
    g.symbols_.push_back({GenSym::Kind::H, {k, k + 1}});
    g.catalog_.push_back(unit(k, k) - unit(k + 1, k + 1));
  }
  return g;
}

/// H_β = [X_β, Y_β] = E_ii - E_jj.
inline Mat coroot(const LieAlg& g, const Root& r) {
  Mat h(g.n(), g.n());
  h(r.i - 1, r.i - 1) = 1;
  h(r.j - 1, r.j - 1) = -1;
  return h;
}

/// Parses "X(1,2)", "Y(2,3)", "H(1)".
inline GenSym parse_symbol(const std::string& text) {
  auto fail = [&]() -> GenSym { throw Error("malformed generator symbol '" + text + "'"); };
  if (text.size() < 4 || text[1] != '(' || text.back() != ')') return fail();
  GenSym s;
  switch (text[0]) {
    case 'X': s.kind = GenSym::Kind::X; break;
    case 'Y': s.kind = GenSym::Kind::Y; break;
    case 'H': s.kind = GenSym::Kind::H; break;
    default: return fail();
  }
  std::string inner = text.substr(2, text.size() - 3);
  try {
    auto comma = inner.find(',');
    if (s.kind == GenSym::Kind::H) {
      if (comma != std::string::npos) return fail();
      s.root.i = std::stoi(inner);
      s.root.j = s.root.i + 1;
    } else {
      if (comma == std::string::npos) return fail();
      s.root.i = std::stoi(inner.substr(0, comma));
      s.root.j = std::stoi(inner.substr(comma + 1));
    }
  } catch (const std::logic_error&) {
    return fail();
  }
  return s;
}

}  // namespace orbitquad

#endif  // ORBITQUAD_LIE_HPP
