#ifndef ORBITQUAD_MULTIMATRIX_HPP
#define ORBITQUAD_MULTIMATRIX_HPP

// Multi-index boxes, multi-vectors and multi-matrices, catalecticants, the
// convolution μ and the conjugation B ↦ A B Aᵗ.

#include <cstddef>
#include <numeric>
#include <optional>
#include <variant>
#include <vector>

#include "orbitquad/linalg.hpp"
#include "orbitquad/rep.hpp"

namespace orbitquad {

using MultiIndex = std::vector<int>;

/// {i : 0 <= i_k <= N_k}, enumerated lexicographically (first axis slowest).
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<int> bounds) : bounds_(std::move(bounds)) {
    for (int b : bounds_)
      if (b < 0) throw Error("box bounds must be non-negative");
    size_ = 1;
    for (int b : bounds_) size_ *= static_cast<std::size_t>(b + 1);
  }

  std::size_t axes() const { return bounds_.size(); }
  const std::vector<int>& bounds() const { return bounds_; }
  std::size_t size() const { return size_; }

  const std::vector<MultiIndex>& indices() const {
    if (cache_.empty() && size_ > 0) {
      cache_.reserve(size_);
      MultiIndex cur(bounds_.size(), 0);
      for (std::size_t k = 0; k < size_; ++k) {
        cache_.push_back(cur);
        for (std::size_t ax = bounds_.size(); ax-- > 0;) {
          if (cur[ax] < bounds_[ax]) {
            ++cur[ax];
            break;
          }
          cur[ax] = 0;
        }
      }
    }
    return cache_;
  }

  bool contains(const MultiIndex& i) const {
    if (i.size() != bounds_.size()) return false;
    for (std::size_t k = 0; k < i.size(); ++k)
      if (i[k] < 0 || i[k] > bounds_[k]) return false;
    return true;
  }

  std::size_t linear(const MultiIndex& i) const {
    if (!contains(i)) throw Error("multi-index outside the box");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < i.size(); ++k) idx = idx * static_cast<std::size_t>(bounds_[k] + 1) + i[k];
    return idx;
  }

  Box doubled() const {
    std::vector<int> b(bounds_);
    for (auto& x : b) x *= 2;
    return Box(b);
  }

  friend bool operator==(const Box& a, const Box& b) { return a.bounds_ == b.bounds_; }

 private:
  std::vector<int> bounds_;
  std::size_t size_ = 1;
  mutable std::vector<MultiIndex> cache_;
};

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] + b[k];
  return c;
}

/// i! = i_1! ... i_r!
inline Scalar multi_factorial(const MultiIndex& i) {
  mpz_class f = 1;
  for (int x : i)
    for (int t = 2; t <= x; ++t) f *= t;
  return Scalar(f);
}

struct MultiVector {
  Box box;
  Vec data;

  MultiVector() = default;
  explicit MultiVector(Box b) : box(std::move(b)), data(zero_vec(box.size())) {}
  MultiVector(Box b, Vec d) : box(std::move(b)), data(std::move(d)) {
    if (data.size() != box.size()) throw ShapeError("multi-vector data length does not match its box");
  }

  static MultiVector indicator(const Box& b, const MultiIndex& i) {
    MultiVector v(b);
    v.data[b.linear(i)] = 1;
    return v;
  }

  Scalar& operator[](const MultiIndex& i) { return data[box.linear(i)]; }
  const Scalar& operator[](const MultiIndex& i) const { return data[box.linear(i)]; }

  friend bool operator==(const MultiVector& a, const MultiVector& b) { return a.box == b.box && a.data == b.data; }
};

/// Rows are either a box or a plain range 0..ℓ-1.
using IndexSpace = std::variant<Box, std::size_t>;

inline std::size_t index_count(const IndexSpace& s) {
  return std::holds_alternative<Box>(s) ? std::get<Box>(s).size() : std::get<std::size_t>(s);
}

inline bool same_space(const IndexSpace& a, const IndexSpace& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<Box>(a)) return std::get<Box>(a) == std::get<Box>(b);
  return std::get<std::size_t>(a) == std::get<std::size_t>(b);
}

struct MultiMatrix {
  IndexSpace rows;
  IndexSpace cols;
  Mat data;

  MultiMatrix(IndexSpace r, IndexSpace c) : rows(std::move(r)), cols(std::move(c)), data(index_count(rows), index_count(cols)) {}
  MultiMatrix(IndexSpace r, IndexSpace c, Mat d) : rows(std::move(r)), cols(std::move(c)), data(std::move(d)) {
    if (data.rows() != index_count(rows) || data.cols() != index_count(cols))
      throw ShapeError("multi-matrix data shape does not match its index spaces");
  }

  static MultiMatrix identity(const Box& b) { return {b, b, Mat::identity(b.size())}; }

  friend bool operator==(const MultiMatrix& a, const MultiMatrix& b) {
    return same_space(a.rows, b.rows) && same_space(a.cols, b.cols) && a.data == b.data;
  }
};

enum class MMOp { add, mul };

inline MultiMatrix mm_algebra(const MultiMatrix& a, const MultiMatrix& b, MMOp op) {
  if (op == MMOp::add) {
    if (!same_space(a.rows, b.rows) || !same_space(a.cols, b.cols)) throw ShapeError("multi-matrix sum: shape mismatch");
    return {a.rows, a.cols, a.data + b.data};
  }
  if (!same_space(a.cols, b.rows)) throw ShapeError("multi-matrix product: inner index spaces differ");
  return {a.rows, b.cols, a.data * b.data};
}

inline MultiMatrix transpose(const MultiMatrix& a) { return {a.cols, a.rows, a.data.transpose()}; }

/// B with B_ij = b_{i+j}, indexed by the half box N where b lives on 2N.
struct Catalecticant {
  Box box;
  MultiVector b;

  const Scalar& entry(const MultiIndex& i, const MultiIndex& j) const { return b[add(i, j)]; }

  MultiMatrix matrix() const {
    MultiMatrix m(box, box);
    const auto& idx = box.indices();
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (std::size_t q = 0; q < idx.size(); ++q) m.data(p, q) = entry(idx[p], idx[q]);
    return m;
  }
};

inline Catalecticant catalecticant_from_b(const MultiVector& b) {
  std::vector<int> half;
  for (int x : b.box.bounds()) {
    if (x % 2 != 0) throw Error("catalecticant: box is not of the form 2N");
    half.push_back(x / 2);
  }
  return {Box(half), b};
}

/// Recovers b from the 0-row and N-column; throws if m is not catalectic.
inline MultiVector catalecticant_to_b(const MultiMatrix& m) {
  if (!std::holds_alternative<Box>(m.rows) || !same_space(m.rows, m.cols))
    throw ShapeError("catalecticant: needs a square multi-matrix over a box");
  const Box& box = std::get<Box>(m.rows);
  MultiVector b(box.doubled());
  const auto& idx = box.indices();
  MultiIndex zero(box.axes(), 0);
  MultiIndex top(box.bounds());
  // Each s in 2N splits as i + j with i = min(s, N) (read from the 0-row when s <= N).
  for (const auto& s : b.box.indices()) {
    MultiIndex i(s.size()), j(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      i[k] = std::min(s[k], top[k]);
      j[k] = s[k] - i[k];
    }
    b[s] = m.data(box.linear(i), box.linear(j));
  }
  for (std::size_t p = 0; p < idx.size(); ++p)
    for (std::size_t q = 0; q < idx.size(); ++q)
      if (m.data(p, q) != b[add(idx[p], idx[q])]) throw Error("multi-matrix is not catalectic");
  return b;
}

/// Coefficients of the product polynomial f·g on the doubled box.
inline MultiVector mu(const MultiVector& f, const MultiVector& g) {
  if (!(f.box == g.box)) throw ShapeError("mu: box mismatch");
  MultiVector out(f.box.doubled());
  const auto& idx = f.box.indices();
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (is_zero(f.data[p])) continue;
    for (std::size_t q = 0; q < idx.size(); ++q) {
      if (is_zero(g.data[q])) continue;
      out[add(idx[p], idx[q])] += f.data[p] * g.data[q];
    }
  }
  return out;
}

/// μ as a linear map on S² of the box space (upper-triangle coordinates).
inline Vec mu_sym(const Box& box, std::span<const Scalar> sym) {
  const std::size_t m = box.size();
  if (sym.size() != sym_dim(m)) throw ShapeError("mu_sym: coordinate length mismatch");
  Box dbl = box.doubled();
  Vec out = zero_vec(dbl.size());
  const auto& idx = box.indices();
  std::size_t k = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b, ++k) {
      if (is_zero(sym[k])) continue;
      // M_ab and M_ba both contribute
      Scalar w = a == b ? sym[k] : Scalar(2 * sym[k]);
      out[dbl.linear(add(idx[a], idx[b]))] += w;
    }
  return out;
}

struct DotSpan {
  Subspace sym;    // inside S²(box space)
  Subspace image;  // μ(sym) inside the doubled box space
};

/// s1.s2: span of symmetrised products u·w, and its μ-image.
inline DotSpan dot_span(const Box& box, const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != box.size() || s2.ambient_dim() != box.size()) throw ShapeError("dot_span: ambient mismatch");
  EchelonBuilder sym(sym_dim(box.size()));
  EchelonBuilder img(box.doubled().size());
  auto b1 = s1.basis_vectors();
  auto b2 = s2.basis_vectors();
  for (const auto& u : b1)
    for (const auto& w : b2) {
      sym.insert(sym_product(u, w));
      img.insert(mu(MultiVector(box, u), MultiVector(box, w)).data);
    }
  return {sym.subspace(), img.subspace()};
}

/// μ(s1.s2) only; skips the S² bookkeeping.
inline Subspace mu_span(const Box& box, const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != box.size() || s2.ambient_dim() != box.size()) throw ShapeError("mu_span: ambient mismatch");
  EchelonBuilder img(box.doubled().size());
  auto b1 = s1.basis_vectors();
  auto b2 = s2.basis_vectors();
  for (const auto& u : b1)
    for (const auto& w : b2) img.insert(mu(MultiVector(box, u), MultiVector(box, w)).data);
  return img.subspace();
}

/// ker μ ∩ S²(s), in S² coordinates of the box space.
inline Subspace mu_kernel(const Box& box, const Subspace& s) {
  Subspace sq = dot_span(box, s, s).sym;
  if (sq.dim() == 0) return Subspace(sym_dim(box.size()));
  auto basis = sq.basis_vectors();
  std::vector<Vec> images;
  for (const auto& v : basis) images.push_back(mu_sym(box, v));
  // coefficient vectors c with Σ c_t μ(basis_t) = 0
  Subspace coeffs = kernel(Mat::from_rows(images, box.doubled().size()).transpose());
  std::vector<Vec> out;
  for (const auto& c : coeffs.basis_vectors()) {
    Vec v = zero_vec(sym_dim(box.size()));
    for (std::size_t t = 0; t < basis.size(); ++t) axpy(c[t], basis[t], v);
    out.push_back(std::move(v));
  }
  return Subspace::span(out, sym_dim(box.size()));
}

/// A B Aᵗ; entry (k,l) = Σ_{i,j} b_{i+j} a_{ki} a_{lj}.
inline Mat phi_A(const MultiMatrix& a, const Catalecticant& b) {
  if (!std::holds_alternative<Box>(a.cols) || !(std::get<Box>(a.cols) == b.box))
    throw ShapeError("phi_A: column space of A differs from the catalecticant box");
  Mat bm = b.matrix().data;
  return a.data * bm * a.data.transpose();
}

enum class Rank1Status { ok, zero, not_rank_one };

struct Rank1Factor {
  Rank1Status status = Rank1Status::zero;
  Vec u;        // first nonzero coordinate is 1
  Scalar scale; // m = scale * u uᵗ
};

inline Rank1Factor rank1_factor(const Mat& m) {
  if (!m.is_symmetric()) throw Error("rank1_factor: matrix is not symmetric");
  Rank1Factor out;
  if (m.is_zero()) return out;
  std::size_t r = 0;
  while (is_zero(m.row(r))) ++r;
  Vec u = m.row_vec(r);
  std::size_t p = 0;
  while (is_zero(u[p])) ++p;
  Scalar lead = u[p];
  for (auto& x : u) x /= lead;
  Scalar scale = m(p, p);
  if (is_zero(scale)) {
    out.status = Rank1Status::not_rank_one;
    return out;
  }
  Mat rebuilt = outer(u, u);
  rebuilt *= scale;
  if (!(rebuilt == m)) {
    out.status = Rank1Status::not_rank_one;
    return out;
  }
  out.status = Rank1Status::ok;
  out.u = std::move(u);
  out.scale = std::move(scale);
  return out;
}

}  // namespace orbitquad

#endif  // ORBITQUAD_MULTIMATRIX_HPP
