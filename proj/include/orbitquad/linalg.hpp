#ifndef ORBITQUAD_LINALG_HPP
#define ORBITQUAD_LINALG_HPP

// Exact rational linear algebra: scalars, dense matrices, canonical subspaces.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orbitquad {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : Error {
  using Error::Error;
};

inline bool is_zero(const Scalar& x) { return sgn(x) == 0; }

inline bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

/// Formats as "p/q", or "p" when q = 1.
inline std::string to_string(const Scalar& x) {
  Scalar c = x;
  c.canonicalize();
  return c.get_str();
}

/// Parses "p", "-p", "p/q". Throws Error on anything else or a zero denominator.
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string& t) {
    auto b = t.find_first_not_of(" \t");
    auto e = t.find_last_not_of(" \t");
    t = (b == std::string::npos) ? std::string{} : t.substr(b, e - b + 1);
  };
  strip(s);
  auto valid_int = [](std::string_view t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t start = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) start = 1;
    if (start == t.size()) return false;
    for (std::size_t i = start; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw Error("malformed rational literal '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

/// Parses a comma separated list of rationals.
inline Vec parse_vector(std::string_view text) {
  Vec out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(item));
  if (out.empty()) throw Error("empty vector literal");
  return out;
}

inline Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

inline Vec unit_vec(std::size_t n, std::size_t k) {
  Vec v = zero_vec(n);
  v.at(k) = 1;
  return v;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vec operator*(const Scalar& c, const Vec& a) {
  Vec out(a.size());
  if (is_zero(c)) return zero_vec(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

/// y += c * x
inline void axpy(const Scalar& c, std::span<const Scalar> x, std::span<Scalar> y) {
  if (is_zero(c)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) y[i] += c * x[i];
}

inline Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  return s;
}

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}
  Mat(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ShapeError("from_rows: row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  static Mat from_columns(const std::vector<Vec>& cols, std::size_t rows) {
    Mat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ShapeError("from_columns: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
  Vec col_vec(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  const std::vector<Scalar>& data() const { return data_; }

  bool is_zero() const { return orbitquad::is_zero(std::span<const Scalar>(data_)); }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Scalar trace() const {
    Scalar s = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  Vec apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw ShapeError("matrix-vector length mismatch");
    Vec out = zero_vec(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      auto r = row(i);
      Scalar s = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!orbitquad::is_zero(r[j]) && !orbitquad::is_zero(v[j])) s += r[j] * v[j];
      out[i] = std::move(s);
    }
    return out;
  }

  Mat& operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sum shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!orbitquad::is_zero(o.data_[k])) data_[k] += o.data_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix difference shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!orbitquad::is_zero(o.data_[k])) data_[k] -= o.data_[k];
    return *this;
  }
  Mat& operator*=(const Scalar& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Scalar& c, Mat a) { return a *= c; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    Mat out(a.rows_, b.cols_);
    // Nonzero pattern of b's rows; action matrices are very sparse.
    std::vector<std::vector<std::size_t>> nz(b.rows_);
    for (std::size_t k = 0; k < b.rows_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!orbitquad::is_zero(b(k, j))) nz[k].push_back(j);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (orbitquad::is_zero(aik)) continue;
        for (std::size_t j : nz[k]) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Outer product u wᵗ.
inline Mat outer(std::span<const Scalar> u, std::span<const Scalar> w) {
  Mat m(u.size(), w.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (is_zero(u[i])) continue;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (!is_zero(w[j])) m(i, j) = u[i] * w[j];
  }
  return m;
}

class Subspace;

struct RrefResult {
  Mat reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  Mat kernel_basis;  // rows span the right kernel, in free-variable form
};

namespace detail {

// In-place Gauss-Jordan; entries are renormalised by mpq after every operation.
inline std::vector<std::size_t> gauss_jordan(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Canonical span: reduced row-echelon basis with leftmost pivots.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  /// Span of the rows of `spanning`.
  static Subspace span(const Mat& spanning) {
    Mat m = spanning;
    auto piv = detail::gauss_jordan(m);
    Subspace s(spanning.cols());
    s.basis_ = Mat(piv.size(), spanning.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
      std::copy(m.row(i).begin(), m.row(i).end(), s.basis_.row(i).begin());
    s.pivots_ = std::move(piv);
    return s;
  }

  static Subspace span(const std::vector<Vec>& rows, std::size_t ambient) {
    return span(Mat::from_rows(rows, ambient));
  }

  static Subspace full(std::size_t ambient) { return span(Mat::identity(ambient)); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vec> basis_vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row_vec(i));
    return out;
  }

  /// v minus its projection along pivots; zero iff v lies in the span.
  Vec residual(std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw ShapeError("subspace: ambient dimension mismatch");
    Vec r(v.begin(), v.end());
    for (std::size_t i = 0; i < dim(); ++i) {
      Scalar c = r[pivots_[i]];
      if (is_zero(c)) continue;
      axpy(-c, basis_.row(i), r);
    }
    return r;
  }

  bool contains(std::span<const Scalar> v) const { return is_zero(residual(v)); }

  bool contains(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw ShapeError("subspace: ambient dimension mismatch");
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v in this basis; nullopt when v is not in the span.
  std::optional<Vec> coordinates(std::span<const Scalar> v) const {
    if (!contains(v)) return std::nullopt;
    Vec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

/// Reduced echelon form, rank and right kernel of m.
inline RrefResult rref(const Mat& m) {
  RrefResult out;
  out.reduced = m;
  out.pivots = detail::gauss_jordan(out.reduced);
  out.rank = out.pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : out.pivots) is_pivot[p] = true;
  std::vector<Vec> kernel;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec k = zero_vec(m.cols());
    k[f] = 1;
    for (std::size_t i = 0; i < out.rank; ++i) k[out.pivots[i]] = -out.reduced(i, f);
    kernel.push_back(std::move(k));
  }
  out.kernel_basis = Mat::from_rows(kernel, m.cols());
  return out;
}

inline std::size_t rank(const Mat& m) { return Subspace::span(m).dim(); }

inline Subspace kernel(const Mat& m) { return Subspace::span(rref(m).kernel_basis); }

inline Subspace row_space(const Mat& m) { return Subspace::span(m); }

inline Subspace column_space(const Mat& m) { return Subspace::span(m.transpose()); }

/// Functionals vanishing on s, in dual coordinates (φ · sᵗ = 0).
inline Subspace annihilator(const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(s.ambient_dim());
  return kernel(s.basis());
}

enum class CombineMode { sum, intersect };

inline Subspace subspace_combine(const Subspace& a, const Subspace& b, CombineMode mode) {
  if (a.ambient_dim() != b.ambient_dim()) throw ShapeError("subspace_combine: ambient dimension mismatch");
  if (mode == CombineMode::sum) {
    Mat stacked(a.dim() + b.dim(), a.ambient_dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      std::copy(a.basis().row(i).begin(), a.basis().row(i).end(), stacked.row(i).begin());
    for (std::size_t i = 0; i < b.dim(); ++i)
      std::copy(b.basis().row(i).begin(), b.basis().row(i).end(), stacked.row(a.dim() + i).begin());
    return Subspace::span(stacked);
  }
  // a ∩ b = (a° + b°)°
  return annihilator(subspace_combine(annihilator(a), annihilator(b), CombineMode::sum));
}

/// One solution of m x = rhs with free variables zero, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Mat& m, std::span<const Scalar> rhs) {
  if (rhs.size() != m.rows()) throw ShapeError("solve: rhs length mismatch");
  Mat aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::copy(m.row(i).begin(), m.row(i).end(), aug.row(i).begin());
    aug(i, m.cols()) = rhs[i];
  }
  auto piv = detail::gauss_jordan(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols());
  return x;
}

/// solve() against a fixed matrix with many right-hand sides. Only the pivot
/// columns of m take part, which gives the same free-variables-zero solution.
class PreparedSolve {
 public:
  PreparedSolve() = default;
  explicit PreparedSolve(const Mat& m) : cols_(m.cols()), rows_(m.rows()) {
    Mat work = m;
    pivots_ = detail::gauss_jordan(work);
    reduced_ = Mat(m.rows(), pivots_.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t k = 0; k < pivots_.size(); ++k) reduced_(i, k) = m(i, pivots_[k]);
  }

  std::size_t rank() const { return pivots_.size(); }

  std::optional<Vec> solve(std::span<const Scalar> rhs) const {
    if (rhs.size() != rows_) throw ShapeError("solve: rhs length mismatch");
    auto x = orbitquad::solve(reduced_, rhs);
    if (!x) return std::nullopt;
    Vec full = zero_vec(cols_);
    for (std::size_t k = 0; k < pivots_.size(); ++k) full[pivots_[k]] = (*x)[k];
    return full;
  }

 private:
  std::size_t cols_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::size_t> pivots_;
  Mat reduced_;
};

/// Incrementally maintained reduced echelon basis. Used for span growth loops
/// where rows arrive one at a time.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t ambient) : ambient_(ambient) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return ambient_; }

  Vec reduce(std::span<const Scalar> v) const {
    if (v.size() != ambient_) throw ShapeError("echelon builder: length mismatch");
    Vec r(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar c = r[pivots_[i]];
      if (!is_zero(c)) axpy(-c, rows_[i], r);
    }
    return r;
  }

  bool contains(std::span<const Scalar> v) const { return is_zero(reduce(v)); }

  /// Adds v; returns true when the span grew.
  bool insert(std::span<const Scalar> v) {
    Vec r = reduce(v);
    std::size_t p = 0;
    while (p < ambient_ && is_zero(r[p])) ++p;
    if (p == ambient_) return false;
    Scalar inv = 1 / r[p];
    for (auto& x : r)
      if (!is_zero(x)) x *= inv;
    for (auto& row : rows_) {
      Scalar c = row[p];
      if (!is_zero(c)) axpy(-c, r, row);
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  Subspace subspace() const { return Subspace::span(rows_, ambient_); }

 private:
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace orbitquad

#endif  // ORBITQUAD_LINALG_HPP
