#ifndef ORBITQUAD_ORBIT_HPP
#define ORBITQUAD_ORBIT_HPP

// Quadrics through an orbit closure and the catalecticant description of
// their zero locus:
//
//   M_y = { <x> : xx ∈ Ug(yy) }  ≅  φ_A(Cat) ∩ Veronese,   φ_A(B) = A B Aᵗ,
//
// where the columns of A are D^i y / i! for a generator sequence D and a box N
// with D^i y = 0 outside N. Everything is exact; the pipeline checks each
// identity it relies on and reports failures with witnesses.

#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitquad/linalg.hpp"
#include "orbitquad/multimatrix.hpp"
#include "orbitquad/rep.hpp"
#include "orbitquad/rng.hpp"

namespace orbitquad {

struct CapExceeded : Error {
  CapExceeded(std::string what_cap, std::size_t limit_, std::size_t value_, const std::string& msg)
      : Error(msg), cap(std::move(what_cap)), limit(limit_), value(value_) {}
  std::string cap;
  std::size_t limit;
  std::size_t value;
};

/// Sequence search gave up; carries the best span dimension reached.
struct SearchExhausted : CapExceeded {
  SearchExhausted(std::size_t target, std::size_t reached, const std::string& msg)
      : CapExceeded("sequence_search", target, reached, msg) {}
};

struct Limits {
  std::size_t max_box = 20000;
  std::size_t max_sequence = 40;

  /// Defaults, with ORBITQUAD_MAX_BOX overriding the box cap.
  static Limits from_env() {
    Limits l;
    if (const char* env = std::getenv("ORBITQUAD_MAX_BOX")) {
      try {
        l.max_box = std::stoul(env);
      } catch (const std::logic_error&) {
        throw Error(std::string("ORBITQUAD_MAX_BOX is not a count: ") + env);
      }
    }
    return l;
  }
};

/// A module together with its symmetric square S²(V) on symmetric matrices.
struct SquareRep {
  Rep base;
  Rep square;
};

inline SquareRep square_of(const Rep& r) { return {r, derived_rep(r, DerivedKind::sym2())}; }

/// x xᵗ
inline Mat sym_square(std::span<const Scalar> x) { return outer(x, x); }

inline Vec sym_square_coords(std::span<const Scalar> x) { return sym_product(x, x); }

inline void require_nonzero(std::span<const Scalar> y, const char* op) {
  if (is_zero(y)) throw Error(std::string(op) + ": y must be nonzero");
}

inline void require_length(const Rep& r, std::span<const Scalar> v, const char* op) {
  if (v.size() != r.dim())
    throw ShapeError(std::string(op) + ": vector length " + std::to_string(v.size()) + " does not match dim " +
                     std::to_string(r.dim()));
}

/// Ug(yy) ⊆ S²(V).
inline Subspace orbit_module(const SquareRep& sq, std::span<const Scalar> y) {
  require_length(sq.base, y, "orbit_module");
  require_nonzero(y, "orbit_module");
  return cyclic_module(sq.square, sym_square_coords(y));
}

/// Quadrics as symmetric matrices Φ, evaluated on S²(V) by ⟨Φ, M⟩ = Σ Φ_ij M_ij,
/// so q(x) = xᵗ Φ x.
struct QuadraticIdeal {
  std::size_t ambient = 0;  // dim V
  std::vector<Mat> basis;

  std::size_t dim() const { return basis.size(); }

  Scalar evaluate(std::size_t k, std::span<const Scalar> x) const {
    return dot(x, basis.at(k).apply(x));
  }
};

/// Annihilator (under the trace pairing) of a subspace of S²(V), V of dim l.
inline QuadraticIdeal ideal_of(const Subspace& s, std::size_t l) {
  QuadraticIdeal q;
  q.ambient = l;
  // In upper-triangle coordinates the trace pairing weighs off-diagonal slots by 2.
  for (const auto& f : annihilator(s).basis_vectors()) {
    Mat phi(l, l);
    for (std::size_t a = 0; a < l; ++a)
      for (std::size_t b = a; b < l; ++b) {
        const Scalar& c = f[sym_index(l, a, b)];
        if (a == b) {
          phi(a, a) = c;
        } else {
          phi(a, b) = c / 2;
          phi(b, a) = c / 2;
        }
      }
    q.basis.push_back(std::move(phi));
  }
  return q;
}

inline QuadraticIdeal quadric_ideal(const SquareRep& sq, std::span<const Scalar> y) {
  return ideal_of(orbit_module(sq, y), sq.base.dim());
}

/// xx ∈ Ug(yy), given the orbit module.
inline bool in_orbit_span(const Subspace& orbit, std::span<const Scalar> x) {
  return orbit.contains(sym_square_coords(x));
}

inline bool my_membership(const SquareRep& sq, std::span<const Scalar> y, std::span<const Scalar> x) {
  require_length(sq.base, x, "my_membership");
  return in_orbit_span(orbit_module(sq, y), x);
}

// ---------------------------------------------------------------------------
// Generator sequences

/// D^i applied to u, i.e. D_1^{i_1}(... D_r^{i_r}(u)).
inline Vec apply_monomial(const Rep& r, const std::vector<GenSym>& d, const MultiIndex& i, std::span<const Scalar> u) {
  Vec v(u.begin(), u.end());
  for (std::size_t s = d.size(); s-- > 0;) {
    const Mat& m = r.action(d[s]);
    for (int t = 0; t < i[s]; ++t) v = m.apply(v);
  }
  return v;
}

/// Box N with D^i u = 0 whenever some i_s > N_s. Axes are fixed from the last
/// one inwards; N_s is the largest exponent with D_s^{N_s} nonzero on the span
/// of the vectors produced by the later axes.
inline Box nilpotency_bound(const Rep& r, const std::vector<GenSym>& d, std::span<const Scalar> u,
                            const Limits& limits = Limits::from_env()) {
  require_length(r, u, "nilpotency_bound");
  for (const auto& s : d)
    if (!s.nilpotent()) throw Error("nilpotency_bound: " + s.str() + " does not act nilpotently");
  std::vector<int> bounds(d.size(), 0);
  EchelonBuilder span(r.dim());
  span.insert(u);
  std::vector<Vec> current;
  if (!is_zero(u)) current.push_back(Vec(u.begin(), u.end()));
  std::size_t size = 1;
  for (std::size_t s = d.size(); s-- > 0;) {
    const Mat& m = r.action(d[s]);
    int top = 0;
    EchelonBuilder next(r.dim());
    std::vector<Vec> next_vecs;
    for (const auto& v : current) {
      Vec w = v;
      int e = 0;
      while (true) {
        if (next.insert(w)) next_vecs.push_back(w);
        Vec img = m.apply(w);
        if (is_zero(img)) break;
        if (++e > static_cast<int>(r.dim()) + 1) throw Error("nilpotency_bound: action is not nilpotent");
        w = std::move(img);
      }
      top = std::max(top, e);
    }
    bounds[s] = top;
    current = std::move(next_vecs);
    size *= static_cast<std::size_t>(top + 1);
    if (size > limits.max_box)
      throw CapExceeded("box", limits.max_box, size,
                        "box size cap exceeded: |N| > " + std::to_string(limits.max_box));
  }
  return Box(bounds);
}

struct GenSeq {
  std::vector<GenSym> symbols;
  Box box;
  std::vector<Word> words_log;  // closure words whose letters extended the Y block
  std::size_t span_dim = 0;
};

/// dim span{D^n(yy) : n ∈ 2N}, computed axis by axis from the innermost one.
/// Stops early once `target` is reached.
inline std::size_t monomial_span_dim(const SquareRep& sq, const std::vector<GenSym>& d, const Box& box,
                                     std::span<const Scalar> y, std::size_t target) {
  std::vector<Vec> current{sym_square_coords(y)};
  EchelonBuilder total(sq.square.dim());
  for (std::size_t s = d.size(); s-- > 0;) {
    const Mat& m = sq.square.action(d[s]);
    EchelonBuilder stage(sq.square.dim());
    std::vector<Vec> next;
    for (const auto& v : current) {
      Vec w = v;
      for (int e = 0; e <= 2 * box.bounds()[s]; ++e) {
        if (is_zero(w)) break;
        if (stage.insert(w)) next.push_back(w);
        w = m.apply(w);
      }
    }
    current = std::move(next);
    if (stage.dim() >= target) return stage.dim();
  }
  for (const auto& v : current) total.insert(v);
  return total.dim();
}

namespace detail {

inline void append_letters(std::vector<GenSym>& d, const Word& w) {
  for (const auto& letter : w)
    if (d.empty() || !(d.back() == letter)) d.push_back(letter);
}

}  // namespace detail

/// Finds (D, N) with D^{N+e_j} y = 0 and span{D^n(yy) : n ∈ 2N} = Ug(yy).
///
/// Starts from all Y_β. If the ordered Y-monomials fall short, the extension
/// letters come from the closure words P_i with P_i(yy) = p_i, the highest
/// weight vectors of Ug(yy): first the distinct letters of those words one at
/// a time, then the words themselves concatenated in order. Every candidate is
/// checked directly against the orbit module.
inline GenSeq generator_sequence(const SquareRep& sq, std::span<const Scalar> y,
                                 const Limits& limits = Limits::from_env()) {
  require_length(sq.base, y, "generator_sequence");
  require_nonzero(y, "generator_sequence");
  const auto& g = sq.base.algebra();
  const Vec yy = sym_square_coords(y);
  Closure closure = closure_with_words(sq.square, {yy});
  const std::size_t target = closure.space.dim();

  std::size_t best = 0;
  bool hit_cap = false, evaluated = false;
  std::optional<CapExceeded> first_cap;
  auto attempt = [&](const std::vector<GenSym>& d, const std::vector<Word>& log) -> std::optional<GenSeq> {
    if (d.size() > limits.max_sequence) {
      hit_cap = true;
      if (!first_cap)
        first_cap = CapExceeded("sequence_length", limits.max_sequence, d.size(),
                                "generator sequence length cap exceeded: r > " + std::to_string(limits.max_sequence));
      return std::nullopt;
    }
    Box box;
    try {
      box = nilpotency_bound(sq.base, d, y, limits);
    } catch (const CapExceeded& e) {
      hit_cap = true;
      if (!first_cap) first_cap = e;
      return std::nullopt;
    }
    evaluated = true;
    std::size_t got = monomial_span_dim(sq, d, box, y, target);
    best = std::max(best, got);
    if (got != target) return std::nullopt;
    return GenSeq{d, box, log, got};
  };

  std::vector<GenSym> ys;
  for (const auto& s : g.symbols())
    if (s.kind == GenSym::Kind::Y) ys.push_back(s);
  if (auto gs = attempt(ys, {})) return *gs;

  // Words P_i: express each highest weight vector of Ug(yy) in the closure basis.
  std::vector<Word> pool;
  const Mat vectors = Mat::from_rows(closure.vectors, sq.square.dim()).transpose();
  for (const auto& hw : highest_weight_vectors(sq.square)) {
    Subspace inside = subspace_combine(hw.space, closure.space, CombineMode::intersect);
    for (const auto& p : inside.basis_vectors()) {
      auto coeffs = solve(vectors, p);
      if (!coeffs) throw Error("generator_sequence: highest weight vector outside the closure (internal error)");
      std::vector<std::size_t> used;
      for (std::size_t k = 0; k < coeffs->size(); ++k)
        if (!is_zero((*coeffs)[k])) used.push_back(k);
      std::stable_sort(used.begin(), used.end(),
                       [&](std::size_t a, std::size_t b) { return closure.words[a].size() < closure.words[b].size(); });
      for (std::size_t k : used)
        if (!closure.words[k].empty() &&
            std::find(pool.begin(), pool.end(), closure.words[k]) == pool.end())
          pool.push_back(closure.words[k]);
    }
  }

  // Distinct letters, catalog order.
  {
    std::vector<GenSym> d = ys;
    std::vector<Word> log;
    for (const auto& s : g.symbols()) {
      bool present = false;
      for (const auto& w : pool)
        if (std::find(w.begin(), w.end(), s) != w.end()) present = true;
      if (!present || !s.nilpotent()) continue;
      d.push_back(s);
      log.push_back({s});
      if (auto gs = attempt(d, log)) return *gs;
    }
  }
  // Whole words in order.
  {
    std::vector<GenSym> d = ys;
    std::vector<Word> log;
    for (const auto& w : pool) {
      Word nil;
      for (const auto& s : w)
        if (s.nilpotent()) nil.push_back(s);
      if (nil.empty()) continue;
      detail::append_letters(d, nil);
      log.push_back(w);
      if (auto gs = attempt(d, log)) return *gs;
      if (d.size() > limits.max_sequence) break;
    }
  }
  // Nothing was ever evaluated: report the cap that blocked the first candidate.
  if (!evaluated && first_cap) throw *first_cap;
  throw SearchExhausted(target, best,
                        "sequence search exhausted: best monomial span dim " + std::to_string(best) + " of " +
                            std::to_string(target) + (hit_cap ? " (box/length caps hit)" : ""));
}

/// ℓ×N multi-matrix whose column i is D^i y / i!.
inline MultiMatrix build_A(const Rep& r, std::span<const Scalar> y, const GenSeq& gs) {
  require_length(r, y, "build_A");
  const Box& box = gs.box;
  const auto& idx = box.indices();
  std::vector<Vec> raw(box.size());
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const auto& i = idx[p];
    std::size_t s = 0;
    while (s < i.size() && i[s] == 0) ++s;
    if (s == i.size()) {
      raw[p] = Vec(y.begin(), y.end());
      continue;
    }
    MultiIndex prev = i;
    --prev[s];
    raw[p] = r.action(gs.symbols[s]).apply(raw[box.linear(prev)]);
  }
  MultiMatrix a(r.dim(), box);
  for (std::size_t p = 0; p < idx.size(); ++p) {
    Scalar f = multi_factorial(idx[p]);
    for (std::size_t k = 0; k < r.dim(); ++k)
      if (!is_zero(raw[p][k])) a.data(k, p) = raw[p][k] / f;
  }
  return a;
}

inline Word monomial_word(const std::vector<GenSym>& d, const MultiIndex& n) {
  Word w;
  for (std::size_t s = 0; s < d.size(); ++s)
    for (int t = 0; t < n[s]; ++t) w.push_back(d[s]);
  return w;
}

/// D^n(yy)/n! == Σ_{i+j=n} (D^i y/i!)(D^j y/j!), with the left side computed
/// in S²(V) and the right side from products of vectors in V.
inline bool leibniz_check(const SquareRep& sq, std::span<const Scalar> y, const GenSeq& gs, const MultiIndex& n) {
  if (n.size() != gs.symbols.size()) throw ShapeError("leibniz_check: multi-index has the wrong number of axes");
  const Scalar nf = multi_factorial(n);
  Vec lhs = act_word(sq.square, monomial_word(gs.symbols, n), sym_square_coords(y));
  for (auto& x : lhs) x /= nf;
  Vec rhs = zero_vec(sq.square.dim());
  Box below(n);
  for (const auto& i : below.indices()) {
    MultiIndex j(n.size());
    for (std::size_t k = 0; k < n.size(); ++k) j[k] = n[k] - i[k];
    Vec u = apply_monomial(sq.base, gs.symbols, i, y);
    if (is_zero(u)) continue;
    Vec w = apply_monomial(sq.base, gs.symbols, j, y);
    if (is_zero(w)) continue;
    Scalar c = 1 / (multi_factorial(i) * multi_factorial(j));
    axpy(c, sym_product(u, w), rhs);
  }
  return lhs == rhs;
}

/// Matrix whose column n (n ∈ 2N) holds φ_A(indicator_n) = Σ_{i+j=n} a_i·a_j
/// in S² coordinates; φ_A(B) = frame · b.
inline Mat quadratic_frame(const MultiMatrix& a) {
  const Box& box = std::get<Box>(a.cols);
  const Box dbl = box.doubled();
  const std::size_t l = a.data.rows();
  Mat frame(sym_dim(l), dbl.size());
  const auto& idx = box.indices();
  std::vector<Vec> cols;
  for (std::size_t p = 0; p < idx.size(); ++p) cols.push_back(a.data.col_vec(p));
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (is_zero(cols[p])) continue;
    for (std::size_t q = p; q < idx.size(); ++q) {
      if (is_zero(cols[q])) continue;
      Vec prod = sym_product(cols[p], cols[q]);
      std::size_t n = dbl.linear(add(idx[p], idx[q]));
      Scalar mult = p == q ? 1 : 2;
      for (std::size_t t = 0; t < prod.size(); ++t)
        if (!is_zero(prod[t])) frame(t, n) += mult * prod[t];
    }
  }
  return frame;
}

struct InconsistentError : Error {
  using Error::Error;
};

/// b on 2N with Q(yy) = Σ b_{i+j} (D^i y/i!)(D^j y/j!); free variables zero.
inline MultiVector decompose_Q(const SquareRep& sq, std::span<const Scalar> y, const MultiMatrix& a, const Word& q) {
  const Box dbl = std::get<Box>(a.cols).doubled();
  Vec target = act_word(sq.square, q, sym_square_coords(y));
  Mat frame = quadratic_frame(a);
  auto b = solve(frame, target);
  if (!b) throw InconsistentError("decompose_Q: Q(yy) = " + word_str(q) + "(yy) is outside the catalecticant span");
  if (!(frame.apply(*b) == target)) throw Error("decompose_Q: nonzero residual (internal error)");
  return MultiVector(dbl, std::move(*b));
}

inline MultiVector decompose_Q(const SquareRep& sq, std::span<const Scalar> y, const GenSeq& gs, const Word& q) {
  return decompose_Q(sq, y, build_A(sq.base, y, gs), q);
}

// ---------------------------------------------------------------------------
// Hyperplanes of im Aᵗ and the rank-one correspondence

enum class HyperplaneKind { hyperplane, full, smaller };

inline const char* to_string(HyperplaneKind k) {
  switch (k) {
    case HyperplaneKind::hyperplane: return "hyperplane";
    case HyperplaneKind::full: return "full";
    case HyperplaneKind::smaller: return "smaller";
  }
  return "";
}

struct HyperplaneResult {
  HyperplaneKind kind = HyperplaneKind::hyperplane;
  std::size_t codim = 1;
};

/// im Aᵗ = span of the rows of A, inside the box space.
inline Subspace image_of_transpose(const MultiMatrix& a) { return row_space(a.data); }

/// Codimension of μ(W.im Aᵗ) in μ(im Aᵗ.im Aᵗ).
inline HyperplaneResult hyperplane_check(const MultiMatrix& a, const Subspace& w) {
  const Box& box = std::get<Box>(a.cols);
  Subspace im = image_of_transpose(a);
  if (w.ambient_dim() != box.size() || !im.contains(w) || w.dim() + 1 != im.dim())
    throw Error("hyperplane_check: W is not a hyperplane of im Aᵗ");
  std::size_t full = mu_span(box, im, im).dim();
  std::size_t part = mu_span(box, w, im).dim();
  HyperplaneResult r;
  r.codim = full - part;
  r.kind = r.codim == 1 ? HyperplaneKind::hyperplane : r.codim == 0 ? HyperplaneKind::full : HyperplaneKind::smaller;
  return r;
}

struct ForwardOutcome {
  bool rank_ok = false;    // rank(φ_A(B)) <= 1
  bool member = false;     // factor passes my_membership
  std::size_t rank = 0;
  MultiVector b;
  Mat image;               // φ_A(B)
  std::optional<Vec> factor;
  std::string note;

  bool pass() const { return rank_ok && factor.has_value() && member; }
};

struct ReverseOutcome {
  bool member = false;
  bool solvable = false;
  MultiVector b;

  bool pass() const { return member && solvable; }
};

/// Precomputed pieces shared by all correspondence trials for one (y, D, N).
/// Products μ(b_i.b_j) of the im Aᵗ basis are kept in μ(im.im) coordinates so
/// per-hyperplane work stays in dimension dim μ(im.im).
struct CorrespondenceFrame {
  MultiMatrix a;
  Subspace image;     // im Aᵗ
  Subspace mu_full;   // μ(im Aᵗ.im Aᵗ)
  Mat frame;          // see quadratic_frame
  PreparedSolve frame_solver;
  Subspace orbit;     // Ug(yy)
  std::vector<std::vector<Vec>> products;

  CorrespondenceFrame(const SquareRep& sq, std::span<const Scalar> y, MultiMatrix a_)
      : a(std::move(a_)) {
    const Box& box = std::get<Box>(a.cols);
    image = image_of_transpose(a);
    auto basis = image.basis_vectors();
    std::vector<std::vector<Vec>> raw(basis.size());
    EchelonBuilder img(box.doubled().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        raw[i].push_back(j < i ? raw[j][i] : mu(MultiVector(box, basis[i]), MultiVector(box, basis[j])).data);
        img.insert(raw[i][j]);
      }
    mu_full = img.subspace();
    products.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (const auto& p : raw[i]) products[i].push_back(*mu_full.coordinates(p));
    frame = quadratic_frame(a);
    frame_solver = PreparedSolve(frame);
    orbit = orbit_module(sq, y);
  }

  const Box& box() const { return std::get<Box>(a.cols); }

  /// μ(u.w) in μ(im.im) coordinates, for u, w given in im Aᵗ coordinates.
  Vec product(const Vec& u, const Vec& w) const {
    Vec out = zero_vec(mu_full.dim());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (is_zero(u[i])) continue;
      for (std::size_t j = 0; j < w.size(); ++j)
        if (!is_zero(w[j])) axpy(u[i] * w[j], products[i][j], out);
    }
    return out;
  }

  /// μ(W.im Aᵗ) in μ(im.im) coordinates.
  Subspace partial(const Subspace& w) const {
    if (w.ambient_dim() != box().size() || !image.contains(w) || w.dim() + 1 != image.dim())
      throw Error("hyperplane_check: W is not a hyperplane of im Aᵗ");
    EchelonBuilder out(mu_full.dim());
    for (const auto& v : w.basis_vectors()) {
      Vec c = *image.coordinates(v);
      for (std::size_t j = 0; j < image.dim(); ++j) out.insert(product(c, unit_vec(image.dim(), j)));
    }
    return out.subspace();
  }

  HyperplaneResult hyperplane(const Subspace& w) const {
    HyperplaneResult r;
    r.codim = mu_full.dim() - partial(w).dim();
    r.kind = r.codim == 1 ? HyperplaneKind::hyperplane : r.codim == 0 ? HyperplaneKind::full : HyperplaneKind::smaller;
    return r;
  }
};

/// Functional on μ(im.im) with kernel μ(W.im) and value 1 at μ(v.v), extended
/// by zero off the pivot columns of μ(im.im), then pushed through φ_A.
inline ForwardOutcome rank1_forward(const CorrespondenceFrame& cf, const Subspace& w, std::span<const Scalar> v) {
  if (!cf.image.contains(v) || w.contains(v)) throw Error("rank1_forward: v must lie in im Aᵗ but not in W");
  Subspace part = cf.partial(w);
  if (part.dim() + 1 != cf.mu_full.dim())
    throw Error("rank1_forward: μ(W.im Aᵗ) is not a hyperplane of μ(im Aᵗ.im Aᵗ)");
  const Box dbl = cf.box().doubled();
  Vec cv = *cf.image.coordinates(v);

  // unknowns: values c_k on the RREF basis of μ(im.im)
  const std::size_t m = cf.mu_full.dim();
  std::vector<Vec> rows = part.basis_vectors();
  Vec rhs(rows.size(), Scalar(0));
  rows.push_back(cf.product(cv, cv));
  rhs.push_back(1);
  auto c = solve(Mat::from_rows(rows, m), rhs);

  ForwardOutcome out;
  out.b = MultiVector(dbl);
  if (!c) {
    out.note = "no functional with the prescribed kernel and normalisation";
    return out;
  }
  for (std::size_t k = 0; k < m; ++k) out.b.data[cf.mu_full.pivots()[k]] = (*c)[k];

  Vec img = cf.frame.apply(out.b.data);
  out.image = sym_matrix(img, cf.a.data.rows());
  out.rank = rank(out.image);
  out.rank_ok = out.rank <= 1;
  auto f = rank1_factor(out.image);
  if (f.status == Rank1Status::zero) {
    out.note = "rank 0: phi_A(B) vanishes";
    return out;
  }
  if (f.status != Rank1Status::ok) {
    out.note = "phi_A(B) is not rank one";
    return out;
  }
  out.factor = f.u;
  out.member = in_orbit_span(cf.orbit, f.u);
  return out;
}

/// Solves φ_A(B) = x xᵗ for b; x is expected to lie in M_y.
inline ReverseOutcome rank1_reverse(const CorrespondenceFrame& cf, std::span<const Scalar> x) {
  ReverseOutcome out;
  out.member = in_orbit_span(cf.orbit, x);
  auto b = cf.frame_solver.solve(sym_square_coords(x));
  out.b = MultiVector(cf.box().doubled());
  if (b) {
    out.solvable = true;
    out.b.data = std::move(*b);
  }
  return out;
}

}  // namespace orbitquad

#endif  // ORBITQUAD_ORBIT_HPP
