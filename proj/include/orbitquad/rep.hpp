#ifndef ORBITQUAD_REP_HPP
#define ORBITQUAD_REP_HPP

// Finite-dimensional sl(n)-modules built functorially from the standard
// representation, with weight spaces, cyclic submodules and isotypic parts.

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orbitquad/lie.hpp"
#include "orbitquad/linalg.hpp"

namespace orbitquad {

struct UnsupportedError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Construction expressions

struct RepExpr {
  enum class Kind { standard, dual, wedge, sym, tensor, sym2 };
  Kind kind = Kind::standard;
  int k = 0;
  std::vector<std::shared_ptr<const RepExpr>> args;

  std::string str() const {
    switch (kind) {
      case Kind::standard: return "std";
      case Kind::dual: return "dual(" + args[0]->str() + ")";
      case Kind::wedge: return "wedge(" + std::to_string(k) + "," + args[0]->str() + ")";
      case Kind::sym: return "sym(" + std::to_string(k) + "," + args[0]->str() + ")";
      case Kind::tensor: return "tensor(" + args[0]->str() + "," + args[1]->str() + ")";
      case Kind::sym2: return "sym2(" + args[0]->str() + ")";
    }
    return {};
  }
};

using RepExprPtr = std::shared_ptr<const RepExpr>;

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string text) : text_(std::move(text)) {
    text_.erase(std::remove_if(text_.begin(), text_.end(), [](unsigned char c) { return std::isspace(c); }),
                text_.end());
  }

  RepExprPtr parse() {
    auto e = expr();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UnsupportedError("unknown rep expression '" + text_ + "': " + why + " at offset " + std::to_string(pos_));
  }

  bool eat(const std::string& tok) {
    if (text_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 6) fail("expected a small integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  RepExprPtr expr() {
    auto e = std::make_shared<RepExpr>();
    if (eat("std")) {
      e->kind = RepExpr::Kind::standard;
    } else if (eat("dual(")) {
      e->kind = RepExpr::Kind::dual;
      e->args.push_back(expr());
      expect(')');
    } else if (eat("wedge(") || eat("sym(")) {
      e->kind = text_[pos_ - 2] == 'e' ? RepExpr::Kind::wedge : RepExpr::Kind::sym;
      e->k = integer();
      expect(',');
      e->args.push_back(expr());
      expect(')');
    } else if (eat("tensor(")) {
      e->kind = RepExpr::Kind::tensor;
      e->args.push_back(expr());
      expect(',');
      e->args.push_back(expr());
      expect(')');
    } else if (eat("sym2(")) {
      e->kind = RepExpr::Kind::sym2;
      e->args.push_back(expr());
      expect(')');
    } else {
      fail("unknown constructor");
    }
    return e;
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Grammar: std | dual(E) | wedge(k,E) | sym(k,E) | tensor(E,E) | sym2(E).
inline RepExprPtr parse_rep_expr(const std::string& text) { return detail::ExprParser(text).parse(); }

// ---------------------------------------------------------------------------
// Symmetric-matrix coordinates for S²: upper triangle (a <= b), row-major.

inline std::size_t sym_dim(std::size_t m) { return m * (m + 1) / 2; }

inline std::size_t sym_index(std::size_t m, std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return a * m - a * (a - 1) / 2 + (b - a);
}

inline Vec sym_coords(const Mat& s) {
  const std::size_t m = s.rows();
  Vec v(sym_dim(m));
  std::size_t k = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) v[k++] = s(a, b);
  return v;
}

inline Mat sym_matrix(std::span<const Scalar> v, std::size_t m) {
  if (v.size() != sym_dim(m)) throw ShapeError("sym_matrix: coordinate length mismatch");
  Mat s(m, m);
  std::size_t k = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      s(a, b) = v[k];
      s(b, a) = v[k];
      ++k;
    }
  return s;
}

/// Coordinates of the symmetric product u·w = (u wᵗ + w uᵗ)/2.
inline Vec sym_product(std::span<const Scalar> u, std::span<const Scalar> w) {
  if (u.size() != w.size()) throw ShapeError("sym_product: length mismatch");
  const std::size_t m = u.size();
  Vec v = zero_vec(sym_dim(m));
  std::size_t k = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b, ++k) {
      if (a == b) {
        if (!is_zero(u[a]) && !is_zero(w[a])) v[k] = u[a] * w[a];
      } else {
        Scalar s = 0;
        if (!is_zero(u[a]) && !is_zero(w[b])) s += u[a] * w[b];
        if (!is_zero(u[b]) && !is_zero(w[a])) s += u[b] * w[a];
        if (!is_zero(s)) v[k] = s / 2;
      }
    }
  return v;
}

// ---------------------------------------------------------------------------

class Rep {
 public:
  Rep(std::shared_ptr<const LieAlg> alg, RepExprPtr expr, std::vector<Mat> action)
      : alg_(std::move(alg)), expr_(std::move(expr)), action_(std::move(action)) {
    dim_ = action_.empty() ? 0 : action_.front().rows();
  }

  const LieAlg& algebra() const { return *alg_; }
  std::shared_ptr<const LieAlg> algebra_ptr() const { return alg_; }
  std::size_t dim() const { return dim_; }
  std::string label() const { return expr_->str(); }
  const RepExpr& expr() const { return *expr_; }
  RepExprPtr expr_ptr() const { return expr_; }

  const Mat& action(const GenSym& s) const { return action_[alg_->index_of(s)]; }
  const Mat& action(std::size_t catalog_index) const { return action_[catalog_index]; }
  const std::vector<Mat>& actions() const { return action_; }

  /// ρ(e) for an arbitrary traceless matrix e.
  Mat act(const Mat& element) const {
    Vec c = alg_->coordinates(element);
    Mat out(dim_, dim_);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (!is_zero(c[k])) out += c[k] * action_[k];
    return out;
  }

 private:
  std::shared_ptr<const LieAlg> alg_;
  RepExprPtr expr_;
  std::vector<Mat> action_;
  std::size_t dim_ = 0;
};

/// Throws if some catalog pair violates ρ([a,b]) = [ρ(a), ρ(b)].
inline void check_homomorphism(const Rep& r) {
  const auto& g = r.algebra();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      Mat lhs = r.act(bracket(g.catalog()[i], g.catalog()[j]));
      Mat rhs = r.action(i) * r.action(j) - r.action(j) * r.action(i);
      if (!(lhs == rhs))
        throw Error("representation " + r.label() + " is not a Lie homomorphism on (" + g.symbols()[i].str() +
                    ", " + g.symbols()[j].str() + ")");
    }
}

inline Rep standard_rep(std::shared_ptr<const LieAlg> g) {
  auto e = std::make_shared<RepExpr>();
  e->kind = RepExpr::Kind::standard;
  return Rep(g, e, g->catalog());
}

inline Rep standard_rep(const LieAlg& g) { return standard_rep(std::make_shared<const LieAlg>(g)); }

namespace detail {

// Sorted index tuples (strict for wedge, weak for sym) in lexicographic order.
inline std::vector<std::vector<int>> tuples(int m, int k, bool strict) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int a = start; a < m; ++a) {
      cur.push_back(a);
      self(self, strict ? a + 1 : a);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline Mat power_action(const Mat& rho, int k, bool strict) {
  const int m = static_cast<int>(rho.rows());
  auto basis = tuples(m, k, strict);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t t = 0; t < basis.size(); ++t) index[basis[t]] = t;
  Mat out(basis.size(), basis.size());
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const auto& tup = basis[t];
    for (int s = 0; s < k; ++s)
      for (int c = 0; c < m; ++c) {
        const Scalar& coef = rho(c, tup[s]);
        if (is_zero(coef)) continue;
        std::vector<int> img = tup;
        img[s] = c;
        int sign = 1;
        if (strict) {
          if (std::count(img.begin(), img.end(), c) > 1) continue;
          // insertion sort, counting transpositions
          for (std::size_t p = 1; p < img.size(); ++p)
            for (std::size_t q = p; q > 0 && img[q - 1] > img[q]; --q) {
              std::swap(img[q - 1], img[q]);
              sign = -sign;
            }
        } else {
          std::sort(img.begin(), img.end());
        }
        out(index.at(img), t) += sign * coef;
      }
  }
  return out;
}

inline Mat sym2_action(const Mat& rho) {
  const std::size_t m = rho.rows();
  Mat out(sym_dim(m), sym_dim(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      // M = E_ab + E_ba (a != b) or E_aa; image ρM + Mρᵗ
      Mat img(m, m);
      auto add_unit = [&](std::size_t p, std::size_t q) {
        for (std::size_t i = 0; i < m; ++i)
          if (!is_zero(rho(i, p))) img(i, q) += rho(i, p);
        for (std::size_t j = 0; j < m; ++j)
          if (!is_zero(rho(j, q))) img(p, j) += rho(j, q);
      };
      add_unit(a, b);
      if (a != b) add_unit(b, a);
      Vec c = sym_coords(img);
      std::size_t col = sym_index(m, a, b);
      for (std::size_t r = 0; r < c.size(); ++r)
        if (!is_zero(c[r])) out(r, col) = c[r];
    }
  return out;
}

inline Mat kron_sum(const Mat& a, const Mat& b) {
  const std::size_t p = a.rows(), q = b.rows();
  Mat out(p * q, p * q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k)
      if (!is_zero(a(i, k)))
        for (std::size_t j = 0; j < q; ++j) out(i * q + j, k * q + j) += a(i, k);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t l = 0; l < q; ++l)
        if (!is_zero(b(j, l))) out(i * q + j, i * q + l) += b(j, l);
  return out;
}

}  // namespace detail

struct DerivedKind {
  RepExpr::Kind kind = RepExpr::Kind::dual;
  int k = 0;
  const Rep* other = nullptr;  // tensor only

  static DerivedKind dual() { return {RepExpr::Kind::dual, 0, nullptr}; }
  static DerivedKind wedge(int k) { return {RepExpr::Kind::wedge, k, nullptr}; }
  static DerivedKind sym(int k) { return {RepExpr::Kind::sym, k, nullptr}; }
  static DerivedKind sym2() { return {RepExpr::Kind::sym2, 0, nullptr}; }
  static DerivedKind tensor(const Rep& o) { return {RepExpr::Kind::tensor, 0, &o}; }
};

/// New module from r by the derivation rule; the homomorphism law is re-checked.
inline Rep derived_rep(const Rep& r, const DerivedKind& how) {
  auto e = std::make_shared<RepExpr>();
  e->kind = how.kind;
  e->k = how.k;
  e->args.push_back(r.expr_ptr());
  std::vector<Mat> act;
  const int l = static_cast<int>(r.dim());
  switch (how.kind) {
    case RepExpr::Kind::dual:
      for (const auto& a : r.actions()) act.push_back(Scalar(-1) * a.transpose());
      break;
    case RepExpr::Kind::wedge:
      if (how.k < 1 || how.k > l) throw Error("wedge degree out of range");
      for (const auto& a : r.actions()) act.push_back(detail::power_action(a, how.k, true));
      break;
    case RepExpr::Kind::sym:
      if (how.k < 1) throw Error("symmetric power degree must be >= 1");
      for (const auto& a : r.actions()) act.push_back(detail::power_action(a, how.k, false));
      break;
    case RepExpr::Kind::sym2:
      for (const auto& a : r.actions()) act.push_back(detail::sym2_action(a));
      break;
    case RepExpr::Kind::tensor:
      if (how.other == nullptr) throw Error("tensor: missing second factor");
      if (how.other->algebra().n() != r.algebra().n()) throw Error("tensor: factors over different algebras");
      e->args.push_back(how.other->expr_ptr());
      for (std::size_t k = 0; k < r.actions().size(); ++k)
        act.push_back(detail::kron_sum(r.action(k), how.other->action(k)));
      break;
    case RepExpr::Kind::standard:
      throw Error("derived_rep: 'std' is not a derived construction");
  }
  Rep out(r.algebra_ptr(), e, std::move(act));
  check_homomorphism(out);
  return out;
}

inline Rep build_rep(std::shared_ptr<const LieAlg> g, const RepExpr& e) {
  switch (e.kind) {
    case RepExpr::Kind::standard: return standard_rep(g);
    case RepExpr::Kind::tensor: {
      Rep a = build_rep(g, *e.args[0]);
      Rep b = build_rep(g, *e.args[1]);
      return derived_rep(a, DerivedKind::tensor(b));
    }
    default: {
      Rep a = build_rep(g, *e.args[0]);
      return derived_rep(a, DerivedKind{e.kind, e.k, nullptr});
    }
  }
}

inline Rep build_rep(std::shared_ptr<const LieAlg> g, const std::string& expr) {
  return build_rep(std::move(g), *parse_rep_expr(expr));
}

/// Applies word (D1,...,Dm) as D1(D2(...Dm(v))).
inline Vec act_word(const Rep& r, const Word& word, std::span<const Scalar> v) {
  if (v.size() != r.dim()) throw ShapeError("act_word: vector length mismatch");
  Vec out(v.begin(), v.end());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = r.action(*it).apply(out);
  return out;
}

// ---------------------------------------------------------------------------
// Weights

struct Weight {
  Vec coords;
  friend bool operator==(const Weight&, const Weight&) = default;
  friend bool operator<(const Weight& a, const Weight& b) { return a.coords < b.coords; }
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + to_string(coords[i]);
    return s + ")";
  }
};

struct WeightSpace {
  Weight weight;
  Subspace space;
};

/// Joint eigenspaces of the simple H actions, weights in decreasing lex order.
inline std::vector<WeightSpace> weight_decomposition(const Rep& r) {
  const auto& g = r.algebra();
  const std::size_t l = r.dim();
  std::vector<const Mat*> hs;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.symbols()[k].kind == GenSym::Kind::H) hs.push_back(&r.action(k));

  bool diagonal = true;
  for (const Mat* h : hs)
    for (std::size_t i = 0; i < l && diagonal; ++i)
      for (std::size_t j = 0; j < l; ++j)
        if (i != j && !is_zero((*h)(i, j))) {
          diagonal = false;
          break;
        }

  std::map<Weight, Subspace> spaces;
  if (diagonal) {
    std::map<Weight, std::vector<Vec>> rows;
    for (std::size_t i = 0; i < l; ++i) {
      Weight w;
      for (const Mat* h : hs) w.coords.push_back((*h)(i, i));
      rows[w].push_back(unit_vec(l, i));
    }
    for (auto& [w, rs] : rows) spaces.emplace(w, Subspace::span(rs, l));
  } else {
    // General path: eigenvalues of H actions on constructed modules are integers
    // bounded by the maximal absolute row sum.
    std::vector<WeightSpace> current{{Weight{}, Subspace::full(l)}};
    for (const Mat* h : hs) {
      Scalar bound = 0;
      for (std::size_t i = 0; i < l; ++i) {
        Scalar s = 0;
        for (std::size_t j = 0; j < l; ++j) s += abs((*h)(i, j));
        if (s > bound) bound = s;
      }
      mpz_class ceil_bound = (bound.get_num() + bound.get_den() - 1) / bound.get_den();
      long b = ceil_bound.get_si();
      std::vector<WeightSpace> next;
      for (const auto& ws : current) {
        std::size_t found = 0;
        for (long lambda = -b; lambda <= b; ++lambda) {
          Mat shifted = *h - Scalar(lambda) * Mat::identity(l);
          Subspace eig = subspace_combine(ws.space, kernel(shifted), CombineMode::intersect);
          if (eig.dim() == 0) continue;
          found += eig.dim();
          Weight w = ws.weight;
          w.coords.push_back(Scalar(lambda));
          next.push_back({w, eig});
        }
        if (found != ws.space.dim())
          throw Error("weight_decomposition: H action is not diagonalizable over the integers");
      }
      current = std::move(next);
    }
    for (auto& ws : current) spaces.emplace(ws.weight, ws.space);
  }
  std::vector<WeightSpace> out;
  for (auto it = spaces.rbegin(); it != spaces.rend(); ++it) out.push_back({it->first, it->second});
  return out;
}

/// Per weight, the vectors of that weight killed by every X_β.
inline std::vector<WeightSpace> highest_weight_vectors(const Rep& r) {
  std::vector<WeightSpace> out;
  if (r.dim() == 0) return out;
  const auto& g = r.algebra();
  for (const auto& ws : weight_decomposition(r)) {
    const auto basis = ws.space.basis_vectors();
    std::vector<Vec> conditions;  // rows: coefficient constraints
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.symbols()[k].kind != GenSym::Kind::X) continue;
      std::vector<Vec> images;
      for (const auto& b : basis) images.push_back(r.action(k).apply(b));
      for (std::size_t row = 0; row < r.dim(); ++row) {
        Vec c(basis.size());
        for (std::size_t t = 0; t < basis.size(); ++t) c[t] = images[t][row];
        if (!is_zero(c)) conditions.push_back(std::move(c));
      }
    }
    Subspace coeffs = conditions.empty() ? Subspace::full(basis.size())
                                         : kernel(Mat::from_rows(conditions, basis.size()));
    if (coeffs.dim() == 0) continue;
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < coeffs.dim(); ++i) {
      Vec v = zero_vec(r.dim());
      for (std::size_t t = 0; t < basis.size(); ++t) axpy(coeffs.basis()(i, t), basis[t], v);
      vecs.push_back(std::move(v));
    }
    out.push_back({ws.weight, Subspace::span(vecs, r.dim())});
  }
  return out;
}

/// Closure of a set of seeds under the generator catalog, keeping for each
/// basis vector the word that produced it from its seed.
struct Closure {
  Subspace space;
  std::vector<Vec> vectors;  // spanning vectors in insertion order
  std::vector<Word> words;   // vectors[k] = words[k] applied to seeds[seed_of[k]]
  std::vector<std::size_t> seed_of;
};

inline Closure closure_with_words(const Rep& r, const std::vector<Vec>& seeds) {
  const auto& g = r.algebra();
  EchelonBuilder builder(r.dim());
  Closure out;
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    if (seeds[s].size() != r.dim()) throw ShapeError("cyclic_module: vector length mismatch");
    if (builder.insert(seeds[s])) {
      out.vectors.push_back(seeds[s]);
      out.words.push_back({});
      out.seed_of.push_back(s);
      queue.push_back(out.vectors.size() - 1);
    }
  }
  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < g.size(); ++k) {
      Vec img = r.action(k).apply(out.vectors[idx]);
      if (!builder.insert(img)) continue;
      Word w{g.symbols()[k]};
      w.insert(w.end(), out.words[idx].begin(), out.words[idx].end());
      out.vectors.push_back(std::move(img));
      out.words.push_back(std::move(w));
      out.seed_of.push_back(out.seed_of[idx]);
      queue.push_back(out.vectors.size() - 1);
    }
  }
  out.space = builder.subspace();
  return out;
}

/// Smallest action-invariant subspace containing w.
inline Subspace cyclic_module(const Rep& r, std::span<const Scalar> w) {
  return closure_with_words(r, {Vec(w.begin(), w.end())}).space;
}

struct IsotypicComponent {
  Weight highest_weight;
  std::size_t multiplicity = 0;
  Subspace space;
  std::vector<Vec> highest_vectors;
};

struct IsotypicDecomposition {
  std::vector<IsotypicComponent> components;
  bool multiplicity_free = true;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& c : components) d.push_back(c.space.dim());
    return d;
  }
};

inline IsotypicDecomposition isotypic_decomposition(const Rep& r) {
  IsotypicDecomposition out;
  EchelonBuilder total(r.dim());
  std::size_t dim_sum = 0;
  for (const auto& hw : highest_weight_vectors(r)) {
    IsotypicComponent c;
    c.highest_weight = hw.weight;
    c.multiplicity = hw.space.dim();
    c.highest_vectors = hw.space.basis_vectors();
    c.space = closure_with_words(r, c.highest_vectors).space;
    for (const auto& v : c.space.basis_vectors()) total.insert(v);
    dim_sum += c.space.dim();
    if (c.multiplicity != 1) out.multiplicity_free = false;
    out.components.push_back(std::move(c));
  }
  if (dim_sum != r.dim() || total.dim() != r.dim())
    throw Error("isotypic_decomposition: components do not exhaust " + r.label() + " (internal error)");
  return out;
}

/// Components of v along each isotypic subspace (they sum to v).
inline std::vector<Vec> isotypic_projections(const IsotypicDecomposition& d, std::span<const Scalar> v) {
  std::vector<Vec> rows;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < d.components.size(); ++i)
    for (const auto& b : d.components[i].space.basis_vectors()) {
      rows.push_back(b);
      owner.push_back(i);
    }
  const std::size_t l = v.size();
  auto coeffs = solve(Mat::from_rows(rows, l).transpose(), v);
  if (!coeffs) throw Error("isotypic_projections: vector outside the module");
  std::vector<Vec> out(d.components.size(), zero_vec(l));
  for (std::size_t t = 0; t < rows.size(); ++t) axpy((*coeffs)[t], rows[t], out[owner[t]]);
  return out;
}

/// exp(t ρ(D)) for nilpotent D, as an exact finite sum.
inline Mat exp_nilpotent(const Rep& r, const GenSym& s, const Scalar& t) {
  if (!s.nilpotent()) throw Error("exp_nilpotent: " + s.str() + " is not nilpotent");
  const Mat& d = r.action(s);
  const std::size_t l = r.dim();
  Mat out = Mat::identity(l);
  Mat term = Mat::identity(l);
  for (std::size_t k = 1; k <= l + 1; ++k) {
    term = term * d;
    if (term.is_zero()) return out;
    term *= t / Scalar(static_cast<long>(k));
    out += term;
  }
  throw Error("exp_nilpotent: action of " + s.str() + " is not nilpotent");
}

}  // namespace orbitquad

#endif  // ORBITQUAD_REP_HPP
