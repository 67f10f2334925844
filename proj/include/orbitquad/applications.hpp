#ifndef ORBITQUAD_APPLICATIONS_HPP
#define ORBITQUAD_APPLICATIONS_HPP

// Isotypic ideals, generic points, component bounds and the restricted
// chordal varieties of Grassmannians in ∧^k Q^n.

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orbitquad/linalg.hpp"
#include "orbitquad/orbit.hpp"
#include "orbitquad/rep.hpp"
#include "orbitquad/rng.hpp"

namespace orbitquad {

/// Largest antichain in the subsets of an s-set: C(s, floor(s/2)).
inline std::size_t sperner_bound(std::size_t s) {
  if (s == 0) throw Error("sperner_bound: s must be >= 1");
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), s, s / 2);
  if (!c.fits_ulong_p()) throw Error("sperner_bound: value does not fit in a machine word");
  return c.get_ui();
}

/// Grows an invariant subspace one seed at a time.
class InvariantSpan {
 public:
  explicit InvariantSpan(const Rep& r) : rep_(&r), builder_(r.dim()) {}

  /// Returns true when v was not already inside.
  bool absorb(std::span<const Scalar> v) {
    if (!builder_.insert(v)) return false;
    std::deque<Vec> queue{Vec(v.begin(), v.end())};
    while (!queue.empty()) {
      Vec cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& m : rep_->actions()) {
        Vec img = m.apply(cur);
        if (builder_.insert(img)) queue.push_back(std::move(img));
      }
    }
    return true;
  }

  bool contains(std::span<const Scalar> v) const { return builder_.contains(v); }
  std::size_t dim() const { return builder_.dim(); }
  Subspace subspace() const { return builder_.subspace(); }

 private:
  const Rep* rep_;
  EchelonBuilder builder_;
};

/// Weight of v if it is a joint eigenvector of the H actions.
inline std::optional<Weight> weight_of(const Rep& r, std::span<const Scalar> v) {
  if (is_zero(v)) return std::nullopt;
  std::size_t p = 0;
  while (is_zero(v[p])) ++p;
  Weight w;
  const auto& g = r.algebra();
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.symbols()[k].kind != GenSym::Kind::H) continue;
    Vec hv = r.action(k).apply(v);
    Scalar lambda = hv[p] / v[p];
    if (!(hv == lambda * Vec(v.begin(), v.end()))) return std::nullopt;
    w.coords.push_back(lambda);
  }
  return w;
}

struct SumaResult {
  bool holds = false;
  std::size_t cyclic_dim = 0;   // dim Ug(p_1 + ... + p_k)
  std::size_t summed_dim = 0;   // Σ dim Ug(p_i)
};

/// Checks Ug(p_1 + ... + p_k) = ⊕ Ug(p_i) for highest weight vectors of
/// pairwise distinct weights.
inline SumaResult lemma_suma_check(const Rep& r, const std::vector<Vec>& selection) {
  if (selection.empty()) throw Error("lemma_suma_check: empty selection");
  const auto& g = r.algebra();
  std::vector<Weight> seen;
  Vec total = zero_vec(r.dim());
  SumaResult out;
  for (const auto& p : selection) {
    require_length(r, p, "lemma_suma_check");
    auto w = weight_of(r, p);
    if (!w) throw Error("lemma_suma_check: selected vector is not a weight vector");
    for (std::size_t k = 0; k < g.size(); ++k)
      if (g.symbols()[k].kind == GenSym::Kind::X && !is_zero(r.action(k).apply(p)))
        throw Error("lemma_suma_check: selected vector is not a highest weight vector");
    if (std::find(seen.begin(), seen.end(), *w) != seen.end())
      throw Error("lemma_suma_check: repeated weight " + w->str());
    seen.push_back(*w);
    out.summed_dim += cyclic_module(r, p).dim();
    total = total + p;
  }
  out.cyclic_dim = cyclic_module(r, total).dim();
  out.holds = out.cyclic_dim == out.summed_dim;
  return out;
}

// ---------------------------------------------------------------------------
// Restricted chordal varieties

struct ChordalSpec {
  int n = 0;
  int k = 0;
  int p = 1;

  /// Dimension of L ∩ M for a generic chord.
  int intersection() const { return std::max(k - 2 * p + 1, 0); }

  void validate() const {
    if (k < 1 || k > n) throw Error("chordal: need 1 <= k <= n");
    if (p < 1) throw Error("chordal: need p >= 1");
    if (2 * k - intersection() > n)
      throw Error("chordal: two k-planes in Q^n cannot meet in dimension " + std::to_string(intersection()));
  }
};

/// Plücker coordinates of the span of `vectors` (rows), k-subsets in lex order.
inline Vec wedge_of(const std::vector<Vec>& vectors, std::size_t n) {
  const int k = static_cast<int>(vectors.size());
  auto subsets = detail::tuples(static_cast<int>(n), k, true);
  Vec out(subsets.size());
  for (std::size_t t = 0; t < subsets.size(); ++t) {
    Mat minor(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) minor(a, b) = vectors[a][subsets[t][b]];
    // determinant by elimination
    Scalar det = 1;
    for (int c = 0; c < k; ++c) {
      int piv = c;
      while (piv < k && is_zero(minor(piv, c))) ++piv;
      if (piv == k) {
        det = 0;
        break;
      }
      if (piv != c) {
        for (int j = 0; j < k; ++j) std::swap(minor(piv, j), minor(c, j));
        det = -det;
      }
      det *= minor(c, c);
      for (int i = c + 1; i < k; ++i) {
        if (is_zero(minor(i, c))) continue;
        Scalar f = minor(i, c) / minor(c, c);
        for (int j = c; j < k; ++j) minor(i, j) -= f * minor(c, j);
      }
    }
    out[t] = det;
  }
  return out;
}

struct ChordalDraw {
  Vec point;
  Scalar lambda;
  Scalar mu;
};

/// λ·∧L + μ·∧M with dim(L ∩ M) exactly spec.intersection().
inline ChordalDraw chordal_draw(const ChordalSpec& spec, Rng& rng) {
  spec.validate();
  const int d = spec.intersection();
  const int total = 2 * spec.k - d;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vec> vs;
    for (int t = 0; t < total; ++t) vs.push_back(rng.integer_vector(spec.n, 3));
    if (rank(Mat::from_rows(vs, spec.n)) != static_cast<std::size_t>(total)) continue;
    std::vector<Vec> l(vs.begin(), vs.begin() + spec.k);
    std::vector<Vec> m(vs.begin(), vs.begin() + d);
    m.insert(m.end(), vs.begin() + spec.k, vs.end());
    ChordalDraw out;
    out.lambda = rng.nonzero_rational(5, 3);
    out.mu = rng.nonzero_rational(5, 3);
    out.point = out.lambda * wedge_of(l, spec.n) + out.mu * wedge_of(m, spec.n);
    return out;
  }
  throw Error("chordal_sample: resample cap exceeded");
}

inline Vec chordal_sample(const ChordalSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return chordal_draw(spec, rng).point;
}

/// Index i of Θ_{2i} ⊆ S²(∧^k Q^n): the component of highest weight
/// ω_{k-2i} + ω_{k+2i} (ω_0 = ω_n = 0).
inline std::optional<int> theta_index(const Weight& hw, int n, int k) {
  for (int i = 0; 2 * i <= k && k + 2 * i <= n; ++i) {
    Vec expect = zero_vec(n - 1);
    auto bump = [&](int j) {
      if (j >= 1 && j <= n - 1) expect[j - 1] += 1;
    };
    bump(k - 2 * i);
    bump(k + 2 * i);
    if (expect == hw.coords) return i;
  }
  return std::nullopt;
}

struct ChordalResult {
  ChordalSpec spec;
  std::size_t dim_v = 0;
  std::size_t dim_s2 = 0;
  std::vector<int> theta;                // Θ index per isotypic component
  std::vector<std::size_t> theta_dims;   // matching dimensions
  std::size_t span_dim = 0;              // dim S_X
  QuadraticIdeal ideal;
  std::size_t samples_used = 0;
  std::size_t budget = 0;
  bool stabilized = false;
  std::optional<int> matched_tail;       // S_X = ⊕_{i < p'} Θ_{2i}
  Subspace span;
};

/// S_X = Σ Ug(xx) over chord samples until one sample adds nothing; the ideal
/// is its annihilator, compared against tails ⊕_{i >= p'} Θ_{2i}.
inline ChordalResult chordal_ideal(const ChordalSpec& spec, std::size_t samples, std::uint64_t seed) {
  spec.validate();
  auto g = std::make_shared<const LieAlg>(make_sl(spec.n));
  Rep wedge = build_rep(g, "wedge(" + std::to_string(spec.k) + ",std)");
  SquareRep sq = square_of(wedge);
  IsotypicDecomposition iso = isotypic_decomposition(sq.square);
  if (!iso.multiplicity_free) throw Error("chordal_ideal: S^2 of the wedge power is not multiplicity-free");

  ChordalResult out;
  out.spec = spec;
  out.dim_v = wedge.dim();
  out.dim_s2 = sq.square.dim();
  for (const auto& c : iso.components) {
    auto idx = theta_index(c.highest_weight, spec.n, spec.k);
    if (!idx) throw Error("chordal_ideal: component of highest weight " + c.highest_weight.str() + " is not a Theta");
    out.theta.push_back(*idx);
    out.theta_dims.push_back(c.space.dim());
  }

  out.budget = samples ? samples : 4 * out.dim_s2;
  Rng rng(seed);
  InvariantSpan span(sq.square);
  for (std::size_t s = 0; s < out.budget; ++s) {
    Vec x = chordal_draw(spec, rng).point;
    ++out.samples_used;
    if (!span.absorb(sym_square_coords(x))) {
      out.stabilized = true;
      break;
    }
  }
  out.span = span.subspace();
  out.span_dim = out.span.dim();
  out.ideal = ideal_of(out.span, out.dim_v);

  int max_theta = 0;
  for (int t : out.theta) max_theta = std::max(max_theta, t + 1);
  for (int head = 0; head <= max_theta; ++head) {
    std::vector<Vec> rows;
    for (std::size_t c = 0; c < iso.components.size(); ++c)
      if (out.theta[c] < head)
        for (const auto& b : iso.components[c].space.basis_vectors()) rows.push_back(b);
    if (Subspace::span(rows, out.dim_s2) == out.span) {
      out.matched_tail = head;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic points and components

struct GenericSearchFailed : Error {
  GenericSearchFailed(const std::string& msg, std::vector<std::size_t> reached_)
      : Error(msg), reached(std::move(reached_)) {}
  std::vector<std::size_t> reached;  // components hit by at least one draw
};

/// Indices of the isotypic components where π_i(xx) != 0.
inline std::vector<std::size_t> nonzero_projections(const IsotypicDecomposition& iso, std::span<const Scalar> x) {
  std::vector<std::size_t> out;
  auto parts = isotypic_projections(iso, sym_square_coords(x));
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!is_zero(parts[i])) out.push_back(i);
  return out;
}

/// First draw y with π_i(yy) != 0 for every target component.
inline Vec generic_vector(const IsotypicDecomposition& iso, const std::function<Vec(Rng&)>& sampler, Rng& rng,
                          const std::vector<std::size_t>& targets, std::size_t max_draws = 64) {
  if (!iso.multiplicity_free) throw Error("generic_vector: decomposition is not multiplicity-free");
  std::set<std::size_t> reached;
  for (std::size_t t = 0; t < max_draws; ++t) {
    Vec y = sampler(rng);
    auto hit = nonzero_projections(iso, y);
    reached.insert(hit.begin(), hit.end());
    bool all = std::all_of(targets.begin(), targets.end(),
                           [&](std::size_t i) { return std::find(hit.begin(), hit.end(), i) != hit.end(); });
    if (all && !is_zero(y)) return y;
  }
  throw GenericSearchFailed("generic_vector: retry cap reached; the sampler never reached every target component",
                            {reached.begin(), reached.end()});
}

struct ComponentReport {
  std::vector<std::vector<std::size_t>> s_sets;   // per point
  std::vector<std::vector<bool>> contained;       // contained[i][j]: M_{x_i} ⊆ M_{x_j}
  std::vector<std::size_t> maximal;               // representatives of maximal classes
  std::size_t free_indices = 0;                   // s = |∪ S_i|
  std::size_t bound = 0;                          // sperner_bound(s)
  bool within_bound = true;
};

/// S_i = components present in Ug(x_i x_i); M_{x_i} ⊆ M_{x_j} iff S_i ⊆ S_j.
inline ComponentReport component_analysis(const SquareRep& sq, const IsotypicDecomposition& iso,
                                           const std::vector<Vec>& points) {
  if (!iso.multiplicity_free) throw Error("component_analysis: decomposition is not multiplicity-free");
  if (points.empty()) throw Error("component_analysis: no points");
  ComponentReport out;
  for (const auto& x : points) {
    require_length(sq.base, x, "component_analysis");
    require_nonzero(x, "component_analysis");
    Subspace u = orbit_module(sq, x);
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < iso.components.size(); ++i)
      if (u.contains(iso.components[i].space)) s.push_back(i);
    out.s_sets.push_back(std::move(s));
  }
  const std::size_t k = points.size();
  auto subset = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  out.contained.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.contained[i][j] = subset(out.s_sets[i], out.s_sets[j]);
  std::set<std::size_t> all;
  for (const auto& s : out.s_sets) all.insert(s.begin(), s.end());
  out.free_indices = all.size();
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < k; ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < k; ++j)
      if (out.contained[i][j] && !out.contained[j][i]) dominated = true;
    if (dominated) continue;
    if (std::find(classes.begin(), classes.end(), out.s_sets[i]) != classes.end()) continue;
    classes.push_back(out.s_sets[i]);
    out.maximal.push_back(i);
  }
  out.bound = out.free_indices ? sperner_bound(out.free_indices) : 1;
  out.within_bound = out.maximal.size() <= out.bound;
  return out;
}

}  // namespace orbitquad

#endif  // ORBITQUAD_APPLICATIONS_HPP
