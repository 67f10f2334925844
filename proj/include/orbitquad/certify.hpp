#ifndef ORBITQUAD_CERTIFY_HPP
#define ORBITQUAD_CERTIFY_HPP

// End-to-end evidence run for one (V, y): every identity of the catalecticant
// description is checked exactly on seeded samples.

#include <cstdint>
#include <string>
#include <vector>

#include "orbitquad/orbit.hpp"
#include "orbitquad/rng.hpp"

namespace orbitquad {

enum class Verdict { consistent, discrepancy, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::discrepancy: return "discrepancy";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "";
}

struct TrialRecord {
  std::string stage;     // leibniz, decompose, hyperplane, forward, reverse
  std::size_t index = 0;
  bool pass = true;
  std::string detail;
  std::vector<Vec> witness;
};

struct CertReport {
  std::size_t dim_v = 0;
  std::size_t dim_s2 = 0;
  std::size_t dim_orbit = 0;
  std::size_t dim_ideal = 0;
  std::vector<int> box;
  std::vector<std::string> sequence;
  std::size_t rank_A = 0;
  std::size_t dim_im_At = 0;
  std::size_t dim_mu_span = 0;

  std::size_t leibniz_checked = 0, leibniz_passes = 0;
  std::size_t decompose_trials = 0, decompose_passes = 0;
  std::size_t hyperplane_trials = 0, hyperplane_good = 0, hyperplane_bad = 0, hyperplane_smaller = 0;
  std::size_t forward_trials = 0, forward_passes = 0, forward_skipped = 0;
  std::size_t reverse_trials = 0, reverse_passes = 0;
  std::size_t rank_zero_events = 0;

  Verdict verdict = Verdict::consistent;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::string> notes;
  std::vector<TrialRecord> records;
};

namespace detail {

/// W = kernel of the functional with coefficients c on the RREF basis of `im`;
/// v = a basis vector where c does not vanish.
inline std::pair<Subspace, Vec> hyperplane_from_functional(const Subspace& im, const Vec& c) {
  auto basis = im.basis_vectors();
  Subspace coeffs = kernel(Mat::from_rows({c}, c.size()));
  std::vector<Vec> rows;
  for (const auto& k : coeffs.basis_vectors()) {
    Vec w = zero_vec(im.ambient_dim());
    for (std::size_t t = 0; t < basis.size(); ++t) axpy(k[t], basis[t], w);
    rows.push_back(std::move(w));
  }
  std::size_t lead = 0;
  while (is_zero(c[lead])) ++lead;
  return {Subspace::span(rows, im.ambient_dim()), basis[lead]};
}

/// Values of the monomials t^i, i in the box.
inline Vec evaluation_functional(const Box& box, const Vec& t) {
  Vec e(box.size());
  const auto& idx = box.indices();
  for (std::size_t p = 0; p < idx.size(); ++p) {
    Scalar v = 1;
    for (std::size_t k = 0; k < t.size(); ++k)
      for (int j = 0; j < idx[p][k]; ++j) v *= t[k];
    e[p] = v;
  }
  return e;
}

inline Word random_word(const LieAlg& g, Rng& rng, std::size_t max_len) {
  Word w;
  auto len = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(max_len)));
  for (std::size_t k = 0; k < len; ++k)
    w.push_back(g.symbols()[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(g.size()) - 1))]);
  return w;
}

}  // namespace detail

/// Product of 1..4 exponentials exp(t D) with D nilpotent and t in {±1, ±2}, applied to y.
inline Vec orbit_sample(const Rep& r, std::span<const Scalar> y, Rng& rng) {
  const auto& g = r.algebra();
  std::vector<GenSym> nil;
  for (const auto& s : g.symbols())
    if (s.nilpotent()) nil.push_back(s);
  Vec x(y.begin(), y.end());
  auto factors = rng.integer(1, 4);
  for (std::int64_t k = 0; k < factors; ++k) {
    const auto& s = nil[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(nil.size()) - 1))];
    Scalar t(static_cast<long>(rng.nonzero_integer(2)));
    x = exp_nilpotent(r, s, t).apply(x);
  }
  return x;
}

/// Runs the full pipeline. CapExceeded from the sequence search propagates.
inline CertReport certify_irreducibility(const Rep& r, std::span<const Scalar> y, std::size_t trials,
                                         std::uint64_t seed, const Limits& limits = Limits::from_env()) {
  require_length(r, y, "certify_irreducibility");
  require_nonzero(y, "certify_irreducibility");
  CertReport rep;
  rep.seed = seed;
  rep.trials = trials;
  SquareRep sq = square_of(r);
  rep.dim_v = r.dim();
  rep.dim_s2 = sq.square.dim();

  GenSeq gs = generator_sequence(sq, y, limits);
  for (const auto& s : gs.symbols) rep.sequence.push_back(s.str());
  rep.box = gs.box.bounds();
  CorrespondenceFrame cf(sq, y, build_A(r, y, gs));
  rep.dim_orbit = cf.orbit.dim();
  rep.dim_ideal = rep.dim_s2 - rep.dim_orbit;
  rep.rank_A = rank(cf.a.data);
  rep.dim_im_At = cf.image.dim();
  rep.dim_mu_span = cf.mu_full.dim();
  if (rep.dim_ideal == 0) rep.notes.push_back("Ug(yy) = S^2(V): no quadrics, M_y is all of P(V)");

  Rng rng(seed);
  auto fail = [&](TrialRecord rec) {
    rec.pass = false;
    rep.verdict = Verdict::discrepancy;
    rep.records.push_back(std::move(rec));
  };

  // Leibniz identity on 2N, exhaustively on small boxes.
  const Box dbl = gs.box.doubled();
  std::vector<MultiIndex> ns;
  if (dbl.size() <= 729) {
    ns = dbl.indices();
  } else {
    for (int k = 0; k < 64; ++k) ns.push_back(dbl.indices()[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(dbl.size()) - 1))]);
    rep.notes.push_back("leibniz: 64 sampled multi-indices out of " + std::to_string(dbl.size()));
  }
  for (std::size_t k = 0; k < ns.size(); ++k) {
    ++rep.leibniz_checked;
    if (leibniz_check(sq, y, gs, ns[k])) {
      ++rep.leibniz_passes;
    } else {
      Vec n(ns[k].begin(), ns[k].end());
      fail({"leibniz", k, false, "D^n(yy)/n! differs from the product expansion", {n}});
    }
  }

  // Q(yy) as a catalecticant combination.
  for (std::size_t k = 0; k < trials; ++k) {
    ++rep.decompose_trials;
    Word q = detail::random_word(r.algebra(), rng, 4);
    Vec target = act_word(sq.square, q, sym_square_coords(y));
    auto b = cf.frame_solver.solve(target);
    if (b && cf.frame.apply(*b) == target) {
      ++rep.decompose_passes;
    } else {
      fail({"decompose", k, false, "no catalecticant b for Q = " + word_str(q), {target}});
    }
  }

  // Hyperplane property of μ(W.im Aᵗ) for random W.
  const std::size_t d = cf.image.dim();
  if (d >= 1) {
    for (std::size_t k = 0; k < trials; ++k) {
      Vec c;
      do c = rng.integer_vector(d, 3);
      while (is_zero(c));
      auto [w, v] = detail::hyperplane_from_functional(cf.image, c);
      ++rep.hyperplane_trials;
      auto h = cf.hyperplane(w);
      if (h.kind == HyperplaneKind::hyperplane) ++rep.hyperplane_good;
      else if (h.kind == HyperplaneKind::full) ++rep.hyperplane_bad;
      else ++rep.hyperplane_smaller;
      rep.records.push_back({"hyperplane", k, true, std::string(to_string(h.kind)) + ", codim " + std::to_string(h.codim), {c}});
    }
  }

  // Forward: evaluation hyperplanes W_t = {f in im Aᵗ : f(t) = 0}.
  if (d >= 1) {
    std::size_t attempts = 0;
    while (rep.forward_trials < trials && attempts < 4 * trials) {
      ++attempts;
      Vec t;
      for (std::size_t k = 0; k < gs.box.axes(); ++k) t.push_back(rng.nonzero_rational(3, 2));
      Vec e = detail::evaluation_functional(gs.box, t);
      Vec c(d);
      for (std::size_t k = 0; k < d; ++k) c[k] = dot(cf.image.basis().row(k), e);
      if (is_zero(c)) {
        ++rep.forward_skipped;
        continue;
      }
      auto [w, v] = detail::hyperplane_from_functional(cf.image, c);
      if (cf.hyperplane(w).kind != HyperplaneKind::hyperplane) {
        ++rep.forward_skipped;
        continue;
      }
      std::size_t k = rep.forward_trials++;
      ForwardOutcome f = rank1_forward(cf, w, v);
      if (f.rank == 0) ++rep.rank_zero_events;
      if (f.pass()) {
        ++rep.forward_passes;
        rep.records.push_back({"forward", k, true, "rank " + std::to_string(f.rank), {t, *f.factor}});
      } else {
        std::vector<Vec> wit{t, f.b.data};
        if (f.factor) wit.push_back(*f.factor);
        fail({"forward", k, false, f.note.empty() ? "factor fails M_y membership" : f.note, wit});
      }
    }
    if (rep.forward_trials < trials) {
      rep.notes.push_back("forward: only " + std::to_string(rep.forward_trials) + " usable hyperplanes");
      if (rep.verdict == Verdict::consistent) rep.verdict = Verdict::inconclusive;
    }
  }

  // Reverse: orbit points have catalecticant preimages.
  for (std::size_t k = 0; k < trials; ++k) {
    ++rep.reverse_trials;
    Vec x = orbit_sample(r, y, rng);
    ReverseOutcome o = rank1_reverse(cf, x);
    if (o.pass()) {
      ++rep.reverse_passes;
      rep.records.push_back({"reverse", k, true, "", {x, o.b.data}});
    } else {
      fail({"reverse", k, false, o.member ? "no catalecticant preimage" : "orbit point fails M_y membership", {x}});
    }
  }
  return rep;
}

}  // namespace orbitquad

#endif  // ORBITQUAD_CERTIFY_HPP
