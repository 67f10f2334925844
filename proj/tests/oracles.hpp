#ifndef ORBITQUAD_TESTS_ORACLES_HPP
#define ORBITQUAD_TESTS_ORACLES_HPP

// Reference computations that share no code with the library: weight
// multisets are built combinatorially from the expression tree and irreducible
// characters come from semistandard tableaux.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "orbitquad/rep.hpp"

namespace oracle {

using IntWeight = std::vector<int>;

// Dynkin labels of ε_i: H_k ε_i = δ_{ik} - δ_{i,k+1}.
inline IntWeight epsilon(int n, int i) {
  IntWeight w(n - 1, 0);
  if (i < n - 1) w[i] += 1;
  if (i > 0) w[i - 1] -= 1;
  return w;
}

inline IntWeight add(const IntWeight& a, const IntWeight& b) {
  IntWeight c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] + b[k];
  return c;
}

// Weight list (with repetition) of a module expression for sl(n).
inline std::vector<IntWeight> weights(const orbitquad::RepExpr& e, int n) {
  using K = orbitquad::RepExpr::Kind;
  switch (e.kind) {
    case K::standard: {
      std::vector<IntWeight> out;
      for (int i = 0; i < n; ++i) out.push_back(epsilon(n, i));
      return out;
    }
    case K::dual: {
      auto out = weights(*e.args[0], n);
      for (auto& w : out)
        for (auto& x : w) x = -x;
      return out;
    }
    case K::tensor: {
      auto a = weights(*e.args[0], n), b = weights(*e.args[1], n);
      std::vector<IntWeight> out;
      for (const auto& u : a)
        for (const auto& v : b) out.push_back(add(u, v));
      return out;
    }
    case K::wedge:
    case K::sym:
    case K::sym2: {
      const bool strict = e.kind == K::wedge;
      const int k = e.kind == K::sym2 ? 2 : e.k;
      auto base = weights(*e.args[0], n);
      std::vector<IntWeight> out;
      std::vector<int> pick;
      std::function<void(int, IntWeight)> rec = [&](int from, IntWeight acc) {
        if (static_cast<int>(pick.size()) == k) {
          out.push_back(acc);
          return;
        }
        for (int t = from; t < static_cast<int>(base.size()); ++t) {
          pick.push_back(t);
          rec(strict ? t + 1 : t, add(acc, base[t]));
          pick.pop_back();
        }
      };
      rec(0, IntWeight(n - 1, 0));
      return out;
    }
  }
  return {};
}

// Weights of the irreducible module with highest weight hw: contents of SSYT
// of the corresponding partition with entries 1..n.
inline std::vector<IntWeight> irreducible_weights(const IntWeight& hw, int n) {
  std::vector<int> shape;
  for (int i = 0; i < n - 1; ++i) {
    int part = 0;
    for (int k = i; k < n - 1; ++k) part += hw[k];
    if (part > 0) shape.push_back(part);
  }
  std::vector<std::vector<int>> tab;
  for (int len : shape) tab.emplace_back(len, 0);
  std::vector<IntWeight> out;
  std::vector<std::pair<int, int>> cells;
  for (std::size_t r = 0; r < shape.size(); ++r)
    for (int c = 0; c < shape[r]; ++c) cells.push_back({static_cast<int>(r), c});
  std::function<void(std::size_t)> fill = [&](std::size_t idx) {
    if (idx == cells.size()) {
      std::vector<int> content(n, 0);
      for (const auto& row : tab)
        for (int x : row) ++content[x - 1];
      IntWeight w(n - 1);
      for (int k = 0; k < n - 1; ++k) w[k] = content[k] - content[k + 1];
      out.push_back(w);
      return;
    }
    auto [r, c] = cells[idx];
    int lo = 1;
    if (c > 0) lo = std::max(lo, tab[r][c - 1]);
    if (r > 0) lo = std::max(lo, tab[r - 1][c] + 1);
    for (int v = lo; v <= n; ++v) {
      tab[r][c] = v;
      fill(idx + 1);
    }
    tab[r][c] = 0;
  };
  fill(0);
  return out;
}

struct Irreducible {
  IntWeight highest;
  int multiplicity = 0;
  int dim = 0;  // of one copy
};

// Peels irreducible characters off the weight multiset, highest first. The
// result is sorted by highest weight in decreasing lexicographic order.
inline std::vector<Irreducible> decompose(const orbitquad::RepExpr& e, int n) {
  std::map<IntWeight, int> mult;
  for (const auto& w : weights(e, n)) ++mult[w];
  auto height = [&](const IntWeight& w) {
    long h = 0;
    for (int k = 0; k < n - 1; ++k) h += static_cast<long>(k + 1) * (n - k - 1) * w[k];
    return h;
  };
  std::map<IntWeight, Irreducible> found;
  while (true) {
    const IntWeight* best = nullptr;
    for (const auto& [w, m] : mult)
      if (m > 0 && (!best || height(w) > height(*best))) best = &w;
    if (!best) break;
    IntWeight hw = *best;
    auto chi = irreducible_weights(hw, n);
    for (const auto& w : chi) --mult[w];
    auto& irr = found[hw];
    irr.highest = hw;
    irr.dim = static_cast<int>(chi.size());
    ++irr.multiplicity;
  }
  for (const auto& [w, m] : mult)
    if (m != 0) throw std::logic_error("oracle: weight multiset is not a sum of characters");
  std::vector<Irreducible> out;
  for (auto it = found.rbegin(); it != found.rend(); ++it) out.push_back(it->second);
  return out;
}

inline std::vector<std::size_t> isotypic_dims(const std::string& expr, int n) {
  std::vector<std::size_t> dims;
  for (const auto& irr : decompose(*orbitquad::parse_rep_expr(expr), n))
    dims.push_back(static_cast<std::size_t>(irr.multiplicity * irr.dim));
  return dims;
}

// Largest family of pairwise incomparable subsets of {0..s-1}, by exhaustive
// branch and bound over the 2^s subsets.
inline std::size_t max_antichain(int s) {
  const int total = 1 << s;
  std::vector<std::uint32_t> chosen;
  std::size_t best = 0;
  auto comparable = [](std::uint32_t a, std::uint32_t b) { return (a & b) == a || (a & b) == b; };
  std::function<void(int)> rec = [&](int next) {
    if (chosen.size() + static_cast<std::size_t>(total - next) <= best) return;
    if (next == total) {
      best = std::max(best, chosen.size());
      return;
    }
    bool ok = true;
    for (auto c : chosen)
      if (comparable(c, static_cast<std::uint32_t>(next))) {
        ok = false;
        break;
      }
    if (ok) {
      chosen.push_back(static_cast<std::uint32_t>(next));
      rec(next + 1);
      chosen.pop_back();
    }
    rec(next + 1);
  };
  rec(0);
  return best;
}

}  // namespace oracle

#endif  // ORBITQUAD_TESTS_ORACLES_HPP
