#ifndef ORBITQUAD_TESTS_SUPPORT_HPP
#define ORBITQUAD_TESTS_SUPPORT_HPP

#include <memory>
#include <string>

#include "orbitquad/rep.hpp"

namespace support {

inline std::shared_ptr<const orbitquad::LieAlg> sl(std::size_t n) {
  return std::make_shared<const orbitquad::LieAlg>(orbitquad::make_sl(n));
}

inline orbitquad::Rep rep(std::size_t n, const std::string& expr) { return orbitquad::build_rep(sl(n), expr); }

inline orbitquad::Vec vec(const std::string& text) { return orbitquad::parse_vector(text); }

// e_a ∧ e_b in the lex-ordered basis of ∧²Q^n (0-based a < b).
inline std::size_t pair_index(std::size_t n, std::size_t a, std::size_t b) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (i == a && j == b) return idx;
      ++idx;
    }
  return idx;
}

}  // namespace support

#endif  // ORBITQUAD_TESTS_SUPPORT_HPP
