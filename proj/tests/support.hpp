#pragma once

// Shared generators for the property tests.

#include "elcomm/ring.hpp"

#include <random>

namespace elcomm::testing {

inline Polynomial random_poly(const RingPtr& ring, std::mt19937_64& rng, int max_terms = 4,
                              int max_degree = 3, int coeff_range = 5) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  const auto nletters = ring->letters().size();
  Polynomial p(ring);
  for (int t = nterms(rng); t > 0; --t) {
    Monomial::Storage w;
    if (nletters > 0) {
      std::uniform_int_distribution<int> letter(0, static_cast<int>(nletters) - 1);
      for (int d = deg(rng); d > 0; --d) w.push_back(static_cast<std::uint16_t>(letter(rng)));
    }
    p += Polynomial::monomial(ring, Monomial(std::move(w)), coeff(rng));
  }
  return p;
}

}  // namespace elcomm::testing
