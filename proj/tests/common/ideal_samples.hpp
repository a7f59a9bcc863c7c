#pragma once

#include <vector>

#include "latkit/cyclotomic.hpp"
#include "latkit/reduction.hpp"

namespace samples {

using namespace latkit;

inline CycloElement random_element(long m, SeededRng& rng, long range = 2) {
  std::vector<mpq_class> c(static_cast<std::size_t>(euler_phi(m)));
  for (auto& x : c) x = static_cast<long>(rng.below(2 * range + 1)) - range;
  return CycloElement(m, c);
}

inline CycloElement random_nonzero(long m, SeededRng& rng) {
  while (true) {
    CycloElement x = random_element(m, rng);
    if (!x.is_zero()) return x;
  }
}

struct IdealSample {
  long m;
  FracIdeal j;
  CycloElement alpha;
};

// J generated by one or two small elements, sometimes halved; alpha = 1 + y conj(y).
inline IdealSample random_pair(long m, SeededRng& rng) {
  std::vector<CycloElement> gens{random_nonzero(m, rng)};
  if (rng.below(2)) gens.push_back(random_element(m, rng));
  if (rng.below(3) == 0) gens[0] = gens[0] * mpq_class(1, 2);
  CycloElement y = random_element(m, rng, 1);
  CycloElement alpha = CycloElement::one(m) + y * y.conj();
  return {m, FracIdeal::generated_by(m, gens), alpha};
}

// A unit: zeta^k times a product of cyclotomic units.
inline CycloElement random_unit(long m, SeededRng& rng) {
  CycloElement u = CycloElement::zeta(m, static_cast<long>(rng.below(m)));
  for (const auto& c : cyclotomic_units(m)) u = u * c.pow(static_cast<long>(rng.below(3)) - 1);
  return u;
}

inline const std::vector<long>& moduli() {
  static const std::vector<long> ms{3, 4, 5, 7, 8, 9, 12, 15};
  return ms;
}

}  // namespace samples
