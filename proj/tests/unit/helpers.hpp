#pragma once

#include "latkit/exact_linear.hpp"
#include "latkit/lattice.hpp"
#include "latkit/reduction.hpp"

namespace testutil {

using namespace latkit;

inline RatMatrix e8() { return root_lattice(RootKind::E, 8).gram(); }
inline RatMatrix a2() { return root_lattice(RootKind::A, 2).gram(); }

// U * G * U^T for a seeded random unimodular U.
inline RatMatrix disguise(const RatMatrix& g, std::uint64_t seed, std::size_t ops = 8) {
  RatMatrix u = to_rational(random_unimodular(g.rows(), ops, seed));
  return u * g * u.transposed();
}

inline bool congruent(const IntMatrix& t, const RatMatrix& in, const RatMatrix& out) {
  RatMatrix tr = to_rational(t);
  return tr * in * tr.transposed() == out;
}

}  // namespace testutil
