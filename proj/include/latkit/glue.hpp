#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "latkit/isometry.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

using FpVector = std::vector<std::int64_t>;
using FpMatrix = std::vector<FpVector>;  // rows

// p-part of L^#/L for an integral lattice with elementary p-part.
struct DiscGroup {
  Lattice base;
  long p = 2;
  std::size_t rank = 0;
  RatMatrix generators;          // rank x n, rows in L^# (coordinates in the basis of L)
  std::vector<mpq_class> q_values;  // (g,g) mod 2
  RatMatrix b_values;            // (g_i,g_j) mod 1

  // (x,x) mod 2 and (x,y) mod 1 for F_p coordinate vectors.
  mpq_class q(const FpVector& c) const;
  mpq_class b(const FpVector& c, const FpVector& d) const;
  // Representative in L^# of sum c_i g_i with 0 <= c_i < p.
  RatVector lift(const FpVector& c) const;
};

// Throws kNotIntegral and kNotElementary.
DiscGroup disc_group(const Lattice& l, long p);

// Totally isotropic subspace, basis rows in reduced echelon form mod p.
struct GlueCode {
  DiscGroup disc;
  FpMatrix basis;
  std::size_t dim() const { return basis.size(); }
  bool is_isotropic() const;
};

struct SubmoduleSearch {
  std::vector<FpMatrix> stabilizing;  // actions c -> c A to be respected
  std::vector<FpMatrix> centralizer;  // actions for orbit deduplication
  std::uint64_t budget = 2'000'000;   // subspaces to inspect
};

// All totally isotropic subspaces of the given dimension. Throws
// kBudgetExceeded when the number of subspaces exceeds the budget.
std::vector<GlueCode> isotropic_submodules(const DiscGroup& d, std::size_t dim, const SubmoduleSearch& opts = {});

// L plus the glue representatives; det(out) = det(L) / p^(2 dim). The
// result's basis is in L coordinates. Throws kNotIsotropic.
Lattice overlattice(const Lattice& l, const GlueCode& code);

// Kneser p-neighbour {x in L : (x,v) = 0 mod p} + Z v/p of an even
// unimodular L. Basis of the result is in L coordinates. Throws kPrecondition.
Lattice neighbor(const Lattice& l, long p, const IntVector& v);
// {x in L : (x,v) = 0 mod p} as rows in L coordinates.
IntMatrix neighbor_kernel(const Lattice& l, long p, const IntVector& v);
// x + p y with (v,v) = 0 mod 2p^2 for x not in pL with (x,x) = 0 mod 2p.
// Throws kPrecondition when x does not qualify.
IntVector lift_to_admissible(const Lattice& l, long p, const IntVector& x);

struct GenusClass {
  Lattice lattice;  // LLL-reduced Gram
  Fingerprint fingerprint;
};

struct GenusWalkConfig {
  std::size_t neighbors_per_class = 40;
  mpq_class candidate_norm_limit = 0;  // short-vector scan bound; 0 means 2p
  IsometryConfig iso;
};

struct GenusWalkResult {
  std::vector<GenusClass> classes;
  bool complete = false;  // closure reached before max_classes
  std::uint64_t neighbors_tried = 0;
};

GenusWalkResult genus_walk(const Lattice& l0, long p, std::size_t max_classes, std::uint64_t seed,
                           const GenusWalkConfig& cfg = {});

// Reduced echelon form mod p (rows), zero rows removed.
FpMatrix fp_rref(FpMatrix rows, long p);

}  // namespace latkit
