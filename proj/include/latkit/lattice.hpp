#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "latkit/matrix.hpp"

namespace latkit {

// A positive definite lattice given by its Gram matrix. Entries may be
// rational (duals, rescalings); parity questions are only asked of integral
// lattices. The optional basis expresses the generators in some ambient
// lattice whose Gram matrix is kept alongside it.
class Lattice {
 public:
  // Throws kNotSymmetric / kNotPositiveDefinite.
  explicit Lattice(RatMatrix gram, std::string label = {});
  // gram = basis * ambient_gram * basis^T.
  Lattice(const RatMatrix& basis, const RatMatrix& ambient_gram, std::string label = {});

  const RatMatrix& gram() const noexcept { return gram_; }
  std::size_t dim() const noexcept { return gram_.rows(); }
  const std::string& label() const noexcept { return label_; }
  const std::optional<RatMatrix>& basis() const noexcept { return basis_; }
  const std::optional<RatMatrix>& ambient_gram() const noexcept { return ambient_gram_; }

  Lattice with_label(std::string label) const;

 private:
  RatMatrix gram_;
  std::optional<RatMatrix> basis_;
  std::optional<RatMatrix> ambient_gram_;
  std::string label_;
};

// Exact leading-principal-minor test.
bool is_positive_definite(const RatMatrix& gram);

Lattice dual(const Lattice& l);
mpq_class determinant(const Lattice& l);
bool is_integral(const Lattice& l);
// Throws kNotIntegral on non-integral input.
bool is_even(const Lattice& l);
bool is_unimodular(const Lattice& l);
// p * L^# contained in L. Throws kNotIntegral on non-integral input.
bool is_p_elementary(const Lattice& l, long p);

Lattice orthogonal_sum(const Lattice& a, const Lattice& b);
// Gram multiplied by a positive rational.
Lattice rescale(const Lattice& l, const mpq_class& factor);

struct RescaledLattice {
  Lattice base;
  mpq_class scale;
  Lattice lattice() const { return rescale(base, scale); }
};

enum class RootKind { A, D, E };
// Standard simple-root Gram matrices. Throws kInvalidArgument on (D, n<4),
// (E, n not in {6,7,8}) and n < 1.
Lattice root_lattice(RootKind kind, int n);
// Z^n with the identity Gram.
Lattice integer_lattice(int n);
// Even unimodular, minimum 4, from the extended binary Golay code.
Lattice leech();

// The 24-bit codewords of the extended binary Golay code as 0/1 rows, 12 generators.
IntMatrix golay_generators();

// Sublattice spanned by integral rows (coordinates w.r.t. the basis of l).
// Throws kNotContained when a row is not integral.
Lattice sublattice(const Lattice& l, const RatMatrix& rows);
// Lattice spanned by arbitrary rational rows (e.g. an overlattice).
Lattice span_lattice(const Lattice& l, const RatMatrix& rows);
// [L : M] for M spanned by the rows; nullopt when M has lower rank ("infinite").
// Throws kNotContained when a row is not integral.
std::optional<mpz_class> index(const Lattice& l, const RatMatrix& rows);

}  // namespace latkit
