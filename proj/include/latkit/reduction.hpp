#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>

#include "latkit/matrix.hpp"

namespace latkit {

struct Witness {
  IntVector coords;  // in the basis of the input Gram
  mpq_class norm;
};

struct ReductionReport {
  RatMatrix final_gram;
  IntMatrix transform;  // transform * input * transform^T == final_gram
  std::optional<Witness> witness;
  std::size_t loops_used = 0;
  bool conclusive = false;
};

// Integral-Gram LLL with exact Gram-Schmidt data. delta in (1/4, 1],
// eta in [1/2, sqrt(delta)); violations throw kInvalidArgument.
ReductionReport lll(const RatMatrix& gram, const mpq_class& delta = mpq_class(99, 100),
                    const mpq_class& eta = mpq_class(501, 1000));
ReductionReport seysen(const RatMatrix& gram);
ReductionReport pair_reduce(const RatMatrix& gram);

struct RedLoopConfig {
  mpq_class threshold = 6;
  std::size_t loops_per_phase = 1000;
  std::size_t phases = 2;
  std::uint64_t seed = 1;
  std::size_t disguise_ops = 8;
  mpq_class delta = mpq_class(99, 100);
  mpq_class eta = mpq_class(501, 1000);
};

ReductionReport red_loop(const RatMatrix& gram, const RedLoopConfig& cfg = {});

// Product of k random elementary row operations with coefficients in {-2,-1,1,2}.
IntMatrix random_unimodular(std::size_t n, std::size_t k, std::uint64_t seed);

// mt19937_64 is fully specified by the standard; the bounded draw is done here
// because std distributions are implementation defined.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace latkit
