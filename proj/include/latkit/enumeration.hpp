#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "latkit/matrix.hpp"

namespace latkit {

struct EnumConfig {
  std::size_t dim_cap = 26;
  std::size_t max_vectors = 5'000'000;  // stored vectors for short_vectors
};

struct ShortVectorSet {
  mpq_class bound;
  // One representative per +- pair, first nonzero coordinate positive,
  // coordinates in the input basis.
  std::vector<std::vector<std::int64_t>> vectors;
  std::vector<mpq_class> norms;
  std::map<mpq_class, std::size_t> counts_by_norm;  // pairs per norm
};

// All nonzero x with x G x^T <= bound, up to sign. Throws kCapExceeded.
ShortVectorSet short_vectors(const RatMatrix& gram, const mpq_class& bound, const EnumConfig& cfg = {});

// Streams (coords, norm) for every pair without storing them.
void for_each_short_vector(const RatMatrix& gram, const mpq_class& bound,
                           const std::function<void(std::span<const std::int64_t>, const mpq_class&)>& fn,
                           const EnumConfig& cfg = {});

struct MinimumResult {
  mpq_class min;
  std::size_t pairs = 0;
};
MinimumResult minimum(const RatMatrix& gram, const EnumConfig& cfg = {});

// Vectors counted with sign, norm 0 included.
std::map<mpq_class, std::uint64_t> theta_prefix(const RatMatrix& gram, const mpq_class& up_to_norm,
                                                const EnumConfig& cfg = {});

}  // namespace latkit
