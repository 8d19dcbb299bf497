#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "satlab/bitstring.hpp"
#include "satlab/compressor.hpp"
#include "satlab/rng.hpp"

namespace satlab {

/// Compressed-length proxy for the Kolmogorov complexity of a string.
struct KEstimate {
  std::size_t input_bits = 0;
  std::size_t k_hat_bits = 0;
  std::string compressor;
};

/// Compresses, decompresses and checks the round trip before reporting the
/// size. Throws ContractViolation if the compressor is lossy and
/// PreconditionError on empty input.
KEstimate k_estimate(const BitString& x, const Compressor& c);

/// log2 of the universal probability 2^-K, using the estimate for K.
double universal_probability_log2(const KEstimate& k);

/// Lower bound on log2 P_U of a weight-k truth table: -(2^n H(k/2^n) + n/2),
/// machine constant omitted.
double ensemble_universal_prob_bound_log2(unsigned n, std::uint64_t ones);

BitString sample_uniform_bits(std::size_t length, Rng& rng);
BitString sample_bernoulli_bits(std::size_t length, double gamma, Rng& rng);

/// Fraction of samples with length - k_hat > threshold_bits. The default
/// sampler draws uniform strings, sample i from derive_seed(seed, i).
double compression_tail_check(std::size_t num_samples, std::size_t length, double threshold_bits,
                              const Compressor& c, std::uint64_t seed);

/// Same check over caller-supplied samples (sampler(i) for i < num_samples).
double compression_tail_check(std::size_t num_samples, double threshold_bits, const Compressor& c,
                              const std::function<BitString(std::size_t)>& sampler);

struct ComplexityBucket {
  double log2_probability = 0.0;
  double cost = 0.0;
};

/// Sum of 2^log2_probability * cost in extended precision. The
/// probabilities are bounds and need not sum to one.
long double sat_complexity_aggregate(std::span<const ComplexityBucket> buckets);

}  // namespace satlab
