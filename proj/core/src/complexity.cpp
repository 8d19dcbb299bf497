#include "satlab/complexity.hpp"

#include <cmath>

#include "satlab/combinatorics.hpp"
#include "satlab/errors.hpp"

namespace satlab {

KEstimate k_estimate(const BitString& x, const Compressor& c) {
  if (x.empty()) throw PreconditionError("k_estimate needs a non-empty string");
  const std::vector<std::uint8_t> packed = c.compress(x);
  BitString restored;
  try {
    restored = c.decompress(packed);
  } catch (const FormatError& e) {
    throw ContractViolation(std::string(c.name()) + " cannot decode its own output: " + e.what());
  }
  if (restored != x) throw ContractViolation(std::string(c.name()) + " round trip is lossy");
  return KEstimate{x.size(), packed.size() * 8, std::string(c.name())};
}

double universal_probability_log2(const KEstimate& k) { return -static_cast<double>(k.k_hat_bits); }

double ensemble_universal_prob_bound_log2(unsigned n, std::uint64_t ones) {
  return -k_complexity_bound(n, ones).bits_excluding_constant;
}

BitString sample_uniform_bits(std::size_t length, Rng& rng) {
  BitString out(length);
  for (auto& w : out.mutable_words()) w = rng.next();
  out.trim_tail();
  return out;
}

BitString sample_bernoulli_bits(std::size_t length, double gamma, Rng& rng) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw PreconditionError("gamma must lie in [0, 1]");
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (rng.bernoulli(gamma)) out.set(i, true);
  }
  return out;
}

double compression_tail_check(std::size_t num_samples, double threshold_bits, const Compressor& c,
                              const std::function<BitString(std::size_t)>& sampler) {
  if (num_samples < 100) throw PreconditionError("compression_tail_check needs at least 100 samples");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < num_samples; ++i) {
    const BitString x = sampler(i);
    const KEstimate k = k_estimate(x, c);
    if (static_cast<double>(k.input_bits) - static_cast<double>(k.k_hat_bits) > threshold_bits) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(num_samples);
}

double compression_tail_check(std::size_t num_samples, std::size_t length, double threshold_bits,
                              const Compressor& c, std::uint64_t seed) {
  return compression_tail_check(num_samples, threshold_bits, c, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    return sample_uniform_bits(length, rng);
  });
}

long double sat_complexity_aggregate(std::span<const ComplexityBucket> buckets) {
  if (buckets.empty()) throw PreconditionError("sat_complexity_aggregate needs at least one bucket");
  long double total = 0.0L;
  for (const auto& b : buckets) {
    if (!(b.cost >= 0.0)) throw PreconditionError("bucket costs must be non-negative");
    total += std::exp2(static_cast<long double>(b.log2_probability)) * static_cast<long double>(b.cost);
  }
  return total;
}

}  // namespace satlab
