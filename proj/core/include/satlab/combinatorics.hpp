#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "satlab/bitstring.hpp"

namespace satlab {

using BigInt = boost::multiprecision::cpp_int;

/// H(p) in bits with 0 log 0 = 0. Throws for p outside [0, 1].
double binary_entropy(double p);

/// 2^n * H(k / 2^n) without forming k / 2^n naively; accurate for n up to 63
/// and k far below 2^n.
double scaled_entropy_bits(double k, unsigned n);

/// Exact C(L, k). Throws if k > L.
BigInt binomial(std::uint64_t length, std::uint64_t ones);

/// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigInt& value);

/// Position of one string in the lexicographic list of length-L strings with
/// exactly k ones. `index` is 1-based.
struct KOnesIndex {
  std::uint64_t length = 0;
  std::uint64_t ones = 0;
  BigInt index = 1;

  /// Validates 0 <= k <= L and 1 <= I <= C(L, k).
  static KOnesIndex make(std::uint64_t length, std::uint64_t ones, BigInt index);
};

/// I-th weight-k string of length L in ascending lexicographic order, '0' < '1'.
BitString unrank_k_ones(const KOnesIndex& where);
BitString unrank_k_ones(std::uint64_t length, std::uint64_t ones, const BigInt& index);

/// Inverse of unrank_k_ones for the string's own length and weight.
BigInt rank_k_ones(const BitString& s);

/// A description-length bound in bits. Every bound in this family holds up
/// to an additive machine constant that is never quantified; it is left out
/// of `bits_excluding_constant` and flagged here.
struct BoundReport {
  double bits_excluding_constant = 0.0;
  bool constant_omitted = true;
};

/// "Evaluate the formula on every input" program: log2(2^n) + formula bits.
/// Also an upper bound on the complexity of the truth table given 2^n.
BoundReport program1_length_bound(double formula_bits, unsigned n);

/// "Print the I-th weight-k string" program: log2 L + log2 C(L, k).
BoundReport program2_length_bound(std::uint64_t length, std::uint64_t ones);

/// 2^n H(k / 2^n) + n/2, the entropy bound for a weight-k truth table.
BoundReport k_complexity_bound(unsigned n, std::uint64_t ones);

struct CurvePoint {
  unsigned n = 0;
  double y = 0.0;
};

/// y(n) = 2^n H(k / 2^n) for n in [n_min, n_max]. Requires k >= 1 and
/// k <= 2^(n_min - 4) so the fixed-k regime k << 2^n holds throughout.
std::vector<CurvePoint> figure1_curve(std::uint64_t ones, unsigned n_min, unsigned n_max);

/// "n,y" header then one line per point, y with 6 significant digits.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);

}  // namespace satlab
