#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace satlab {

/// Probability of heads of a two-outcome experiment.
struct BernoulliPoint {
  double p = 0.0;

  /// Throws PreconditionError unless 0 <= p <= 1.
  static BernoulliPoint make(double p);
};

/// Polarizer angle, restricted to [0, pi/2] where cos^2 is one-to-one.
struct Orientation {
  double theta = 0.0;

  static Orientation make(double theta);
};

/// A strictly monotone map t -> p(t) from [t1, t2] into [0, 1].
class ParamCurve {
 public:
  using Fn = std::function<double(double)>;

  /// Samples 257 points to confirm strict monotonicity and range; throws
  /// PreconditionError otherwise. Without `dp` the derivative falls back to
  /// second-order finite differences that stay inside [t1, t2].
  static ParamCurve make(Fn p, double t1, double t2, Fn dp = nullptr);

  double t1() const noexcept { return t1_; }
  double t2() const noexcept { return t2_; }
  double operator()(double t) const { return p_(t); }
  double derivative(double t) const;

 private:
  ParamCurve(Fn p, Fn dp, double t1, double t2) : p_(std::move(p)), dp_(std::move(dp)), t1_(t1), t2_(t2) {}

  Fn p_;
  Fn dp_;
  double t1_;
  double t2_;
};

/// Standard error sqrt(p(1-p)/m) of a frequency estimated from m trials.
double delta_p(double p, std::uint64_t m);

/// |p - p'| >= delta_p(p, m) + delta_p(p', m) with p != p'. Ties count as
/// distinguishable.
bool distinguishable(double p, double p_prime, std::uint64_t m);

/// Smallest m with distinguishable(0, p2, m), i.e. ceil((1 - p2) / p2).
/// Returns nullopt for p2 = 0, which no finite m separates from 0.
std::optional<std::uint64_t> min_trials_from_zero(double p2);

/// Smallest m with distinguishable(p1, p2, m); nullopt when p1 == p2.
std::optional<std::uint64_t> min_trials(double p1, double p2);

/// arccos(sqrt(p1 p2) + sqrt(q1 q2)), evaluated through atan2 of the sine and
/// cosine of the angle so it keeps full relative precision for close points.
double bernoulli_distance(double p1, double p2);

/// The same distance from the integral of dp / (2 sqrt(p(1 - p))) by
/// quadrature. Independent of the closed form; used to cross-check it.
double bernoulli_distance_quadrature(double p1, double p2);

/// Length of a parametrized path: integral of |dp/dt| / (2 sqrt(p(1 - p))) dt.
/// Throws ConvergenceError if the quadrature does not settle.
double curve_distance(const ParamCurve& c);

/// Angular uncertainty |dp/dtheta|^-1 delta_p for p = cos^2 theta. This is
/// exactly 1/(2 sqrt m) for every theta, including the removable 0/0 at the
/// ends of the domain.
double delta_theta(double theta, std::uint64_t m);

/// Parameter uncertainty |dp/dt|^-1 delta_p along an arbitrary curve.
double delta_param(const ParamCurve& c, double t, std::uint64_t m);

/// Greedy chain from p1: step to the smallest p' with p' - p >= dp + dp', and
/// count the steps that stay at or below p2. count / sqrt(m) tends to
/// bernoulli_distance(p1, p2) as m grows.
std::uint64_t packing_count(double p1, double p2, std::uint64_t m);

/// The next chain point after p, or a value > 1 if none exists in [0, 1].
double next_distinguishable(double p, std::uint64_t m);

/// p = cos^2 theta, the probability of "yes" behind a rotated polarizer.
BernoulliPoint polarization_prob(Orientation theta);

/// Distance between two formula ensembles, defined through the one-to-one
/// map ensemble -> gamma and therefore equal to bernoulli_distance.
double sat_ensemble_distance(double gamma1, double gamma2);

}  // namespace satlab
