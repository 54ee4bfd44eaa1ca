#pragma once

// Generalized Cantor sets E(omega) built by removing, at step k, the open
// middle part of relative length q_k from every surviving interval.
//
// Exactness boundary: interval, gap and circle data are exact rationals.
// For the omega_k families q_n is the exact rational value of a double, so
// those results are exact for the double-rounded sequence, not the real one.

#include <cstdint>
#include <optional>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "thompson/dyadic.hpp"

namespace thompson {

enum class OmegaFamily { Explicit, Geometric, OmegaK };

class CantorParams {
 public:
  // Finite prefix q_1..q_m. With repeat_last the tail repeats q_m forever,
  // otherwise indices past m are out of range. delta defaults to the exact
  // infimum when omitted.
  static CantorParams explicit_sequence(std::vector<Rational> prefix, bool repeat_last,
                                        std::optional<Rational> delta = std::nullopt);
  // q_n = 1 - scale * ratio^n, with 0 < ratio <= 1 and 0 < scale*ratio < 1.
  static CantorParams geometric(Rational scale, Rational ratio);
  // q_n = 1 - 1/(2 log^(k) n).
  static CantorParams omega_k(int k);

  // "omega_k:2", "explicit:1/3,1/2,..." (trailing ... repeats the last value),
  // "geometric:1,1/2", each optionally suffixed "@delta"; or a JSON object.
  static CantorParams parse(std::string_view spec);

  OmegaFamily family() const { return family_; }
  const Rational& delta() const { return delta_; }
  int k() const { return k_; }
  const std::vector<Rational>& prefix() const { return prefix_; }
  bool repeats_last() const { return repeat_last_; }
  const Rational& scale() const { return scale_; }
  const Rational& ratio() const { return ratio_; }

  // 1-based. IndexOutOfRange past a finite prefix.
  Rational q(std::uint64_t n) const;
  double q_double(std::uint64_t n) const;
  // 1 - q_n without cancellation for the float family.
  double one_minus_q_double(std::uint64_t n) const;
  // log(1 - q_n), finite even when 1 - q_n underflows a double.
  double log_one_minus_q(std::uint64_t n) const;
  // Number of defined terms, or nullopt for an infinite sequence.
  std::optional<std::uint64_t> length() const;
  // True when the whole (infinite) sequence is known to be nondecreasing.
  bool nondecreasing_certified() const;

  std::string describe() const;

 private:
  CantorParams() = default;
  void check() const;

  OmegaFamily family_ = OmegaFamily::Explicit;
  std::vector<Rational> prefix_;
  bool repeat_last_ = false;
  Rational scale_, ratio_;
  int k_ = 0;
  Rational delta_;
};

void to_json(nlohmann::json& j, const CantorParams& w);
CantorParams cantor_params_from_json(const nlohmann::json& j);

struct CantorInterval {
  std::uint64_t depth = 0;
  std::uint64_t index = 1;  // 1..2^depth
  Rational lo, hi;
  Rational length() const { return hi - lo; }
};

struct OpenInterval {
  Rational lo, hi;
  Rational length() const { return hi - lo; }
};

struct Circle {
  Rational center, radius;
};

// I_k^j by the recursive construction; I_0^1 = [0,1].
CantorInterval interval(const CantorParams& w, std::uint64_t k, std::uint64_t j);
// All 2^k intervals of depth k, left to right.
std::vector<CantorInterval> intervals_at_depth(const CantorParams& w, std::uint64_t k);
// Open interval removed from I_{k-1}^j at step k (J_k^{2j-1}); k >= 1.
OpenInterval gap(const CantorParams& w, std::uint64_t k, std::uint64_t j);
// |J_k| - 2 delta |I_k|; nonnegative whenever q_k >= delta.
Rational gap_bound_margin(const CantorParams& w, std::uint64_t k);
// C_k^i: centered at the midpoint of I_k^i with radius (1+delta)/2 |I_k^1|.
Circle circle(const CantorParams& w, std::uint64_t k, std::uint64_t i);
// True iff the two circles (as curves) do not meet; exact.
bool circles_disjoint(const Circle& a, const Circle& b);

enum class BrdVerdict { HoldsUpToHorizon, Fails, NotTendingToOne };
std::string to_string(BrdVerdict v);

struct BrdReport {
  BrdVerdict verdict = BrdVerdict::HoldsUpToHorizon;
  std::uint64_t horizon = 0;
  std::uint64_t witness = 0;         // first offending n (Fails / NotTendingToOne)
  double max_abs_log_ratio = 0.0;    // over the checked range
};

// Checks |log((1-q_n)/(1-q_{n+1}))| < M for n = 1..N-1 against a certified
// rational enclosure of e^M, then whether q looks like it increases to 1 on
// the horizon. A prefix can refute the limit but never prove it.
BrdReport brd_check(const CantorParams& w, std::uint64_t horizon, const Rational& bound);

// Rational lo <= e^x <= hi for rational x >= 0, with hi - lo < 2^-bits.
std::pair<Rational, Rational> exp_enclosure(const Rational& x, unsigned bits);

// e_k with log^(k) e_k = e: e_0 = e, e_k = exp(e_{k-1}); +inf once it
// overflows a double.
double iterated_log_threshold(int k);
// log^(k) x, truncated to 1 on (0, e_{k-1}].
double iterated_log(int k, double x);

// log(1 - q_n^(k2)) / log(1 - q_n^(k1)) and the iterated-log expression
// log^(k2+1) n / log^(k1+1) n it tends to.
struct OmegaRatio {
  std::uint64_t n = 0;
  double ratio = 0.0;
  double asymptotic = 0.0;
};
OmegaRatio omega_ratio(int k1, int k2, std::uint64_t n);

}  // namespace thompson
