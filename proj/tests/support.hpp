#pragma once

// Shared random generators and independent oracles for the unit tests and
// the acceptance runner. Oracles use plain rational arithmetic and do not
// call the library routine they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "thompson/cantor.hpp"
#include "thompson/dyadic.hpp"
#include "thompson/geometry.hpp"
#include "thompson/theta.hpp"
#include "thompson/treepair.hpp"

namespace support {

using namespace thompson;

// Random complete prefix code with n leaves, by splitting random leaves.
inline BinaryTree random_tree(std::mt19937_64& rng, std::size_t n) {
  std::vector<BinaryAddress> leaves{BinaryAddress{}};
  while (leaves.size() < n) {
    std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
    std::size_t i = pick(rng);
    BinaryAddress a = leaves[i];
    leaves[i] = a.child(Half::L);
    leaves.push_back(a.child(Half::R));
  }
  return BinaryTree(std::move(leaves));
}

inline std::vector<std::size_t> random_perm(std::mt19937_64& rng, std::size_t n, ThompsonClass cls) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  if (cls == ThompsonClass::V) {
    std::shuffle(p.begin(), p.end(), rng);
  } else if (cls == ThompsonClass::T) {
    std::size_t s = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    for (std::size_t i = 0; i < n; ++i) p[i] = (i + s) % n;
  }
  return p;
}

// Reduced pair with at most max_leaves leaves, from F, T or V at random.
inline TreePair random_pair(std::mt19937_64& rng, std::size_t max_leaves) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_leaves)(rng);
  auto cls = static_cast<ThompsonClass>(std::uniform_int_distribution<int>(0, 2)(rng));
  auto D = random_tree(rng, n);
  auto R = random_tree(rng, n);
  return reduce(TreePair(D, R, random_perm(rng, n, cls)));
}

// r in [lo, hi] with denominator at most den.
inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long den = 97) {
  long d = std::uniform_int_distribution<long>(2, den)(rng);
  Rational r;
  do {
    long k = std::uniform_int_distribution<long>(0, d)(rng);
    r = lo + (hi - lo) * Rational(k, d);
    r.canonicalize();
  } while (r <= lo || r >= hi);
  return r;
}

inline CantorParams random_omega(std::mt19937_64& rng, std::size_t length, const Rational& lo) {
  std::vector<Rational> q;
  for (std::size_t i = 0; i < length; ++i) q.push_back(random_rational(rng, lo, Rational(1)));
  return CantorParams::explicit_sequence(q, true);
}

// Image of x under a pair, by searching its leaf intervals with rationals.
inline Rational pair_oracle(const TreePair& p, const Rational& x) {
  for (const auto& m : p.matches()) {
    auto I = interval_of_address(m.domain), J = interval_of_address(m.range);
    Rational a = I.lo.to_rational(), b = I.hi.to_rational();
    if (a <= x && x < b) {
      Rational c = J.lo.to_rational(), e = J.hi.to_rational();
      return c + (x - a) * (e - c) / (b - a);
    }
  }
  throw std::runtime_error("point outside [0,1)");
}

// All k/2^bits in [0,1).
inline std::vector<Dyadic> dyadic_grid(unsigned bits) {
  std::vector<Dyadic> out;
  for (long k = 0; k < (1L << bits); ++k) out.emplace_back(Integer(k), bits);
  return out;
}

// |I_k| = 2^-k prod_{i<=k} (1 - q_i).
inline Rational closed_form_length(const CantorParams& w, std::uint64_t k) {
  Rational p = 1;
  for (std::uint64_t i = 1; i <= k; ++i) p *= (1 - w.q(i));
  Integer two_k;
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
  return p / two_k;
}

// N(K) by visiting every curve (d, j) one at a time.
inline Integer brute_force_NK(const CantorParams& w, double K, std::uint64_t horizon, std::uint64_t dK) {
  double m = length_upper_bound(w, dK);
  Integer count = 0;
  for (std::uint64_t d = 1; d <= horizon; ++d) {
    if (d > 16) {
      // Each curve at a depth shares the depth's proxy; visit one and add the rest.
      double l = length_upper_bound(w, d);
      if (m / K <= l && l <= K * m) {
        Integer c;
        mpz_ui_pow_ui(c.get_mpz_t(), 2, d);
        count += c;
      }
      continue;
    }
    for (std::uint64_t j = 1; j <= (std::uint64_t{1} << d); ++j) {
      double l = length_upper_bound(w, d);
      if (m / K <= l && l <= K * m) count += 1;
    }
  }
  return count;
}

// For f(w) = w exp(i phi(|w|)) with phi linear of slope s, |mu| = t/sqrt(1+t^2)
// where t = |w| |s| / 2.
inline double radial_twist_mu(double rho, double slope) {
  double t = rho * std::abs(slope) / 2;
  return t / std::sqrt(1 + t * t);
}

inline double mu_to_K(double mu) { return (1 + mu) / (1 - mu); }

}  // namespace support
