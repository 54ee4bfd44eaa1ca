#pragma once

// Numeric estimators on X(omega) = C \ E(omega). Hyperbolic lengths of pants
// curves are replaced by the depth-uniform upper bound
//   L(d) = 2 pi^2 / log(1 + 2 delta / (1 - q_d)),
// so every count below holds under that proxy model. All floats are double.

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thompson/cantor.hpp"

namespace thompson {

// DegenerateParams if q_d >= 1.
double length_upper_bound(const CantorParams& w, std::uint64_t d);
// pi^2 / log(1 + 2 delta / (1 - delta)).
double c_delta(const CantorParams& w);

// Half-collar width asinh(1 / sinh(l/2)).
double collar_width(double l);
// (l/K, K l).
std::pair<double, double> wolpert_interval(double l, double K);
// (1/2pi) log(r2/r1); DegenerateParams unless 0 < r1 < r2.
double annulus_modulus(double r1, double r2);

struct DepthOfK {
  std::uint64_t d = 0;
  double K = 1.0;
  double L_d = 0.0;          // sup of the proxy over depths > d
  double delta_omega = 0.0;  // inf of collar widths of L(d') over d' <= horizon
  std::uint64_t horizon = 0;
  bool monotone = false;     // sup/inf certified by monotonicity of q
};

// Smallest d <= horizon with K L(d) < delta(omega). NotFoundWithinHorizon
// when there is none.
DepthOfK d_of_K(const CantorParams& w, double K, std::uint64_t horizon);

struct NKCount {
  DepthOfK depth;
  double band_lo = 0.0;  // m_{d(K)} / K
  double band_hi = 0.0;  // K M_{d(K)}
  Integer count;
  std::vector<std::pair<std::uint64_t, Integer>> per_depth;  // depths that contribute
  double tail_bound = 0.0;  // proxy just past the horizon
};

// #{(d, j) : band_lo <= L(d) <= band_hi, d <= horizon}. HorizonTooSmall
// unless monotonicity shows every depth past the horizon falls below band_lo.
NKCount count_NK(const CantorParams& w, double K, std::uint64_t horizon);

enum class TwistKind { Psi0, Psi1, Composed };
std::string to_string(TwistKind k);

struct TwistMapSpec {
  std::uint64_t n = 1;
  CantorParams omega = CantorParams::omega_k(1);
  TwistKind which = TwistKind::Psi0;
};

// q_n and |I_n^1| for a spec.
struct TwistGeometry {
  double q = 0.5;
  double I = 1.0;

  static TwistGeometry of(const TwistMapSpec& s);
  double r0_outer() const { return (1 + 3 * q) / (2 * (1 - q)) * I; }
  double c0() const { return I / 2; }
  double c1() const { return (1 - q) / 4 * I; }
  double c2() const { return (3 + q) / 4 * I; }
  double r1_inner() const { return (1 - q) / 4 * I; }
  double r1_outer() const { return (1 + q) / 4 * I; }
};

using Complex = std::complex<double>;

Complex twist_map_eval(const TwistMapSpec& s, Complex z);
Complex twist_map_eval(TwistKind kind, const TwistGeometry& g, Complex z);
Complex twist_map_inverse(TwistKind kind, const TwistGeometry& g, Complex z);

// Closed-form moduli of the round annuli U_0^n, U_1^n, U_2^n.
double modulus_U0(double q);
double modulus_U1(double q);
double modulus_U2(double q);

struct DilatationEstimate {
  double K = 1.0;
  double max_mu = 0.0;
  std::size_t samples = 0;
};

// Sup over polar sample grids (grid x grid per annulus) of the central
// difference Beltrami coefficient, step h = width / (8 grid). Samples whose
// stencil crosses a region boundary are skipped. NumericalBreakdown if any
// |mu| >= 1; DegenerateParams if grid < 64.
DilatationEstimate twist_dilatation(const TwistMapSpec& s, std::size_t grid);
// Same samples and arithmetic, one thread.
DilatationEstimate twist_dilatation_serial(const TwistMapSpec& s, std::size_t grid);

// Finite-difference mu of f at z with step h.
Complex beltrami_fd(TwistKind kind, const TwistGeometry& g, Complex z, double h);

struct TwistRow {
  std::uint64_t n = 0;
  double q = 0.0;
  double K0 = 1.0, K1 = 1.0, K = 1.0;
  double mod_U0 = 0.0, mod_U1 = 0.0, mod_U2 = 0.0;
};
TwistRow twist_row(const CantorParams& w, std::uint64_t n, std::size_t grid);

}  // namespace thompson
