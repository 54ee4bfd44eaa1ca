#include "thompson/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thompson/errors.hpp"
#include "thompson/numeric.hpp"

namespace thompson {

namespace {

constexpr double kPi = std::numbers::pi;

// log(1 + e^x) without overflow.
double log1p_exp(double x) { return x > 30 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

void require_defined(const CantorParams& w, std::uint64_t n) {
  if (auto len = w.length(); len && n > *len) {
    throw IndexOutOfRange("q_" + std::to_string(n) + " is past the end of the sequence");
  }
}

}  // namespace

double length_upper_bound(const CantorParams& w, std::uint64_t d) {
  if (d < 1) throw IndexOutOfRange("depth must be >= 1");
  require_defined(w, d);
  if (w.family() != OmegaFamily::OmegaK && w.q(d) >= 1) throw DegenerateParams("q_d >= 1");
  double x = std::log(2.0) + log_rational(w.delta()) - w.log_one_minus_q(d);
  return 2 * kPi * kPi / log1p_exp(x);
}

double c_delta(const CantorParams& w) {
  Rational ratio = 2 * w.delta() / (1 - w.delta());
  return kPi * kPi / std::log1p(ratio.get_d());
}

double collar_width(double l) {
  if (!(l > 0)) throw DegenerateParams("collar width needs l > 0");
  double s = std::sinh(l / 2);
  return std::asinh(1 / s);
}

std::pair<double, double> wolpert_interval(double l, double K) {
  if (!(l > 0)) throw DegenerateParams("length must be positive");
  if (!(K >= 1)) throw DegenerateParams("K must be >= 1");
  return {l / K, K * l};
}

double annulus_modulus(double r1, double r2) {
  if (!(r1 > 0) || !(r2 > r1)) throw DegenerateParams("annulus needs 0 < r1 < r2");
  return std::log(r2 / r1) / (2 * kPi);
}

DepthOfK d_of_K(const CantorParams& w, double K, std::uint64_t horizon) {
  if (!(K >= 1)) throw DegenerateParams("K must be >= 1");
  if (horizon < 1) throw DegenerateParams("horizon must be >= 1");
  require_defined(w, horizon + 1);
  DepthOfK r;
  r.K = K;
  r.horizon = horizon;
  r.monotone = w.nondecreasing_certified();

  // L[d] for d = 1..horizon: sup of the proxy over depths d+1..horizon+1.
  std::vector<double> L(horizon + 2, 0.0);
  double running = 0.0;
  for (std::uint64_t d = horizon + 1; d >= 2; --d) {
    double b = length_upper_bound(w, d);
    running = r.monotone ? b : std::max(running, b);
    L[d - 1] = running;
  }
  double delta = std::numeric_limits<double>::infinity();
  for (std::uint64_t d = 1; d <= horizon; ++d) delta = std::min(delta, collar_width(L[d]));
  r.delta_omega = delta;
  for (std::uint64_t d = 1; d <= horizon; ++d) {
    if (K * L[d] < delta) {
      r.d = d;
      r.L_d = L[d];
      return r;
    }
  }
  throw NotFoundWithinHorizon("no d <= " + std::to_string(horizon) + " with K L(d) < delta(omega) for K = " +
                              std::to_string(K) + " (K L(" + std::to_string(horizon) +
                              ") = " + std::to_string(K * L[horizon]) + ", delta(omega) = " +
                              std::to_string(delta) + ")");
}

NKCount count_NK(const CantorParams& w, double K, std::uint64_t horizon) {
  NKCount out;
  out.depth = d_of_K(w, K, horizon);
  // m_d = M_d under the depth-uniform proxy.
  double m = length_upper_bound(w, out.depth.d);
  out.band_lo = m / K;
  out.band_hi = K * m;
  out.count = 0;
  for (std::uint64_t d = 1; d <= horizon; ++d) {
    double l = length_upper_bound(w, d);
    if (out.band_lo <= l && l <= out.band_hi) {
      Integer n;
      mpz_ui_pow_ui(n.get_mpz_t(), 2, d);
      out.count += n;
      out.per_depth.emplace_back(d, n);
    }
  }
  out.tail_bound = length_upper_bound(w, horizon + 1);
  if (!w.nondecreasing_certified() || !(out.tail_bound < out.band_lo)) {
    throw HorizonTooSmall("cannot certify that depths past " + std::to_string(horizon) +
                          " leave the band [" + std::to_string(out.band_lo) + ", " +
                          std::to_string(out.band_hi) + "]");
  }
  return out;
}

std::string to_string(TwistKind k) {
  switch (k) {
    case TwistKind::Psi0: return "Psi0";
    case TwistKind::Psi1: return "Psi1";
    case TwistKind::Composed: return "Psi";
  }
  return "?";
}

TwistGeometry TwistGeometry::of(const TwistMapSpec& s) {
  if (s.n < 1) throw IndexOutOfRange("twist index must be >= 1");
  require_defined(s.omega, s.n);
  TwistGeometry g;
  g.q = s.omega.q_double(s.n);
  double log_len = -static_cast<double>(s.n) * std::log(2.0);
  for (std::uint64_t i = 1; i <= s.n; ++i) log_len += s.omega.log_one_minus_q(i);
  g.I = std::exp(log_len);
  if (!(g.q > 0 && g.q < 1) || !(g.I > 0)) throw DegenerateParams("twist annuli degenerate at n = " + std::to_string(s.n));
  return g;
}

namespace {

// Regions: 0 = identity, 1 = U_0, 2 = Delta_0.
int region0(const TwistGeometry& g, Complex z) {
  double rho = std::abs(z - g.c0());
  if (rho <= g.I / 2) return 2;
  if (rho < g.r0_outer()) return 1;
  return 0;
}

// Regions: 0 = identity, 1 = U_1, 2 = U_2, 3 = Delta_1, 4 = Delta_2.
int region1(const TwistGeometry& g, Complex z) {
  double rho1 = std::abs(z - g.c1());
  if (rho1 <= g.r1_inner()) return 3;
  if (rho1 < g.r1_outer()) return 1;
  double rho2 = std::abs(z - g.c2());
  if (rho2 <= g.r1_inner()) return 4;
  if (rho2 < g.r1_outer()) return 2;
  return 0;
}

double r0(const TwistGeometry& g, double rho) {
  double R = (1 + 3 * g.q) / (2 * (1 - g.q));
  return (rho / g.I - R) / (0.5 - R);
}

double r1(const TwistGeometry& g, double rho) { return (-4 * rho / g.I + (1 + g.q)) / (2 * g.q); }

Complex rotate(Complex c, Complex z, double turns, int sign) {
  return c + (z - c) * std::polar(1.0, sign * kPi * turns);
}

Complex psi0(const TwistGeometry& g, Complex z, int sign) {
  switch (region0(g, z)) {
    case 1: return rotate(g.c0(), z, r0(g, std::abs(z - g.c0())), sign);
    case 2: return -z + g.I;
    default: return z;
  }
}

Complex psi1(const TwistGeometry& g, Complex z, int sign) {
  switch (region1(g, z)) {
    case 1: return rotate(g.c1(), z, r1(g, std::abs(z - g.c1())), sign);
    case 2: return rotate(g.c2(), z, r1(g, std::abs(z - g.c2())), sign);
    case 3: return -z + (1 - g.q) / 2 * g.I;
    case 4: return -z + (3 + g.q) / 2 * g.I;
    default: return z;
  }
}

}  // namespace

Complex twist_map_eval(TwistKind kind, const TwistGeometry& g, Complex z) {
  switch (kind) {
    case TwistKind::Psi0: return psi0(g, z, 1);
    case TwistKind::Psi1: return psi1(g, z, 1);
    case TwistKind::Composed: return psi1(g, psi0(g, z, 1), 1);
  }
  return z;
}

Complex twist_map_eval(const TwistMapSpec& s, Complex z) {
  return twist_map_eval(s.which, TwistGeometry::of(s), z);
}

Complex twist_map_inverse(TwistKind kind, const TwistGeometry& g, Complex z) {
  switch (kind) {
    case TwistKind::Psi0: return psi0(g, z, -1);
    case TwistKind::Psi1: return psi1(g, z, -1);
    case TwistKind::Composed: return psi0(g, psi1(g, z, -1), -1);
  }
  return z;
}

double modulus_U0(double q) { return std::log((1 + 3 * q) / (1 - q)) / (2 * kPi); }
double modulus_U1(double q) { return std::log((1 + q) / (1 - q)) / (2 * kPi); }
double modulus_U2(double q) { return modulus_U1(q); }

Complex beltrami_fd(TwistKind kind, const TwistGeometry& g, Complex z, double h) {
  const Complex ih(0, h);
  Complex fx = (twist_map_eval(kind, g, z + h) - twist_map_eval(kind, g, z - h)) / (2 * h);
  Complex fy = (twist_map_eval(kind, g, z + ih) - twist_map_eval(kind, g, z - ih)) / (2 * h);
  const Complex i(0, 1);
  Complex fz = (fx - i * fy) / 2.0;
  Complex fzbar = (fx + i * fy) / 2.0;
  return fzbar / fz;
}

namespace {

struct Sample {
  Complex z;
  double h;
};

void polar_grid(Complex c, double r_in, double r_out, std::size_t grid, std::vector<Sample>& out) {
  double h = (r_out - r_in) / (8.0 * static_cast<double>(grid));
  double lo = r_in + 2 * h, hi = r_out - 2 * h;
  for (std::size_t i = 0; i < grid; ++i) {
    double rho = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    for (std::size_t k = 0; k < grid; ++k) {
      double theta = 2 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
      out.push_back({c + std::polar(rho, theta), h});
    }
  }
}

// True when all stencil points lie in the same smooth piece of every map
// involved.
bool smooth_at(TwistKind kind, const TwistGeometry& g, const Sample& s) {
  const Complex pts[4] = {s.z + s.h, s.z - s.h, s.z + Complex(0, s.h), s.z - Complex(0, s.h)};
  if (kind != TwistKind::Psi1) {
    int r = region0(g, s.z);
    for (auto p : pts) {
      if (region0(g, p) != r) return false;
    }
  }
  if (kind == TwistKind::Psi0) return true;
  auto pre = [&](Complex p) { return kind == TwistKind::Composed ? psi0(g, p, 1) : p; };
  int r = region1(g, pre(s.z));
  for (auto p : pts) {
    if (region1(g, pre(p)) != r) return false;
  }
  return true;
}

std::vector<Sample> dilatation_samples(TwistKind kind, const TwistGeometry& g, std::size_t grid) {
  std::vector<Sample> raw;
  if (kind != TwistKind::Psi1) polar_grid(g.c0(), g.I / 2, g.r0_outer(), grid, raw);
  if (kind != TwistKind::Psi0) {
    std::vector<Sample> u;
    polar_grid(g.c1(), g.r1_inner(), g.r1_outer(), grid, u);
    polar_grid(g.c2(), g.r1_inner(), g.r1_outer(), grid, u);
    raw.insert(raw.end(), u.begin(), u.end());
    // Points that Psi0 carries into U_1 and U_2.
    if (kind == TwistKind::Composed) {
      for (const auto& s : u) raw.push_back({psi0(g, s.z, -1), s.h});
    }
  }
  std::vector<Sample> out;
  out.reserve(raw.size());
  for (const auto& s : raw) {
    if (smooth_at(kind, g, s)) out.push_back(s);
  }
  return out;
}

DilatationEstimate finish(double max_mu, std::size_t n) {
  if (!(max_mu < 1)) throw NumericalBreakdown("|mu| = " + std::to_string(max_mu) + " >= 1");
  return {(1 + max_mu) / (1 - max_mu), max_mu, n};
}

void check_grid(std::size_t grid) {
  if (grid < 64) throw DegenerateParams("grid must be >= 64");
}

}  // namespace

DilatationEstimate twist_dilatation(const TwistMapSpec& s, std::size_t grid) {
  check_grid(grid);
  auto g = TwistGeometry::of(s);
  auto samples = dilatation_samples(s.which, g, grid);
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  double mx = 0.0;
#pragma omp parallel for reduction(max : mx) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double m = std::abs(beltrami_fd(s.which, g, samples[i].z, samples[i].h));
    if (!(m == m)) m = 1.0;  // NaN counts as breakdown
    mx = std::max(mx, m);
  }
  return finish(mx, samples.size());
}

DilatationEstimate twist_dilatation_serial(const TwistMapSpec& s, std::size_t grid) {
  check_grid(grid);
  auto g = TwistGeometry::of(s);
  auto samples = dilatation_samples(s.which, g, grid);
  double mx = 0.0;
  for (const auto& smp : samples) {
    double m = std::abs(beltrami_fd(s.which, g, smp.z, smp.h));
    if (!(m == m)) m = 1.0;
    mx = std::max(mx, m);
  }
  return finish(mx, samples.size());
}

TwistRow twist_row(const CantorParams& w, std::uint64_t n, std::size_t grid) {
  TwistRow r;
  r.n = n;
  TwistMapSpec s{n, w, TwistKind::Psi0};
  r.q = TwistGeometry::of(s).q;
  r.K0 = twist_dilatation(s, grid).K;
  s.which = TwistKind::Psi1;
  r.K1 = twist_dilatation(s, grid).K;
  s.which = TwistKind::Composed;
  r.K = twist_dilatation(s, grid).K;
  r.mod_U0 = modulus_U0(r.q);
  r.mod_U1 = modulus_U1(r.q);
  r.mod_U2 = modulus_U2(r.q);
  return r;
}

}  // namespace thompson
