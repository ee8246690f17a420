#ifndef PHASEKIT_NUMERICS_HPP
#define PHASEKIT_NUMERICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <type_traits>

#include "phasekit/types.hpp"

namespace phasekit {

/// Gamma function for x > 0, Lanczos approximation (g = 671/128, 14 terms).
inline double gamma_real(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_real requires x > 0");
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3,
      -0.210264441724104883e-3, 0.217439618115212643e-3,
      -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;  // x + 671/128
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
  return std::exp(tmp + std::log(2.5066282746310005 * ser / x));
}

/// Root of a continuous function with a sign change on [lo, hi]. Bisection
/// interleaved with secant steps; derivative-free.
template <class F>
double solve_monotone_root(F&& f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("solve_monotone_root: no sign change on bracket");
  const double fscale = std::max(std::abs(flo), std::abs(fhi));
  for (int it = 0; it < 300; ++it) {
    double mid;
    // Secant candidate, accepted only if it lands safely inside the bracket.
    double denom = fhi - flo;
    if (denom != 0.0) {
      double sec = hi - fhi * (hi - lo) / denom;
      double margin = 0.01 * (hi - lo);
      mid = (sec > lo + margin && sec < hi - margin) ? sec : 0.5 * (lo + hi);
    } else {
      mid = 0.5 * (lo + hi);
    }
    double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
    double r = 0.5 * (lo + hi);
    if (hi - lo <= 1e-14 * std::max(std::abs(r), 1e-30) &&
        std::abs(fmid) <= 1e-12 * std::max(fscale, 1e-300))
      return r;
  }
  double r = 0.5 * (lo + hi);
  if (hi - lo <= 1e-12 * std::max(std::abs(r), 1e-30)) return r;
  throw std::runtime_error("solve_monotone_root: no convergence");
}

namespace detail {

template <class V>
double value_norm(const V& v) {
  if constexpr (std::is_same_v<V, Complex>)
    return std::abs(v);
  else
    return std::abs(static_cast<double>(v));
}

template <class F, class V>
V central_stencil(F& f, double s, int n, double h) {
  switch (n) {
    case 1: return (f(s + h) - f(s - h)) / (2.0 * h);
    case 2: return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
    case 3:
      return (f(s + 2 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2 * h)) /
             (2.0 * h * h * h);
    case 4:
      return (f(s + 2 * h) - 4.0 * f(s + h) + 6.0 * f(s) - 4.0 * f(s - h) +
              f(s - 2 * h)) /
             (h * h * h * h);
    default: throw std::invalid_argument("nth_derivative: order must be 1..4");
  }
}

// Second-order one-sided stencils; sign = +1 forward, -1 backward.
template <class F, class V>
V onesided_stencil(F& f, double s, int n, double h, int sign) {
  auto g = [&](int k) { return f(s + sign * k * h); };
  double hn = std::pow(sign * h, n);
  switch (n) {
    case 1: return (-1.5 * g(0) + 2.0 * g(1) - 0.5 * g(2)) / (sign * h);
    case 2: return (2.0 * g(0) - 5.0 * g(1) + 4.0 * g(2) - g(3)) / (h * h);
    case 3:
      return (-2.5 * g(0) + 9.0 * g(1) - 12.0 * g(2) + 7.0 * g(3) -
              1.5 * g(4)) /
             hn;
    case 4:
      return (3.0 * g(0) - 14.0 * g(1) + 26.0 * g(2) - 24.0 * g(3) +
              11.0 * g(4) - 2.0 * g(5)) /
             hn;
    default: throw std::invalid_argument("nth_derivative: order must be 1..4");
  }
}

}  // namespace detail

/// n-th derivative (n = 1..4) by finite differences with Richardson
/// extrapolation over expanding steps. Falls back to one-sided stencils when
/// the central stencil would leave [domain_lo, domain_hi].
template <class F>
auto nth_derivative(F&& f, double s, int n, const DerivativeSettings& ds = {}) {
  using V = std::invoke_result_t<F&, double>;
  if (n < 1 || n > 4) throw std::invalid_argument("nth_derivative: order must be 1..4");
  const double eps = std::numeric_limits<double>::epsilon();
  // Roundoff-vs-truncation balance; exponents for n >= 3 are enlarged so that
  // the eps/h^n noise stays below the polynomial-exactness contract.
  static const double expo[5] = {0.0, 1.0 / 3.0, 1.0 / 4.0, 1.0 / 6.0, 1.0 / 7.0};
  double h0 = ds.base_step > 0.0
                  ? ds.base_step
                  : std::max(ds.interval_length, 1e-30) * std::pow(eps, expo[n]);
  const int levels = std::max(1, ds.richardson_levels);
  const int span = (n <= 2) ? 1 : 2;
  const double hmax = h0 * std::pow(2.0, levels - 1);

  const bool room_below = s - span * hmax >= ds.domain_lo;
  const bool room_above = s + span * hmax <= ds.domain_hi;
  int mode;  // 0 central, +1 forward, -1 backward
  if (room_below && room_above) {
    mode = 0;
  } else {
    int pts = (n <= 2) ? n + 2 : n + 3;  // one-sided stencil extent
    if (s + (pts - 1) * hmax <= ds.domain_hi)
      mode = +1;
    else if (s - (pts - 1) * hmax >= ds.domain_lo)
      mode = -1;
    else
      throw std::domain_error("nth_derivative: stencil does not fit in domain");
  }

  std::vector<V> t(levels);
  for (int i = 0; i < levels; ++i) {
    double h = h0 * std::pow(2.0, levels - 1 - i);  // coarse -> fine
    t[i] = mode == 0 ? detail::central_stencil<F, V>(f, s, n, h)
                     : detail::onesided_stencil<F, V>(f, s, n, h, mode);
  }
  // Central stencils have even error series (h^2, h^4, ...); one-sided have
  // every power from h^2 up.
  for (int j = 1; j < levels; ++j) {
    double order = (mode == 0) ? 2.0 * j : 1.0 + j;
    double r = std::pow(2.0, order);
    for (int i = levels - 1; i >= j; --i) t[i] = (r * t[i] - t[i - 1]) / (r - 1.0);
  }
  return t[levels - 1];
}

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> gk_nodes = {
    0.0000000000000000000000000, 0.2077849550078984676006894,
    0.4058451513773971669066064, 0.5860872354676911302941448,
    0.7415311855993944398638648, 0.8648644233597690727897128,
    0.9491079123427585245261897, 0.9914553711208126392068547};
inline constexpr std::array<double, 8> k15_weights = {
    0.2094821410847278280129992, 0.2044329400752988924141620,
    0.1903505780647854099132564, 0.1690047266392679028265834,
    0.1406532597155259187451896, 0.1047900103222501838398763,
    0.0630920926299785532907007, 0.0229353220105292249637320};
inline constexpr std::array<double, 4> g7_weights = {
    0.4179591836734693877551020, 0.3818300505051189449503698,
    0.2797053914892766679014678, 0.1294849661688696932706114};

template <class F, class V>
void gk15(F& f, double a, double b, V& kronrod, double& err, double& resabs) {
  const double m = 0.5 * (a + b), hl = 0.5 * (b - a);
  V fc = f(m);
  V k = k15_weights[0] * fc;
  V g = g7_weights[0] * fc;
  double rabs = k15_weights[0] * value_norm<V>(fc);
  for (int i = 1; i < 8; ++i) {
    V fp = f(m + hl * gk_nodes[i]);
    V fm = f(m - hl * gk_nodes[i]);
    V s = fp + fm;
    k += k15_weights[i] * s;
    rabs += k15_weights[i] * (value_norm<V>(fp) + value_norm<V>(fm));
    if (i % 2 == 0) g += g7_weights[i / 2] * s;
  }
  kronrod = k * hl;
  err = value_norm<V>((k - g) * hl);
  resabs = rabs * hl;
}

struct Segment {
  double a, b, err, resabs;
  std::size_t idx;
  bool operator<(const Segment& o) const { return err < o.err; }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. The result error is
/// kept below max(abs_tol, rel_tol * |result|) or the roundoff floor of the
/// integrand, whichever is larger; exceeding the subdivision budget throws
/// QuadratureBudgetError with the best estimate.
template <class F>
auto integrate_adaptive(F&& f, double a, double b,
                        const QuadratureSettings& qs = {}) {
  using V = std::invoke_result_t<F&, double>;
  if (a == b) return V{};
  const double eps = std::numeric_limits<double>::epsilon();
  V total;
  double err0, resabs_total;
  detail::gk15<F, V>(f, a, b, total, err0, resabs_total);
  std::priority_queue<detail::Segment> heap;
  std::vector<V> values;
  values.push_back(total);
  heap.push({a, b, err0, resabs_total, 0});
  double err_total = err0;
  int splits = 0;
  auto converged = [&]() {
    double tol = std::max(qs.abs_tol, qs.rel_tol * detail::value_norm<V>(total));
    double floor = std::max(100.0, 10.0 * qs.noise_floor_scale) * eps * resabs_total;
    return err_total <= std::max(tol, floor);
  };
  while (!converged()) {
    if (splits >= qs.max_subdivisions)
      throw QuadratureBudgetError(Complex(total), err_total);
    detail::Segment worst = heap.top();
    heap.pop();
    double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) {
      // Interval at rounding resolution; accept its estimate as exact.
      err_total -= worst.err;
      continue;
    }
    V vl, vr;
    double el, er, rl, rr;
    detail::gk15<F, V>(f, worst.a, m, vl, el, rl);
    detail::gk15<F, V>(f, m, worst.b, vr, er, rr);
    total += vl + vr - values[worst.idx];
    err_total += el + er - worst.err;
    resabs_total += rl + rr - worst.resabs;
    values[worst.idx] = vl;
    values.push_back(vr);
    heap.push({worst.a, m, el, rl, worst.idx});
    heap.push({m, worst.b, er, rr, values.size() - 1});
    ++splits;
  }
  // Re-sum segments once to shed accumulated cancellation in the updates.
  V resum{};
  for (const V& v : values) resum += v;
  return resum;
}

/// Computes \int_0^S s^{mu-1} g(s) ds for mu in (0, 1]. The substitution
/// s = u^{1/mu} removes the endpoint singularity.
template <class F>
auto integrate_endpoint_singular(F&& g, double S, double mu,
                                 const QuadratureSettings& qs = {}) {
  using V = std::invoke_result_t<F&, double>;
  if (!(mu > 0.0 && mu <= 1.0))
    throw std::domain_error("integrate_endpoint_singular: mu must be in (0,1]");
  if (S < 0.0) throw std::domain_error("integrate_endpoint_singular: S < 0");
  if (S == 0.0) return V{};
  if (mu == 1.0) return integrate_adaptive(g, 0.0, S, qs);
  const double inv_mu = 1.0 / mu;
  auto h = [&](double u) { return (1.0 / mu) * g(std::pow(u, inv_mu)); };
  return integrate_adaptive(h, 0.0, std::pow(S, mu), qs);
}

/// Fixed 16-point Gauss-Legendre rule on [0, 1] (smooth integrands only).
template <class F>
auto gauss16_01(F&& f) {
  using V = std::invoke_result_t<F&, double>;
  static constexpr std::array<double, 8> x = {
      0.0052995325041750337019, 0.0277124884633837102743,
      0.0671843988060841224019, 0.1222977958224984867952,
      0.1910618777986781147150, 0.2709916111713863151599,
      0.3591982246103705422868, 0.4524937450811812866824};
  static constexpr std::array<double, 8> w = {
      0.0135762297058770482066, 0.0311267619693239468159,
      0.0475792558412463928441, 0.0623144856277669384470,
      0.0747979944082883679845, 0.0845782596975012679330,
      0.0913017075224617918882, 0.0947253052275342510846};
  V acc{};
  for (int i = 0; i < 8; ++i) acc += w[i] * (f(x[i]) + f(1.0 - x[i]));
  return acc;
}

}  // namespace phasekit

#endif  // PHASEKIT_NUMERICS_HPP
