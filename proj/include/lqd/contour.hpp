#ifndef LQD_CONTOUR_HPP
#define LQD_CONTOUR_HPP

#include <cmath>
#include <concepts>
#include <functional>
#include <vector>

#include "lqd/complex_poly.hpp"

namespace lqd {

enum class ProjSide { interior, exterior };

/**
 * Closed boundary sampled on a uniform parameter grid t_k = 2*pi*k/n.
 * `orientation` is +1 when the host domain lies on the left of the
 * t-increasing direction (positively oriented for the host).
 *
 * All contour integrals are 2*pi*i normalized.
 */
struct BoundaryCurve {
  std::vector<double> t;
  std::vector<cplx> w;
  std::vector<cplx> dw;  // dw/dt
  int orientation = +1;

  int size() const { return static_cast<int>(w.size()); }

  static BoundaryCurve circle(cplx center, double radius, int n, int orientation = +1) {
    BoundaryCurve c;
    c.orientation = orientation;
    c.t.resize(n);
    c.w.resize(n);
    c.dw.resize(n);
    for (int k = 0; k < n; ++k) {
      double tk = 2.0 * M_PI * k / n;
      cplx e(std::cos(tk), std::sin(tk));
      c.t[k] = tk;
      c.w[k] = center + radius * e;
      c.dw[k] = radius * cplx(0.0, 1.0) * e;
    }
    return c;
  }

  template <typename F, typename DF>
  static BoundaryCurve from_parametrization(F&& f, DF&& df, int n, int orientation = +1) {
    BoundaryCurve c;
    c.orientation = orientation;
    c.t.resize(n);
    c.w.resize(n);
    c.dw.resize(n);
    for (int k = 0; k < n; ++k) {
      double tk = 2.0 * M_PI * k / n;
      c.t[k] = tk;
      c.w[k] = f(tk);
      c.dw[k] = df(tk);
    }
    return c;
  }

  /** +1 if the t-increasing direction is counterclockwise. */
  int raw_winding() const {
    double area2 = 0.0;
    for (int k = 0; k < size(); ++k) {
      const cplx& a = w[k];
      const cplx& b = w[(k + 1) % size()];
      area2 += a.real() * b.imag() - a.imag() * b.real();
    }
    return area2 >= 0.0 ? +1 : -1;
  }

  double min_distance(const cplx& p) const {
    double d = 1e300;
    for (const cplx& x : w) d = std::min(d, std::abs(x - p));
    return d;
  }

  /** Near-boundary exclusion radius: a few grid spacings of arclength. */
  double eps_near(const cplx& p) const {
    int jmin = 0;
    double d = 1e300;
    for (int k = 0; k < size(); ++k) {
      double dk = std::abs(w[k] - p);
      if (dk < d) {
        d = dk;
        jmin = k;
      }
    }
    return 5.0 / size() * std::abs(dw[jmin]);
  }
};

/** (1/2*pi*i) * integral of f dw along the t-increasing direction. */
inline cplx contour_integral_raw(const BoundaryCurve& c, const std::vector<cplx>& f) {
  if (static_cast<int>(f.size()) != c.size())
    throw error(errc::bad_input, "contour_integral: sample count mismatch");
  cplx acc(0.0);
  for (int k = 0; k < c.size(); ++k) {
    if (!std::isfinite(f[k].real()) || !std::isfinite(f[k].imag()))
      throw error(errc::non_finite, "contour_integral: non-finite sample");
    acc += f[k] * c.dw[k];
  }
  return acc / cplx(0.0, double(c.size()));
}

/** Same, oriented positively for the host domain. */
inline cplx contour_integral(const BoundaryCurve& c, const std::vector<cplx>& f) {
  return double(c.orientation) * contour_integral_raw(c, f);
}

template <typename F>
  requires std::invocable<F, cplx>
cplx contour_integral(const BoundaryCurve& c, F&& fn) {
  std::vector<cplx> f(c.size());
  for (int k = 0; k < c.size(); ++k) f[k] = fn(c.w[k]);
  return contour_integral(c, f);
}

/** Winding number of the raw curve around p. */
inline int winding_number(const BoundaryCurve& c, const cplx& p) {
  cplx acc(0.0);
  for (int k = 0; k < c.size(); ++k) acc += c.dw[k] / (c.w[k] - p);
  double v = (acc / cplx(0.0, double(c.size()))).real();
  return static_cast<int>(std::lround(v));
}

/** True if p lies in the bounded region enclosed by the curve. */
inline bool encloses(const BoundaryCurve& c, const cplx& p) {
  return winding_number(c, p) == c.raw_winding();
}

/** True if p lies in the host domain of the curve. */
inline bool in_host_domain(const BoundaryCurve& c, const cplx& p) {
  bool inside = encloses(c, p);
  bool host_is_enclosed = (c.orientation == c.raw_winding());
  return host_is_enclosed ? inside : !inside;
}

/**
 * Cauchy projection P[f](w) onto the interior or exterior side of the host
 * domain, for w off the curve. `interior` integrates over the boundary of
 * the host domain; `exterior` over the boundary of its complement.
 */
inline cplx cauchy_projection(const BoundaryCurve& c, const std::vector<cplx>& f,
                              ProjSide side, const cplx& w) {
  double d = c.min_distance(w);
  if (d < c.eps_near(w))
    throw error(errc::near_boundary, "cauchy_projection: point too close to the contour");
  std::vector<cplx> g(c.size());
  for (int k = 0; k < c.size(); ++k) g[k] = f[k] / (c.w[k] - w);
  cplx raw = contour_integral_raw(c, g);
  double sign = (side == ProjSide::interior) ? double(c.orientation) : -double(c.orientation);
  return sign * raw;
}

template <typename F>
  requires std::invocable<F, cplx>
cplx cauchy_projection(const BoundaryCurve& c, F&& fn, ProjSide side, const cplx& w) {
  std::vector<cplx> f(c.size());
  for (int k = 0; k < c.size(); ++k) f[k] = fn(c.w[k]);
  return cauchy_projection(c, f, side, w);
}

/** df/dt at node j by the spectral (trigonometric) differentiation weights. */
inline cplx spectral_derivative_at(const BoundaryCurve& c, const std::vector<cplx>& f, int j) {
  int n = c.size();
  cplx acc(0.0);
  for (int k = 0; k < n; ++k) {
    if (k == j) continue;
    double d = 0.5 * (c.t[j] - c.t[k]);
    double wgt = 0.5 * (((j - k) % 2 + 2) % 2 == 0 ? 1.0 : -1.0) / std::tan(d);
    acc += wgt * f[k];
  }
  return acc;
}

namespace detail {

/**
 * Principal value of (1/2*pi*i) * PV int f/(xi - w_j) dxi along the raw
 * direction, given df/dt at the node. Removes the singular node by
 * subtraction, which keeps spectral accuracy for data analytic near the
 * curve.
 */
inline cplx pv_cauchy_raw(const BoundaryCurve& c, const std::vector<cplx>& f, int j,
                          const cplx& fdot_j) {
  int n = c.size();
  cplx acc(0.0);
  for (int k = 0; k < n; ++k) {
    if (k == j) {
      acc += fdot_j;  // limit of (f - f_j)/(xi - w_j) * dw
      continue;
    }
    acc += (f[k] - f[j]) * c.dw[k] / (c.w[k] - c.w[j]);
  }
  cplx J = acc / cplx(0.0, double(n));
  return J + f[j] * (0.5 * c.raw_winding());
}

}  // namespace detail

/**
 * Boundary value of the Cauchy projection at node j (limit from the side the
 * projection is analytic on). With fdot_j = df/dt at the node; pass
 * spectral_derivative_at(...) when no analytic derivative is available.
 */
inline cplx cauchy_projection_boundary(const BoundaryCurve& c, const std::vector<cplx>& f,
                                       ProjSide side, int j, const cplx& fdot_j) {
  cplx pv = detail::pv_cauchy_raw(c, f, j, fdot_j);
  // Plemelj: limit from the left of travel = pv + f/2, from the right = pv - f/2.
  if (side == ProjSide::interior) {
    // approach from inside the host domain
    if (c.orientation == +1) return pv + 0.5 * f[j];
    return -(pv - 0.5 * f[j]);
  }
  // approach from the complement side
  if (c.orientation == +1) return -(pv - 0.5 * f[j]);
  return pv + 0.5 * f[j];
}

}  // namespace lqd

#endif  // LQD_CONTOUR_HPP
