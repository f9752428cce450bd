#ifndef LQD_UNIVALENCE_HPP
#define LQD_UNIVALENCE_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "lqd/riemann_map.hpp"

namespace lqd {

struct UnivalenceResult {
  bool univalent = false;
  std::optional<std::pair<cplx, cplx>> witness;  // reference-domain pair mapping together
};

namespace detail {

inline bool segments_intersect(const cplx& a, const cplx& b, const cplx& c, const cplx& d) {
  auto cross = [](const cplx& u, const cplx& v) {
    return u.real() * v.imag() - u.imag() * v.real();
  };
  double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace detail

/**
 * Boundary-image simplicity test: pairwise segment sweep over the sampled
 * polyline, each hit refined by Newton on phi(e^{is}) = phi(e^{it}); plus the
 * argument-principle degree check against the inner-factor zero count.
 */
inline UnivalenceResult univalence_check(const RiemannMap& map, int n = 2048) {
  UnivalenceResult res;

  // degree check: winding of phi over the circle
  int expected;
  if (!map.unbounded())
    expected = map.zero_in_image() ? 1 : 0;
  else
    expected = map.zero_in_image() ? 0 : 1;
  int wind;
  try {
    wind = circle_winding(map, std::max(n, 2048));
  } catch (const error&) {
    return res;  // winding not an integer: boundary degenerate, not univalent
  }
  if (wind != expected) return res;

  BoundaryCurve c = boundary_sample(map, n);
  // Orientation gate: a univalent map keeps its host on the correct side, so
  // the sampled image curve must run counterclockwise. A clockwise simple
  // curve signals a fold (each enclosed value taken twice on the unbounded
  // side, or the image turned inside out on the bounded side); the pair
  // sweep below cannot see it because the boundary never crosses itself.
  if (c.raw_winding() != +1) return res;
  double scale = 0.0;
  for (const cplx& w : c.w) scale = std::max(scale, std::abs(w));

  auto refine = [&](double s0, double t0) -> std::optional<std::pair<double, double>> {
    double s = s0, t = t0;
    for (int it = 0; it < 40; ++it) {
      cplx es(std::cos(s), std::sin(s)), et(std::cos(t), std::sin(t));
      cplx F = map.eval(es) - map.eval(et);
      cplx Js = map.deriv(es) * cplx(0.0, 1.0) * es;
      cplx Jt = -map.deriv(et) * cplx(0.0, 1.0) * et;
      // solve [Js Jt] [ds dt]^T = -F in real coordinates
      double a = Js.real(), b = Jt.real(), cr = Js.imag(), dr = Jt.imag();
      double det = a * dr - b * cr;
      if (std::abs(det) < 1e-14 * (1.0 + std::abs(Js) * std::abs(Jt))) return std::nullopt;
      double ds = (-F.real() * dr + F.imag() * b) / det;
      double dt = (-a * F.imag() + cr * F.real()) / det;
      s += ds;
      t += dt;
      if (std::abs(ds) + std::abs(dt) < 1e-14) break;
    }
    cplx es(std::cos(s), std::sin(s)), et(std::cos(t), std::sin(t));
    if (std::abs(map.eval(es) - map.eval(et)) > 1e-10 * (1.0 + scale)) return std::nullopt;
    if (std::abs(es - et) < 1e-6) return std::nullopt;  // collapsed to a tangency
    return std::make_pair(s, t);
  };

  for (int i = 0; i < n; ++i) {
    const cplx &a = c.w[i], &b = c.w[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent around the seam
      const cplx &p = c.w[j], &q = c.w[(j + 1) % n];
      if (!detail::segments_intersect(a, b, p, q)) continue;
      auto hit = refine(c.t[i] + M_PI / n, c.t[j] + M_PI / n);
      if (hit) {
        res.witness = {cplx(std::cos(hit->first), std::sin(hit->first)),
                       cplx(std::cos(hit->second), std::sin(hit->second))};
        return res;
      }
      throw error(errc::inconclusive,
                  "univalence_check: crossing candidate below refinement tolerance");
    }
  }
  res.univalent = true;
  return res;
}

/**
 * Phase defect of the z b_{z0} e^{lambda z} family on the upper half circle.
 */
inline double univalence_delta(double theta, double abs_z0, double mu) {
  double a = (1.0 + abs_z0 * abs_z0) * std::cos(theta) - 2.0 * abs_z0 * std::cos(mu);
  double b = (1.0 - abs_z0 * abs_z0) * std::sin(theta);
  return std::atan2(b, a);
}

struct LambdaMaxResult {
  double value = 0.0;
  double theta_star = 0.0;
};

/**
 * Largest |lambda| keeping the one-point inner-factor family injective:
 *   min over theta in (0, pi) of (pi - delta(theta)) / sin(theta),
 * where delta depends on z0 only through |z0| and Arg(z0) + Arg(lambda).
 * Grid seed plus golden-section refinement; the theta -> pi limit is handled
 * in closed form.
 */
inline LambdaMaxResult lambda_max(const cplx& z0, double arg_lambda) {
  double az = std::abs(z0);
  if (az >= 1.0) throw error(errc::range_error, "lambda_max: |z0| must be < 1");
  double mu = std::arg(z0) + arg_lambda;
  if (az < 1e-300) mu = arg_lambda;  // z0 = 0: delta(theta) = theta

  auto objective = [&](double th) {
    return (M_PI - univalence_delta(th, az, mu)) / std::sin(th);
  };

  // one-sided limit at theta = pi
  double denom_pi = 1.0 + az * az + 2.0 * az * std::cos(mu);
  double limit_pi = (1.0 - az * az) / denom_pi;

  const int grid = 256;
  double best = limit_pi, best_th = M_PI;
  for (int k = 1; k <= grid; ++k) {
    double th = M_PI * k / (grid + 1);
    double v = objective(th);
    if (v < best) {
      best = v;
      best_th = th;
    }
  }
  if (best_th < M_PI) {
    double lo = std::max(1e-12, best_th - M_PI / (grid + 1));
    double hi = std::min(M_PI - 1e-12, best_th + M_PI / (grid + 1));
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-10) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = objective(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = objective(x2);
      }
    }
    double th = 0.5 * (a + b);
    double v = objective(th);
    if (v < best) {
      best = v;
      best_th = th;
    }
  }
  if (limit_pi < best) {
    best = limit_pi;
    best_th = M_PI;
  }
  return {best, best_th};
}

}  // namespace lqd

#endif  // LQD_UNIVALENCE_HPP
