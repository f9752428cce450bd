#ifndef LQD_PLANAR_QUAD_HPP
#define LQD_PLANAR_QUAD_HPP

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "lqd/complex_poly.hpp"

namespace lqd {

namespace detail {

/** Gauss-Legendre nodes/weights on [-1, 1], cached per order. */
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre_base(
    int n) {
  thread_local std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-like initial guess
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

}  // namespace detail

/** Gauss-Legendre nodes/weights on [a, b]. */
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a,
                                                                          double b) {
  const auto& base = detail::gauss_legendre_base(n);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (b - a) * base.first[i] + 0.5 * (a + b);
    w[i] = 0.5 * (b - a) * base.second[i];
  }
  return {x, w};
}

/** C-infinity step: 0 for x<=0, 1 for x>=1. */
inline double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = std::exp(-1.0 / x);
  double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

/** Radial bump: 1 for s<=r1, 0 for s>=r2, smooth in between. */
inline double radial_bump(double s, double r1, double r2) {
  return 1.0 - smooth_step((s - r1) / (r2 - r1));
}

/**
 * Integral of F over the disk |u - center| < radius with the normalized area
 * measure dA = dx dy / pi. Polar grid centered at the singular point, so
 * integrable center singularities (1/|u-c| type) cost no accuracy.
 */
template <typename F>
cplx disk_patch_integral(F&& f, cplx center, double radius, int nr = 64, int nt = 256) {
  auto [xs, ws] = gauss_legendre(nr, 0.0, radius);
  cplx acc(0.0);
  for (int i = 0; i < nr; ++i) {
    double s = xs[i];
    cplx ring(0.0);
    for (int k = 0; k < nt; ++k) {
      double th = 2.0 * M_PI * k / nt;
      cplx u = center + s * cplx(std::cos(th), std::sin(th));
      ring += f(u);
    }
    acc += ws[i] * s * ring * (2.0 * M_PI / nt);
  }
  return acc / M_PI;
}

/** Integral of F over the annulus r1 < |u| < r2 (normalized measure). */
template <typename F>
cplx annulus_integral(F&& f, double r1, double r2, int nr = 64, int nt = 256) {
  if (!(r2 > r1 && r1 >= 0.0))
    throw error(errc::bad_input, "annulus_integral: bad radii");
  auto [xs, ws] = gauss_legendre(nr, r1, r2);
  cplx acc(0.0);
  for (int i = 0; i < nr; ++i) {
    double s = xs[i];
    cplx ring(0.0);
    for (int k = 0; k < nt; ++k) {
      double th = 2.0 * M_PI * k / nt;
      cplx u = s * cplx(std::cos(th), std::sin(th));
      ring += f(u);
    }
    acc += ws[i] * s * ring * (2.0 * M_PI / nt);
  }
  return acc / M_PI;
}

/** rho0 weight. */
inline double rho0(const cplx& w) {
  double a = std::norm(w);
  return 1.0 / a;
}

/**
 * Principal-value weighted Cauchy transform over the complement of a disk,
 *   C(w) = int_{|xi|>r} |xi|^{-2} / (w - xi) dA(xi),  |w| > r,
 * by direct 2-D quadrature: a polar patch around the Cauchy pole glued to
 * annular zones with a smooth bump, plus doubling outer zones until the
 * tail contribution is negligible.
 */
inline cplx weighted_cauchy_complement_disk(double r, const cplx& w, double tail_tol = 1e-9) {
  double rho_w = std::abs(w);
  if (!(rho_w > r))
    throw error(errc::cutoff_violation, "weighted_cauchy_complement_disk: |w| <= r");

  double delta = std::min(0.35 * rho_w, 0.45 * (rho_w - r));
  double b1 = 0.5 * delta, b2 = 0.9 * delta;
  auto chi = [&](const cplx& xi) { return radial_bump(std::abs(xi - w), b1, b2); };
  auto F = [&](const cplx& xi) { return rho0(xi) / (w - xi); };

  // angular resolution controlled by the bump feature scale
  int nt = 512;
  while (nt < 16384 && nt * delta < 150.0 * rho_w) nt *= 2;

  cplx acc = disk_patch_integral([&](cplx xi) { return F(xi) * chi(xi); }, w, b2, 64, 256);

  auto rest = [&](double s1, double s2, int nr) {
    return annulus_integral([&](cplx xi) { return F(xi) * (1.0 - chi(xi)); }, s1, s2, nr,
                            nt);
  };
  double lo = rho_w - delta, hi = rho_w + delta;
  acc += rest(r, lo, 64);
  acc += rest(lo, hi, 64);
  double R = std::max(hi, 2.0 * rho_w);
  acc += rest(hi, R, 64);
  // doubling tail zones; the angular integral cancels exactly for |xi|>|w|,
  // so these converge immediately
  for (int z = 0; z < 40; ++z) {
    cplx tail = annulus_integral(F, R, 2.0 * R, 32, 64);
    acc += tail;
    R *= 2.0;
    if (std::abs(tail) < tail_tol * (1.0 + std::abs(acc))) break;
  }
  return acc;
}

/**
 * Weighted Cauchy transform over an annulus r1 < |xi| < r2, principal value
 * when w lies inside the annulus.
 */
inline cplx weighted_cauchy_annulus(double r1, double r2, const cplx& w) {
  double rho_w = std::abs(w);
  auto F = [&](const cplx& xi) { return rho0(xi) / (w - xi); };
  if (rho_w <= r1 || rho_w >= r2) {
    // pole outside: plain smooth quadrature, split at |w| not needed
    int nt = 256;
    double gap = std::min(std::abs(rho_w - r1), std::abs(rho_w - r2));
    while (nt < 8192 && nt * gap < 60.0 * std::max(rho_w, r2)) nt *= 2;
    return annulus_integral(F, r1, r2, 96, nt);
  }
  double delta = std::min({0.35 * rho_w, 0.45 * (rho_w - r1), 0.45 * (r2 - rho_w)});
  double b1 = 0.5 * delta, b2 = 0.9 * delta;
  auto chi = [&](const cplx& xi) { return radial_bump(std::abs(xi - w), b1, b2); };
  int nt = 512;
  while (nt < 16384 && nt * delta < 150.0 * rho_w) nt *= 2;
  cplx acc = disk_patch_integral([&](cplx xi) { return F(xi) * chi(xi); }, w, b2, 64, 256);
  auto rest = [&](double s1, double s2) {
    return annulus_integral([&](cplx xi) { return F(xi) * (1.0 - chi(xi)); }, s1, s2, 64,
                            nt);
  };
  acc += rest(r1, rho_w - delta);
  acc += rest(rho_w - delta, rho_w + delta);
  acc += rest(rho_w + delta, r2);
  return acc;
}

/** Weighted area of an annulus: int |xi|^{-2} dA over r1<|xi|<r2. */
inline cplx weighted_area_annulus(double r1, double r2, int nr = 64, int nt = 256) {
  if (!(r1 > 0.0)) throw error(errc::cutoff_violation, "weighted_area_annulus: r1 <= 0");
  return annulus_integral([](cplx xi) { return cplx(rho0(xi)); }, r1, r2, nr, nt);
}

/**
 * Pullback integral of Fw over the host domain of a conformal map given as
 * callables (phi, dphi) on the closed reference disk. For an unbounded host
 * the reference variable is inverted, z = 1/u, and the point at infinity
 * becomes the grid center, so kernels decaying like 1/w or faster integrate
 * cleanly. Center singularities of polar type are handled by the grid;
 * anything stronger must be removed by the caller (bump splitting).
 */
template <typename MapF, typename DMapF, typename F>
cplx pullback_area_integral(MapF&& phi, DMapF&& dphi, bool unbounded, F&& Fw, int nr = 64,
                            int nt = 256) {
  if (!unbounded) {
    return disk_patch_integral(
        [&](cplx z) {
          cplx w = phi(z);
          cplx d = dphi(z);
          return Fw(w) * std::norm(d);
        },
        cplx(0.0), 1.0, nr, nt);
  }
  return disk_patch_integral(
      [&](cplx u) {
        cplx z = 1.0 / u;
        cplx w = phi(z);
        cplx d = dphi(z);
        double jac = std::norm(d) / std::norm(u * u);
        return Fw(w) * jac;
      },
      cplx(0.0), 1.0, nr, nt);
}

}  // namespace lqd

#endif  // LQD_PLANAR_QUAD_HPP
