#ifndef LQD_FABER_HPP
#define LQD_FABER_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "lqd/complex_poly.hpp"
#include "lqd/contour.hpp"
#include "lqd/riemann_map.hpp"

namespace lqd {

/**
 * Expansion data of a conformal map: Laurent coefficients at infinity for
 * unbounded maps, phi(z) = c z + f0 + f1/z + ...; Taylor coefficients at 0
 * for bounded ones.
 */
struct LaurentData {
  Side side = Side::unbounded;
  // unbounded: coeffs[0] = c, coeffs[1] = f0, coeffs[2] = f1, ...
  // bounded:   coeffs[j]  = Taylor coefficient a_j at 0
  std::vector<cplx> coeffs;

  cplx c() const { return side == Side::unbounded ? coeffs.at(0) : coeffs.at(1); }
  cplx f(int j) const { return coeffs.at(j + 1); }  // unbounded side
  int order() const { return static_cast<int>(coeffs.size()) - 2; }

  static LaurentData exterior(cplx c, std::vector<cplx> fs) {
    LaurentData d;
    d.side = Side::unbounded;
    d.coeffs.push_back(c);
    for (cplx x : fs) d.coeffs.push_back(x);
    return d;
  }
};

/**
 * Coefficients by circle contour integrals, cross-validated at a second
 * radius; disagreement signals that the expansion has not converged.
 */
inline LaurentData laurent_coeffs(const RiemannMap& map, int m) {
  LaurentData out;
  out.side = map.side();
  auto extract = [&](double R) {
    std::vector<cplx> cs(m + 2);
    int n = 512;
    for (int j = 0; j < m + 2; ++j) {
      cplx acc(0.0);
      for (int k = 0; k < n; ++k) {
        double t = 2.0 * M_PI * k / n;
        cplx z = R * cplx(std::cos(t), std::sin(t));
        // unbounded: coefficient of z^{1-j}; bounded: coefficient of z^{j}
        double p = map.unbounded() ? double(j) - 2.0 : -double(j) - 1.0;
        acc += map.eval(z) * std::pow(z, p) * z;
      }
      cs[j] = acc / double(n);
    }
    return cs;
  };
  double R1 = map.unbounded() ? 3.0 : 0.5;
  double R2 = map.unbounded() ? 2.0 : 0.35;
  std::vector<cplx> a = extract(R1), b = extract(R2);
  double scale = 0.0;
  for (const cplx& x : a) scale = std::max(scale, std::abs(x));
  for (int j = 0; j < m + 2; ++j)
    if (std::abs(a[j] - b[j]) > 1e-8 * (1.0 + scale))
      throw error(errc::non_convergence, "laurent_coeffs: radii disagree");
  out.coeffs = a;
  return out;
}

namespace detail {

/** Incomplete (partial) Bell polynomial B_{n,k}(x1..x_{n-k+1}). */
inline cplx bell_partial(int n, int k, const std::vector<cplx>& x) {
  if (n == 0 && k == 0) return cplx(1.0);
  if (n <= 0 || k <= 0) return cplx(0.0);
  auto binom = [](int a, int b) {
    double r = 1.0;
    for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  cplx acc(0.0);
  for (int i = 1; i <= n - k + 1; ++i)
    acc += binom(n - 1, i - 1) * x[i - 1] * bell_partial(n - i, k - 1, x);
  return acc;
}

/**
 * Transform of a single pole term 1/(z - z0)^n through the derivative
 * formula, given derivatives ders = {phi'(z0), phi''(z0), ...} and the image
 * location phi(z0): the result has poles of orders 1..n there.
 */
inline RationalFn bell_pole_image(int n, const std::vector<cplx>& ders, cplx image) {
  double fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;  // (n-1)!
  RationalFn acc;
  double kf = 1.0;  // (k-1)!
  for (int k = 1; k <= n; ++k) {
    if (k > 1) kf *= (k - 1);
    cplx coeff = kf / fact * bell_partial(n, k, ders);
    acc = acc + RationalFn::pole_term(coeff, image, k);
  }
  return acc;
}

}  // namespace detail

/** Faber transform context: the map plus cached expansion data. */
class FaberContext {
 public:
  explicit FaberContext(RiemannMap map, int laurent_order = 12)
      : map_(std::move(map)), order_(laurent_order) {}

  const RiemannMap& map() const { return map_; }
  bool unbounded() const { return map_.unbounded(); }

  const LaurentData& laurent() const {
    if (!laurent_) laurent_ = laurent_coeffs(map_, order_);
    return *laurent_;
  }

  /** Derivatives phi'(z0)..phi^(m)(z0). */
  std::vector<cplx> map_derivatives(cplx z0, int m) const {
    std::vector<cplx> d(m);
    for (int i = 1; i <= m; ++i) d[i - 1] = map_.deriv_n(z0, i);
    return d;
  }

  /**
   * Derivatives of the inverse map at w0: psi^(m)(w0) = m! * contour
   * integral of zeta phi'(zeta) / (phi(zeta) - w0)^{m+1} around psi(w0).
   */
  std::vector<cplx> inverse_derivatives(cplx w0, int m, cplx* zstar_out = nullptr) const {
    cplx zs = map_.inverse(w0);
    if (zstar_out) *zstar_out = zs;
    double rad = std::min(0.45 * map_.distance_to_singularity(zs), 0.3);
    // shrink until the circle encloses exactly the one preimage: the winding
    // of phi - w0 along it must be 1
    for (int tries = 0; tries < 16; ++tries) {
      double total = 0.0;
      cplx prev = map_.eval(zs + rad) - w0;
      bool bad = std::abs(prev) < 1e-13;
      for (int k = 1; k <= 128 && !bad; ++k) {
        double t = 2.0 * M_PI * k / 128;
        cplx v = map_.eval(zs + rad * cplx(std::cos(t), std::sin(t))) - w0;
        if (std::abs(v) < 1e-13) {
          bad = true;
          break;
        }
        total += std::arg(v / prev);
        prev = v;
      }
      if (!bad && std::abs(total / (2.0 * M_PI) - 1.0) < 0.25) break;
      rad *= 0.5;
    }
    std::vector<cplx> out(m);
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      fact *= i;
      cplx acc = detail::circle_integral(
          [&](cplx zeta) {
            return zeta * map_.deriv(zeta) / std::pow(map_.eval(zeta) - w0, double(i + 1));
          },
          zs, rad, 512);
      out[i - 1] = fact * acc;
    }
    return out;
  }

 private:
  RiemannMap map_;
  int order_;
  mutable std::optional<LaurentData> laurent_;
};

/**
 * Faber polynomial F_n (polynomial part of psi^n) from the expansion data,
 * by the standard recurrence
 *   c F_{n+1}(w) = (w - f0) F_n(w) - sum_{j=1..n} f_j F_{n-j}(w) - n f_n.
 */
inline Poly faber_poly_F(const LaurentData& L, int n) {
  if (L.side != Side::unbounded)
    throw error(errc::bad_input, "faber_poly_F: needs an unbounded-side expansion");
  if (L.order() < n)
    throw error(errc::insufficient_laurent_order, "faber_poly_F: expansion too short");
  std::vector<Poly> F(n + 1);
  F[0] = Poly::one();
  cplx c = L.c(), f0 = L.f(0);
  for (int k = 0; k < n; ++k) {
    Poly acc = Poly({-f0, cplx(1.0)}) * F[k];
    for (int j = 1; j <= k; ++j) acc = acc - L.f(j) * F[k - j];
    acc = acc - Poly::constant(double(k) * L.f(k));
    F[k + 1] = acc * (1.0 / c);
  }
  return F[n];
}

/** Inverse Faber polynomial W_n: polynomial part of phi^n via series powers. */
inline Poly faber_poly_W(const LaurentData& L, int n) {
  if (L.side != Side::unbounded)
    throw error(errc::bad_input, "faber_poly_W: needs an unbounded-side expansion");
  if (L.order() < n)
    throw error(errc::insufficient_laurent_order, "faber_poly_W: expansion too short");
  if (n == 0) return Poly::one();
  // series in powers z^{1}, z^{0}, z^{-1}, ...: a[i] multiplies z^{1-i}
  int keep = L.order() + 2;
  std::vector<cplx> base(L.coeffs.begin(), L.coeffs.end());
  std::vector<cplx> acc = base;  // phi^1, top power 1
  int top = 1;
  for (int p = 2; p <= n; ++p) {
    int ntop = top + 1;
    std::vector<cplx> next(std::min<size_t>(acc.size() + base.size() - 1, ntop + keep),
                           cplx(0.0));
    for (size_t i = 0; i < acc.size(); ++i)
      for (size_t j = 0; j < base.size(); ++j) {
        size_t idx = i + j;
        if (idx < next.size()) next[idx] += acc[i] * base[j];
      }
    acc = std::move(next);
    top = ntop;
  }
  // polynomial part: powers top-i >= 0
  std::vector<cplx> poly(top + 1, cplx(0.0));
  for (int i = 0; i <= top && i < static_cast<int>(acc.size()); ++i)
    poly[top - i] = acc[i];
  return Poly(std::move(poly));
}

enum class FaberDirection { forward, inverse };

inline Poly faber_polynomial(const FaberContext& ctx, int n, FaberDirection dir) {
  return dir == FaberDirection::forward ? faber_poly_F(ctx.laurent(), n)
                                        : faber_poly_W(ctx.laurent(), n);
}

/**
 * Forward Faber transform of a rational function. For a bounded map the
 * input must vanish at infinity with poles strictly inside the disk; for an
 * unbounded one the input is analytic on the closed disk (poles outside)
 * and may carry a polynomial part, which maps to Faber polynomials.
 */
inline RationalFn faber_rational(const FaberContext& ctx, const RationalFn& f) {
  PrincipalParts pp = rat_principal_parts(f);
  RationalFn out;
  const bool unb = ctx.unbounded();

  for (const PolePart& p : pp.parts) {
    double az = std::abs(p.location);
    if (std::abs(az - 1.0) < kEpsCluster)
      throw error(errc::pole_on_circle, "faber_rational: pole on the unit circle");
    if (!unb && az > 1.0)
      throw error(errc::bad_input, "faber_rational: interior transform needs poles in D");
    if (unb && az < 1.0)
      throw error(errc::bad_input, "faber_rational: exterior transform needs poles outside D");
    std::vector<cplx> ders = ctx.map_derivatives(p.location, p.order);
    cplx image = ctx.map().eval(p.location);
    for (int k = 1; k <= p.order; ++k) {
      if (p.coeffs[k - 1] == cplx(0.0)) continue;
      out = out + p.coeffs[k - 1] * detail::bell_pole_image(k, ders, image);
    }
  }

  if (!pp.poly_part.is_zero()) {
    if (!unb)
      throw error(errc::bad_input,
                  "faber_rational: interior transform input must vanish at infinity");
    for (int n = 0; n <= pp.poly_part.degree(); ++n) {
      cplx a = pp.poly_part.coeff(n);
      if (a == cplx(0.0)) continue;
      out = out + a * RationalFn::from_poly(faber_poly_F(ctx.laurent(), n));
    }
  }
  return out;
}

/**
 * Inverse Faber transform of a rational function with poles in the image
 * domain; polynomial parts (pole at infinity, unbounded case) map to the
 * inverse Faber polynomials W_n.
 */
inline RationalFn inv_faber_rational(const FaberContext& ctx, const RationalFn& f) {
  PrincipalParts pp = rat_principal_parts(f);
  RationalFn out;
  const bool unb = ctx.unbounded();

  for (const PolePart& p : pp.parts) {
    cplx zs;
    std::vector<cplx> ders = ctx.inverse_derivatives(p.location, p.order, &zs);
    for (int k = 1; k <= p.order; ++k) {
      if (p.coeffs[k - 1] == cplx(0.0)) continue;
      out = out + p.coeffs[k - 1] * detail::bell_pole_image(k, ders, zs);
    }
  }

  if (!pp.poly_part.is_zero()) {
    if (!unb)
      throw error(errc::bad_input,
                  "inv_faber_rational: interior transform input must vanish at infinity");
    for (int n = 0; n <= pp.poly_part.degree(); ++n) {
      cplx a = pp.poly_part.coeff(n);
      if (a == cplx(0.0)) continue;
      out = out + a * RationalFn::from_poly(faber_poly_W(ctx.laurent(), n));
    }
  }
  return out;
}

/**
 * Projection-based transforms straight from boundary data: the oracle route.
 * Forward: project f(psi(.)) onto the exterior of the image domain.
 * Inverse: project f(phi(.)) onto the disk side.
 */
inline cplx faber_numeric(const RiemannMap& map, const RationalFn& f, const cplx& w,
                          int n = 2048) {
  BoundaryCurve c = boundary_sample(map, n);
  std::vector<cplx> samples(n);
  for (int k = 0; k < n; ++k)
    samples[k] = f.eval(cplx(std::cos(c.t[k]), std::sin(c.t[k])));
  return cauchy_projection(c, samples, ProjSide::exterior, w);
}

inline cplx inv_faber_numeric(const RiemannMap& map, const RationalFn& f, const cplx& z,
                              int n = 2048) {
  BoundaryCurve circ = BoundaryCurve::circle(0.0, 1.0, n);
  std::vector<cplx> samples(n);
  for (int k = 0; k < n; ++k) samples[k] = f.eval(map.eval(circ.w[k]));
  // disk side: interior for bounded maps, exterior disk for unbounded ones
  ProjSide side = map.unbounded() ? ProjSide::interior : ProjSide::exterior;
  // circ's host is the unit disk; exterior projection lives on |z|>1
  return cauchy_projection(circ, samples, side, z);
}

}  // namespace lqd

#endif  // LQD_FABER_HPP
