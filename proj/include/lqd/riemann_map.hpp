#ifndef LQD_RIEMANN_MAP_HPP
#define LQD_RIEMANN_MAP_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "lqd/complex_poly.hpp"
#include "lqd/contour.hpp"

namespace lqd {

/**
 * Unimodular-on-circle Mobius factor vanishing at lambda. Works for lambda
 * inside or outside the unit disk; b_0(z) = z by convention.
 */
struct BlaschkeFactor {
  cplx lambda{0.0};

  bool degenerate() const { return std::abs(lambda) < 1e-14; }

  cplx eval(const cplx& z) const {
    if (degenerate()) return z;
    cplx u = std::conj(lambda) / std::abs(lambda);
    return u * (z - lambda) / (std::conj(lambda) * z - 1.0);
  }

  cplx deriv(const cplx& z) const {
    if (degenerate()) return cplx(1.0);
    cplx u = std::conj(lambda) / std::abs(lambda);
    cplx d = std::conj(lambda) * z - 1.0;
    return u * (std::norm(lambda) - 1.0) / (d * d);
  }

  /** As a rational function of z. */
  RationalFn rational() const {
    if (degenerate()) return RationalFn::identity();
    cplx u = std::conj(lambda) / std::abs(lambda);
    return RationalFn(Poly({-u * lambda, u}), Poly({cplx(-1.0), std::conj(lambda)}));
  }
};

inline cplx blaschke_eval(const BlaschkeFactor& b, const cplx& z) { return b.eval(z); }

enum class Side { bounded, unbounded };
enum class InnerKind { one, zfact, blaschke, z_blaschke };

/**
 * Conformal map in factored normal form,
 *   phi(z) = prefactor * inner(z) * exp(rs(z)),  rs = r reflected about |z|=1.
 *
 * Bounded side: phi maps the unit disk, r vanishes at infinity (poles in D).
 * Unbounded side: phi maps the exterior disk, r(0) = 0 (poles outside D),
 * and prefactor/|z0| conventions keep phi'(inf) > 0 for the constructed
 * families.
 */
class RiemannMap {
 public:
  RiemannMap() = default;

  static RiemannMap make(Side side, InnerKind inner, cplx prefactor, cplx z0,
                         RationalFn r) {
    RiemannMap m;
    m.side_ = side;
    m.inner_ = inner;
    m.prefactor_ = prefactor;
    m.z0_ = z0;
    m.r_ = std::move(r);
    m.rs_ = m.r_.reflect();
    m.rs_deriv_ = m.rs_.derivative();
    m.validate();
    return m;
  }

  Side side() const { return side_; }
  bool unbounded() const { return side_ == Side::unbounded; }
  InnerKind inner_kind() const { return inner_; }
  cplx prefactor() const { return prefactor_; }
  cplx inner_zero() const { return z0_; }
  const RationalFn& exponent() const { return r_; }        // r
  const RationalFn& exponent_refl() const { return rs_; }  // r#

  /** Zero of phi inside the reference domain, if any (0 in the image). */
  std::optional<cplx> domain_zero() const {
    switch (inner_) {
      case InnerKind::one:
        return std::nullopt;
      case InnerKind::zfact:
        return side_ == Side::bounded ? std::optional<cplx>(cplx(0.0)) : std::nullopt;
      case InnerKind::blaschke:
      case InnerKind::z_blaschke:
        return z0_;
    }
    return std::nullopt;
  }

  bool zero_in_image() const { return domain_zero().has_value(); }

  cplx inner_eval(const cplx& z) const {
    switch (inner_) {
      case InnerKind::one:
        return cplx(1.0);
      case InnerKind::zfact:
        return z;
      case InnerKind::blaschke:
        return BlaschkeFactor{z0_}.eval(z);
      case InnerKind::z_blaschke:
        return z * BlaschkeFactor{z0_}.eval(z);
    }
    return cplx(1.0);
  }

  cplx inner_deriv(const cplx& z) const {
    BlaschkeFactor b{z0_};
    switch (inner_) {
      case InnerKind::one:
        return cplx(0.0);
      case InnerKind::zfact:
        return cplx(1.0);
      case InnerKind::blaschke:
        return b.deriv(z);
      case InnerKind::z_blaschke:
        return b.eval(z) + z * b.deriv(z);
    }
    return cplx(0.0);
  }

  cplx eval(const cplx& z) const {
    return prefactor_ * inner_eval(z) * std::exp(rs_.eval(z));
  }

  cplx deriv(const cplx& z) const {
    cplx e = std::exp(rs_.eval(z));
    return prefactor_ * e * (inner_deriv(z) + inner_eval(z) * rs_deriv_.eval(z));
  }

  /** phi'(infinity) for unbounded maps (the conformal radius times phase). */
  cplx deriv_at_infinity() const {
    if (side_ != Side::unbounded)
      throw error(errc::bad_input, "deriv_at_infinity: bounded map");
    // inner/z -> 1 (zfact) or 1/|z0| (z_blaschke); rs(inf) = conj(r(0)) = 0
    cplx lim = (inner_ == InnerKind::z_blaschke) ? cplx(1.0 / std::abs(z0_)) : cplx(1.0);
    return prefactor_ * lim;
  }

  /** m-th derivative by a circle contour around z (spectrally accurate). */
  cplx deriv_n(const cplx& z, int m) const {
    if (m == 0) return eval(z);
    if (m == 1) return deriv(z);
    double rad = 0.45 * distance_to_singularity(z);
    cplx acc = detail::circle_integral(
        [&](cplx zeta) { return eval(zeta) / std::pow(zeta - z, double(m + 1)); }, z, rad,
        256);
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    return fact * acc;
  }

  double distance_to_singularity(const cplx& z) const {
    double d = 1e30;
    for (const cplx& p : rs_.poles()) d = std::min(d, std::abs(z - p));
    if (inner_ == InnerKind::blaschke || inner_ == InnerKind::z_blaschke) {
      cplx bp = 1.0 / std::conj(z0_);
      d = std::min(d, std::abs(z - bp));
    }
    return std::min(d, 10.0);
  }

  /**
   * Numerical inverse: solve phi(z) = w by Newton, seeded from boundary and
   * ring samples of the reference domain.
   */
  cplx inverse(const cplx& w, std::optional<cplx> seed = std::nullopt) const {
    std::vector<cplx> seeds;
    if (seed) seeds.push_back(*seed);
    build_seeds(w, seeds);
    for (const cplx& s0 : seeds) {
      cplx z = s0;
      bool ok = false;
      for (int it = 0; it < 50; ++it) {
        cplx fv, dv;
        try {
          fv = eval(z) - w;
          dv = deriv(z);
        } catch (const error&) {
          break;
        }
        if (std::abs(dv) < 1e-300) break;
        cplx step = fv / dv;
        z -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) {
          ok = true;
          break;
        }
        if (std::abs(z) > 1e8) break;
      }
      if (!ok) continue;
      if (std::abs(eval(z) - w) < 1e-9 * (1.0 + std::abs(w))) {
        bool in_ref = unbounded() ? std::abs(z) >= 0.999 : std::abs(z) <= 1.001;
        if (in_ref) return z;
      }
    }
    throw error(errc::inversion_failure, "inverse: Newton did not converge");
  }

 private:
  void validate() const {
    // side conventions on r
    if (side_ == Side::bounded) {
      if (!r_.is_zero() && r_.num().degree() >= r_.den().degree())
        throw error(errc::bad_input, "RiemannMap: bounded-side r must vanish at infinity");
      if (inner_ == InnerKind::z_blaschke)
        throw error(errc::bad_input, "RiemannMap: z*b inner factor is an unbounded form");
    } else {
      if (!r_.is_zero() && std::abs(r_.eval(cplx(0.0))) > 1e-9)
        throw error(errc::bad_input, "RiemannMap: unbounded-side r must vanish at 0");
      if (inner_ == InnerKind::one || inner_ == InnerKind::blaschke)
        throw error(errc::bad_input, "RiemannMap: unbounded maps carry the z factor");
    }
    if ((inner_ == InnerKind::blaschke || inner_ == InnerKind::z_blaschke) &&
        std::abs(z0_) < 1e-14)
      throw error(errc::bad_input, "RiemannMap: blaschke zero at 0 is the zfact case");
  }

  void build_seeds(const cplx& w, std::vector<cplx>& seeds) const {
    // nearest boundary sample first, then rings on the reference side
    int best = 0;
    double dbest = 1e300;
    for (int k = 0; k < 64; ++k) {
      double t = 2.0 * M_PI * k / 64;
      cplx z(std::cos(t), std::sin(t));
      double d;
      try {
        d = std::abs(eval(z) - w);
      } catch (const error&) {
        continue;
      }
      if (d < dbest) {
        dbest = d;
        best = k;
      }
    }
    double tb = 2.0 * M_PI * best / 64;
    seeds.push_back(cplx(std::cos(tb), std::sin(tb)) * (unbounded() ? 1.05 : 0.95));
    const double rings_b[] = {0.8, 0.5, 0.25};
    const double rings_u[] = {1.25, 2.0, 4.0, 8.0};
    if (unbounded()) {
      for (double rho : rings_u)
        for (int k = 0; k < 8; ++k) {
          double t = 2.0 * M_PI * (k + 0.5) / 8;
          seeds.push_back(rho * cplx(std::cos(t), std::sin(t)));
        }
    } else {
      for (double rho : rings_b)
        for (int k = 0; k < 8; ++k) {
          double t = 2.0 * M_PI * (k + 0.5) / 8;
          seeds.push_back(rho * cplx(std::cos(t), std::sin(t)));
        }
    }
  }

  Side side_ = Side::bounded;
  InnerKind inner_ = InnerKind::one;
  cplx prefactor_{1.0};
  cplx z0_{0.0};
  RationalFn r_, rs_, rs_deriv_;
};

/**
 * Sample the image of the unit circle. Orientation: the host domain lies on
 * the left for bounded maps and on the right for unbounded ones.
 */
inline BoundaryCurve boundary_sample(const RiemannMap& map, int n) {
  BoundaryCurve c;
  c.orientation = map.unbounded() ? -1 : +1;
  c.t.resize(n);
  c.w.resize(n);
  c.dw.resize(n);
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * M_PI * k / n;
    cplx e(std::cos(t), std::sin(t));
    cplx w = map.eval(e);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw error(errc::non_finite, "boundary_sample: map blows up on the circle");
    c.t[k] = t;
    c.w[k] = w;
    c.dw[k] = map.deriv(e) * cplx(0.0, 1.0) * e;
  }
  return c;
}

/** Domain data derived from a map: side, singularity, boundary cache. */
struct DomainSpec {
  RiemannMap map;
  BoundaryCurve curve;
  bool unbounded = false;
  bool singular = false;  // 0 in the domain
  double dist0 = 0.0;     // distance from 0 to the sampled boundary

  static DomainSpec from_map(const RiemannMap& m, int n = 1024) {
    DomainSpec d;
    d.map = m;
    d.curve = boundary_sample(m, n);
    d.unbounded = m.unbounded();
    d.singular = m.zero_in_image();
    d.dist0 = d.curve.min_distance(cplx(0.0));
    if (d.dist0 < 1e-12)
      throw error(errc::bad_input, "DomainSpec: boundary passes through 0");
    return d;
  }

  bool contains(const cplx& p) const { return in_host_domain(curve, p); }
};

/** Argument-principle zero count of phi over the unit circle. */
inline int circle_winding(const RiemannMap& map, int n = 2048, bool divide_z = false) {
  double total = 0.0;
  cplx prev = map.eval(cplx(1.0, 0.0));
  if (divide_z) prev /= cplx(1.0, 0.0);
  for (int k = 1; k <= n; ++k) {
    double t = 2.0 * M_PI * k / n;
    cplx e(std::cos(t), std::sin(t));
    cplx v = map.eval(e);
    if (divide_z) v /= e;
    total += std::arg(v / prev);
    prev = v;
  }
  double wind = total / (2.0 * M_PI);
  double nearest = std::round(wind);
  if (std::abs(wind - nearest) > 0.25)
    throw error(errc::zero_on_boundary, "circle_winding: non-integer winding number");
  return static_cast<int>(nearest);
}

struct OuterFactorResult {
  InnerKind inner_detected = InnerKind::one;
  std::optional<cplx> z0;
  std::vector<cplx> outer;  // boundary samples of the outer factor on |z|=1
  int winding = 0;
};

/**
 * Inner/outer split of the map from boundary data alone: the zero count by
 * the argument principle, the zero location by a residue integral plus
 * Newton, and the outer factor through the Poisson-kernel integral of
 * ln|phi|^2 evaluated at the nodes (principal value with the singular node
 * removed by subtraction). Unbounded maps are divided by z first.
 */
inline OuterFactorResult outer_factor_numeric(const RiemannMap& map, int n = 1024) {
  OuterFactorResult out;
  const bool unb = map.unbounded();

  BoundaryCurve ref = BoundaryCurve::circle(0.0, 1.0, n);
  std::vector<cplx> f(n), fdot(n), g(n), gdot(n);
  for (int k = 0; k < n; ++k) {
    cplx z = ref.w[k];
    cplx phi = map.eval(z);
    cplx dphi_dt = map.deriv(z) * cplx(0.0, 1.0) * z;
    cplx fv = unb ? phi / z : phi;
    // d/dt of phi/z = (phi' * iz * z - phi * iz)/z^2
    cplx fd = unb ? (dphi_dt - phi * cplx(0.0, 1.0)) / z : dphi_dt;
    if (std::abs(fv) < 1e-12)
      throw error(errc::zero_on_boundary, "outer_factor_numeric: zero on the circle");
    f[k] = fv;
    fdot[k] = fd;
    g[k] = std::log(std::norm(fv));
    gdot[k] = 2.0 * (fd / fv).real();
  }

  // zero count inside the factorization side
  double total = 0.0;
  for (int k = 0; k < n; ++k) total += std::arg(f[(k + 1) % n] / f[k]);
  double wind = total / (2.0 * M_PI);
  if (std::abs(wind - std::round(wind)) > 0.25)
    throw error(errc::zero_on_boundary, "outer_factor_numeric: winding is not an integer");
  int zeros_in_disk = static_cast<int>(std::round(wind));
  // for unbounded maps f is analytic outside; ccw winding = -#zeros outside
  int zero_count = unb ? -zeros_in_disk : zeros_in_disk;
  out.winding = zero_count;
  if (zero_count < 0 || zero_count > 1)
    throw error(errc::bad_input, "outer_factor_numeric: unexpected zero count");

  if (zero_count == 1) {
    // residue integral gives the zero for the bounded case; Newton refines
    cplx z0;
    if (!unb) {
      std::vector<cplx> h(n);
      for (int k = 0; k < n; ++k) h[k] = ref.w[k] * fdot[k] / f[k];
      cplx acc(0.0);
      for (int k = 0; k < n; ++k) acc += h[k];
      z0 = acc / double(n);
    } else {
      // seed a ring scan outside the disk
      double best = 1e300;
      for (double rho : {1.3, 1.8, 2.6, 4.0, 6.0}) {
        for (int k = 0; k < 32; ++k) {
          double t = 2.0 * M_PI * k / 32;
          cplx z = rho * cplx(std::cos(t), std::sin(t));
          double v = std::abs(map.eval(z));
          if (v < best) {
            best = v;
            z0 = z;
          }
        }
      }
    }
    for (int it = 0; it < 60; ++it) {
      cplx fv = map.eval(z0);
      cplx dv = map.deriv(z0);
      if (std::abs(dv) < 1e-300) break;
      cplx step = fv / dv;
      z0 -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z0))) break;
    }
    out.z0 = z0;
    if (std::abs(z0) < 1e-8) {
      out.inner_detected = InnerKind::zfact;
      out.z0.reset();
    } else {
      out.inner_detected = unb ? InnerKind::z_blaschke : InnerKind::blaschke;
    }
  } else {
    out.inner_detected = unb ? InnerKind::zfact : InnerKind::one;
  }

  // outer factor boundary values via the Poisson-type kernel:
  //   exponent(z) = int g/(xi - z) dxi - (1/2) int g/xi dxi over the circle,
  // boundary limits taken from the analytic side.
  cplx M(0.0);
  {
    std::vector<cplx> gq(n);
    for (int k = 0; k < n; ++k) gq[k] = g[k] / ref.w[k];
    M = contour_integral_raw(ref, gq);
  }
  out.outer.resize(n);
  for (int j = 0; j < n; ++j) {
    cplx fdj = gdot[j];
    cplx pvJ(0.0);
    for (int k = 0; k < n; ++k) {
      if (k == j) {
        pvJ += fdj;
        continue;
      }
      pvJ += (g[k] - g[j]) * ref.dw[k] / (ref.w[k] - ref.w[j]);
    }
    cplx J = pvJ / cplx(0.0, double(n));
    cplx expo = unb ? (-J + 0.5 * M) : (J + g[j] - 0.5 * M);
    out.outer[j] = std::exp(expo);
  }
  return out;
}

}  // namespace lqd

#endif  // LQD_RIEMANN_MAP_HPP
