#ifndef LQD_VERIFY_HPP
#define LQD_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "lqd/families.hpp"
#include "lqd/planar_quad.hpp"
#include "lqd/univalence.hpp"

namespace lqd {

struct VerificationReport {
  std::string check;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  double ms = 0.0;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/** Points in the exterior of the domain, pushed off the boundary. */
inline std::vector<cplx> exterior_points(const DomainSpec& dom, int count,
                                         double offset_scale = 0.35) {
  int n = dom.curve.size();
  std::vector<std::pair<double, cplx>> candidates;  // (clearance, point)
  int stride = std::max(1, n / 64);
  for (int j = 0; j < n; j += stride) {
    cplx T = dom.curve.dw[j] / std::abs(dom.curve.dw[j]);
    // the host domain sits left of the travel direction when orientation=+1
    cplx outward = -cplx(0.0, 1.0) * T * double(dom.curve.orientation);
    // walk inward with shrinking offsets until a clean exterior point appears
    for (double off = offset_scale; off > 0.002 * offset_scale; off *= 0.6) {
      cplx p = dom.curve.w[j] + off * std::abs(dom.curve.dw[j]) * outward;
      if (dom.contains(p)) continue;
      double clear = dom.curve.min_distance(p);
      if (clear < 0.25 * off * std::abs(dom.curve.dw[j])) continue;
      candidates.emplace_back(clear, p);
      break;
    }
  }
  // prefer deep probes, keep them spread out
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double diam = 0.0;
  for (const cplx& w : dom.curve.w)
    for (int k = 0; k < n; k += n / 8) diam = std::max(diam, std::abs(w - dom.curve.w[k]));
  std::vector<cplx> pts;
  for (double sep = 0.08 * diam; sep > 1e-9 && static_cast<int>(pts.size()) < count;
       sep *= 0.5) {
    pts.clear();
    for (const auto& [clear, p] : candidates) {
      bool ok = true;
      for (const cplx& q : pts)
        if (std::abs(p - q) < sep) ok = false;
      if (ok) pts.push_back(p);
      if (static_cast<int>(pts.size()) >= count) break;
    }
  }
  if (static_cast<int>(pts.size()) < count)
    throw error(errc::bad_input, "exterior_points: could not place enough probes");
  return pts;
}

/** Admissibility: analytic on the closure, vanishing at 0 / infinity as required. */
inline void check_admissible(const DomainSpec& dom, const RationalFn& f) {
  for (const cplx& p : f.poles())
    if (dom.contains(p) || dom.curve.min_distance(p) < 1e-6)
      throw error(errc::inadmissible_test_function, "test function pole inside the closure");
  if (dom.unbounded) {
    if (f.num().degree() >= f.den().degree())
      throw error(errc::inadmissible_test_function, "test function must vanish at infinity");
  }
  if (dom.singular) {
    cplx f0 = f.eval(cplx(0.0));
    double scale = std::max(1.0, f.num().scale());
    if (std::abs(f0) > 1e-10 * scale)
      throw error(errc::inadmissible_test_function, "test function must vanish at 0");
  }
}

/** Default battery: low moments plus near-boundary kernels, all admissible. */
inline std::vector<RationalFn> default_battery(const DomainSpec& dom, int count = 12) {
  std::vector<RationalFn> fs;
  std::vector<cplx> ps = exterior_points(dom, std::max(4, (count + 2) / 2));
  auto monomial = [](int k) {
    std::vector<cplx> c(k + 1, cplx(0.0));
    c[k] = 1.0;
    return RationalFn::from_poly(Poly(c));
  };
  if (!dom.unbounded && dom.singular) {
    for (int k = 1; k <= 4; ++k) fs.push_back(monomial(k));
    for (size_t j = 0; j < ps.size() && fs.size() < size_t(count); ++j)
      fs.push_back(RationalFn::identity() * RationalFn::pole_term(1.0, ps[j], 2));
    for (size_t j = 0; j < ps.size() && fs.size() < size_t(count); ++j)
      fs.push_back(RationalFn::identity() * RationalFn::pole_term(1.0, ps[j], 1));
  } else if (!dom.unbounded && !dom.singular) {
    for (int k = 0; k <= 3; ++k) fs.push_back(monomial(k));
    for (size_t j = 0; j < ps.size() && fs.size() < size_t(count); ++j)
      fs.push_back(RationalFn::pole_term(1.0, ps[j], 1));
    for (size_t j = 0; j < ps.size() && fs.size() < size_t(count); ++j)
      fs.push_back(RationalFn::pole_term(1.0, ps[j], 2));
  } else if (dom.unbounded && !dom.singular) {
    // 0 lies in the complement: inverse monomials are admissible
    for (int k = 1; k <= 4; ++k)
      fs.push_back(RationalFn(Poly::one(), Poly::from_roots(std::vector<cplx>(k, cplx(0.0)))));
    for (size_t j = 0; j < ps.size() && fs.size() < size_t(count); ++j)
      fs.push_back(RationalFn::pole_term(1.0, ps[j], 1));
    for (size_t j = 0; j < ps.size() && fs.size() < size_t(count); ++j)
      fs.push_back(RationalFn::pole_term(1.0, ps[j], 2));
  } else {
    // vanish at both 0 and infinity: w/(w-p)^2 and w^2/(w-p)^3 kernels
    for (size_t j = 0; j < ps.size() && fs.size() < size_t(count / 2); ++j)
      fs.push_back(RationalFn::identity() * RationalFn::pole_term(1.0, ps[j], 2));
    for (size_t j = 0; j < ps.size() && fs.size() < size_t(count); ++j)
      fs.push_back(RationalFn::identity() * RationalFn::identity() *
                   RationalFn::pole_term(1.0, ps[j], 3));
  }
  fs.resize(std::min<size_t>(fs.size(), count));
  for (const RationalFn& f : fs) check_admissible(dom, f);
  return fs;
}

/**
 * Area side of the quadrature identity: int_Omega f rho0 dA by pullback
 * quadrature; for singular domains a smooth radial bump splits off a polar
 * patch around the origin, where f(0) = 0 keeps the integrand integrable.
 */
inline cplx weighted_area_integral(const DomainSpec& dom, const RationalFn& f, int nr = 64,
                                   int nt = 256) {
  auto phi = [&](cplx z) { return dom.map.eval(z); };
  auto dphi = [&](cplx z) { return dom.map.deriv(z); };
  if (!dom.singular) {
    return pullback_area_integral(
        phi, dphi, dom.unbounded, [&](cplx w) { return f.eval(w) * rho0(w); }, nr, nt);
  }
  double rho2 = 0.75 * dom.dist0, rho1 = 0.4 * dom.dist0;
  auto chi = [&](const cplx& w) { return radial_bump(std::abs(w), rho1, rho2); };
  cplx inner = disk_patch_integral(
      [&](cplx w) {
        double x = chi(w);
        return x == 0.0 ? cplx(0.0) : f.eval(w) * rho0(w) * x;
      },
      cplx(0.0), rho2, nr, nt);
  cplx outer = pullback_area_integral(
      phi, dphi, dom.unbounded,
      [&](cplx w) {
        double x = 1.0 - chi(w);
        return x == 0.0 ? cplx(0.0) : f.eval(w) * rho0(w) * x;
      },
      nr, nt);
  return inner + outer;
}

/** Contour side: the normalized boundary integral of f h. */
inline cplx quadrature_contour_side(const DomainSpec& dom, const RationalFn& f,
                                    const RationalFn& h, int n) {
  BoundaryCurve c = (n == dom.curve.size()) ? dom.curve : boundary_sample(dom.map, n);
  std::vector<cplx> vals(c.size());
  for (int k = 0; k < c.size(); ++k) vals[k] = f.eval(c.w[k]) * h.eval(c.w[k]);
  return contour_integral(c, vals);
}

/**
 * Area side for a whole battery in one grid pass: the map samples and
 * Jacobians are shared, only the cheap rational evaluations vary.
 */
inline std::vector<cplx> weighted_area_integrals(const DomainSpec& dom,
                                                 const std::vector<RationalFn>& fs,
                                                 int nr = 64, int nt = 256) {
  std::vector<cplx> acc(fs.size(), cplx(0.0));
  double rho2 = dom.singular ? 0.75 * dom.dist0 : 0.0;
  double rho1 = dom.singular ? 0.4 * dom.dist0 : 0.0;
  auto chi = [&](double aw) {
    return dom.singular ? radial_bump(aw, rho1, rho2) : 0.0;
  };
  // pullback part over the reference disk (u-inverted when unbounded)
  {
    auto [xs, ws] = gauss_legendre(nr, 0.0, 1.0);
    for (int i = 0; i < nr; ++i) {
      double srad = xs[i];
      double wrad = ws[i] * srad * (2.0 * M_PI / nt) / M_PI;
      for (int k = 0; k < nt; ++k) {
        double th = 2.0 * M_PI * k / nt;
        cplx u = srad * cplx(std::cos(th), std::sin(th));
        cplx z = dom.unbounded ? 1.0 / u : u;
        cplx w = dom.map.eval(z);
        double x = 1.0 - chi(std::abs(w));
        if (x == 0.0) continue;
        double jac = std::norm(dom.map.deriv(z));
        if (dom.unbounded) jac /= std::norm(u * u);
        double common = wrad * jac * rho0(w) * x;
        for (size_t m = 0; m < fs.size(); ++m) acc[m] += fs[m].eval(w) * common;
      }
    }
  }
  // polar patch around the origin when 0 lies inside
  if (dom.singular) {
    auto [xs, ws] = gauss_legendre(nr, 0.0, rho2);
    for (int i = 0; i < nr; ++i) {
      double srad = xs[i];
      double x = chi(srad);
      if (x == 0.0) continue;
      double wrad = ws[i] * srad * (2.0 * M_PI / nt) / M_PI;
      double common0 = wrad * x / (srad * srad);  // rho0 on the circle
      for (int k = 0; k < nt; ++k) {
        double th = 2.0 * M_PI * k / nt;
        cplx w = srad * cplx(std::cos(th), std::sin(th));
        for (size_t m = 0; m < fs.size(); ++m) acc[m] += fs[m].eval(w) * common0;
      }
    }
  }
  return acc;
}

/** Single-function adaptive wrapper (resolution doubled until agreement). */
inline cplx weighted_area_integral_adaptive(const DomainSpec& dom, const RationalFn& f,
                                            int nr0 = 64, int nt0 = 256,
                                            double tol = 1e-9) {
  cplx prev = weighted_area_integral(dom, f, nr0, nt0);
  int nr = nr0, nt = nt0;
  for (int lvl = 0; lvl < 3; ++lvl) {
    nr = std::min(2 * nr, 512);
    nt = std::min(2 * nt, 2048);
    cplx cur = weighted_area_integral(dom, f, nr, nt);
    if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

inline VerificationReport verify_quadrature(const LQDInstance& inst,
                                            const std::vector<RationalFn>& battery,
                                            int n = 1024, double tol = 1e-6) {
  detail::Stopwatch timer;
  for (const RationalFn& f : battery) check_admissible(inst.domain, f);
  int nr = std::clamp(n / 8, 24, 96), nt = std::clamp(n / 2, 128, 512);
  double atol = std::max(1e-9, 0.03 * tol);
  std::vector<cplx> area = weighted_area_integrals(inst.domain, battery, nr, nt);
  for (int lvl = 0; lvl < 3; ++lvl) {
    int nr2 = std::min(2 * nr, 512), nt2 = std::min(2 * nt, 2048);
    std::vector<cplx> next = weighted_area_integrals(inst.domain, battery, nr2, nt2);
    double drift = 0.0;
    for (size_t m = 0; m < battery.size(); ++m)
      drift = std::max(drift, std::abs(next[m] - area[m]) / (1.0 + std::abs(next[m])));
    area = std::move(next);
    nr = nr2;
    nt = nt2;
    if (drift <= atol) break;
  }
  double worst = 0.0;
  for (size_t m = 0; m < battery.size(); ++m) {
    cplx cont = quadrature_contour_side(inst.domain, battery[m], inst.quad.h, n);
    worst = std::max(worst, std::abs(area[m] - cont) / (1.0 + std::abs(cont)));
  }
  VerificationReport rep;
  rep.check = "quadrature_identity";
  rep.residual = worst;
  rep.tol = tol;
  rep.pass = worst <= tol;
  rep.ms = timer.ms();
  return rep;
}

/**
 * Renormalized weighted Cauchy transform of the exterior, evaluated at a
 * boundary node by the boundary-integral reduction (principal value with the
 * singular node removed by subtraction). For domains not containing 0 this
 * already includes the cutoff renormalization.
 */
inline std::vector<cplx> exterior_transform_boundary(const DomainSpec& dom) {
  const BoundaryCurve& c = dom.curve;
  int n = c.size();
  std::vector<cplx> m(n), mdot(n);
  for (int k = 0; k < n; ++k) {
    cplx w = c.w[k], dw = c.dw[k];
    double ln2 = std::log(std::norm(w));
    m[k] = ln2 / w;
    mdot[k] = (2.0 * (dw / w).real() * w - ln2 * dw) / (w * w);
  }
  std::vector<cplx> G(n);
  for (int j = 0; j < n; ++j) {
    cplx acc(0.0);
    for (int k = 0; k < n; ++k) {
      if (k == j) {
        acc += mdot[j];
        continue;
      }
      acc += (m[k] - m[j]) * c.dw[k] / (c.w[k] - c.w[j]);
    }
    cplx J = acc / cplx(0.0, double(n));
    G[j] = dom.unbounded ? -J : (J + m[j]);
  }
  return G;
}

inline VerificationReport verify_coincidence(const LQDInstance& inst, int n = 1024,
                                             double tol = 1e-6) {
  detail::Stopwatch timer;
  DomainSpec dom = (n == inst.domain.curve.size())
                       ? inst.domain
                       : DomainSpec::from_map(inst.domain.map, n);
  std::vector<cplx> G = exterior_transform_boundary(dom);
  double worst = 0.0, worst_lift = 0.0;
  for (int j = 0; j < dom.curve.size(); ++j) {
    cplx w = dom.curve.w[j];
    cplx lhs = std::log(std::norm(w)) / w;
    cplx rhs = inst.quad.h.eval(w) + inst.quad.q / w + G[j];
    worst = std::max(worst, std::abs(lhs - rhs));
    cplx s0 = schwarz_boundary(dom.map, dom.curve.t[j], w);
    cplx lift = std::exp(w * s0) / w;
    worst_lift = std::max(worst_lift, std::abs(lift - std::conj(w)));
  }
  VerificationReport rep;
  rep.check = "coincidence_equation";
  rep.residual = std::max(worst, worst_lift);
  rep.tol = tol;
  rep.pass = rep.residual <= tol;
  rep.ms = timer.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// weighted transforms over regions (area-quadrature routes)
// ---------------------------------------------------------------------------

struct WeightedAreaSpec {
  enum class Region { annulus, complement_disk, domain, domain_minus_disk };
  Region region = Region::annulus;
  double r1 = 0.0, r2 = 0.0;  // radii for annulus / complement
  const DomainSpec* dom = nullptr;
  double rcut = 0.0;  // inner cutoff for domain_minus_disk
};

/** C_rho0 over the region (principal value where the kernel sits inside). */
inline cplx weighted_cauchy_area(const WeightedAreaSpec& spec, const cplx& w, int nr = 64,
                                 int nt = 256) {
  switch (spec.region) {
    case WeightedAreaSpec::Region::annulus:
      return weighted_cauchy_annulus(spec.r1, spec.r2, w);
    case WeightedAreaSpec::Region::complement_disk:
      return weighted_cauchy_complement_disk(spec.r1, w);
    case WeightedAreaSpec::Region::domain: {
      const DomainSpec& dom = *spec.dom;
      if (dom.singular)
        throw error(errc::cutoff_violation,
                    "weighted_cauchy_area: singular domain needs the disk cutoff");
      if (dom.contains(w))
        throw error(errc::bad_input, "weighted_cauchy_area: kernel point inside the domain");
      auto phi = [&](cplx z) { return dom.map.eval(z); };
      auto dphi = [&](cplx z) { return dom.map.deriv(z); };
      return pullback_area_integral(
          phi, dphi, dom.unbounded, [&](cplx xi) { return rho0(xi) / (w - xi); }, nr, nt);
    }
    case WeightedAreaSpec::Region::domain_minus_disk: {
      const DomainSpec& dom = *spec.dom;
      if (!dom.singular || !(spec.rcut > 0.0) || spec.rcut >= dom.dist0)
        throw error(errc::cutoff_violation, "weighted_cauchy_area: need 0 < r < d(0, boundary)");
      if (dom.contains(w))
        throw error(errc::bad_input, "weighted_cauchy_area: kernel point inside the domain");
      double rho2 = spec.rcut + 0.75 * (dom.dist0 - spec.rcut);
      double rho1 = spec.rcut + 0.4 * (dom.dist0 - spec.rcut);
      auto chi = [&](const cplx& xi) { return radial_bump(std::abs(xi), rho1, rho2); };
      auto F = [&](cplx xi) { return rho0(xi) / (w - xi); };
      cplx inner = annulus_integral(
          [&](cplx xi) {
            double x = chi(xi);
            return x == 0.0 ? cplx(0.0) : F(xi) * x;
          },
          spec.rcut, rho2, nr, nt);
      auto phi = [&](cplx z) { return dom.map.eval(z); };
      auto dphi = [&](cplx z) { return dom.map.deriv(z); };
      cplx outer = pullback_area_integral(
          phi, dphi, dom.unbounded,
          [&](cplx xi) {
            double x = 1.0 - chi(xi);
            return x == 0.0 ? cplx(0.0) : F(xi) * x;
          },
          nr, nt);
      return inner + outer;
    }
  }
  throw error(errc::bad_input, "weighted_cauchy_area: unknown region");
}

/** A_rho0 of the region. */
inline double weighted_area(const WeightedAreaSpec& spec, int nr = 64, int nt = 256) {
  switch (spec.region) {
    case WeightedAreaSpec::Region::annulus:
      if (spec.r1 == spec.r2) return 0.0;
      return weighted_area_annulus(spec.r1, spec.r2, nr, nt).real();
    case WeightedAreaSpec::Region::complement_disk:
      throw error(errc::cutoff_violation, "weighted_area: the disk complement has infinite mass");
    case WeightedAreaSpec::Region::domain: {
      const DomainSpec& dom = *spec.dom;
      if (dom.singular || dom.unbounded)
        throw error(errc::cutoff_violation,
                    "weighted_area: domain must be bounded and avoid 0 (or use the cutoff)");
      auto phi = [&](cplx z) { return dom.map.eval(z); };
      auto dphi = [&](cplx z) { return dom.map.deriv(z); };
      return pullback_area_integral(
                 phi, dphi, false, [&](cplx xi) { return cplx(rho0(xi)); }, nr, nt)
          .real();
    }
    case WeightedAreaSpec::Region::domain_minus_disk: {
      const DomainSpec& dom = *spec.dom;
      if (!dom.singular || !(spec.rcut > 0.0) || spec.rcut >= dom.dist0)
        throw error(errc::cutoff_violation, "weighted_area: need 0 < r < d(0, boundary)");
      if (dom.unbounded)
        throw error(errc::cutoff_violation, "weighted_area: unbounded mass diverges");
      double rho2 = spec.rcut + 0.75 * (dom.dist0 - spec.rcut);
      double rho1 = spec.rcut + 0.4 * (dom.dist0 - spec.rcut);
      auto chi = [&](const cplx& xi) { return radial_bump(std::abs(xi), rho1, rho2); };
      cplx inner = annulus_integral(
          [&](cplx xi) {
            double x = chi(xi);
            return x == 0.0 ? cplx(0.0) : cplx(rho0(xi) * x);
          },
          spec.rcut, rho2, nr, nt);
      auto phi = [&](cplx z) { return dom.map.eval(z); };
      auto dphi = [&](cplx z) { return dom.map.deriv(z); };
      cplx outer = pullback_area_integral(
          phi, dphi, false,
          [&](cplx xi) {
            double x = 1.0 - chi(xi);
            return x == 0.0 ? cplx(0.0) : cplx(rho0(xi) * x);
          },
          nr, nt);
      return (inner + outer).real();
    }
  }
  throw error(errc::bad_input, "weighted_area: unknown region");
}

/** A_rho0 of the complement, by the boundary reduction (0 outside). */
inline double weighted_area_exterior(const DomainSpec& dom) {
  if (!dom.singular && !dom.unbounded)
    throw error(errc::cutoff_violation, "weighted_area_exterior: complement contains 0");
  const BoundaryCurve& c = dom.curve;
  std::vector<cplx> vals(c.size());
  for (int k = 0; k < c.size(); ++k) vals[k] = std::log(std::norm(c.w[k])) / c.w[k];
  // positively oriented boundary of the complement = -(host orientation)
  cplx a = -double(c.orientation) * contour_integral_raw(c, vals);
  return a.real();
}

// ---------------------------------------------------------------------------
// electrostatic field grid
// ---------------------------------------------------------------------------

struct FieldSample {
  cplx w;
  cplx diff;       // transform minus quadrature-function field
  double abs_diff; // |diff|
};

/**
 * Exterior grid comparison of the weighted Cauchy transform against the
 * quadrature function (with the cutoff renormalization on singular
 * domains). Points inside the domain or hugging the boundary are skipped.
 */
inline std::vector<FieldSample> field_grid(const LQDInstance& inst, int grid = 20,
                                           double pad = 0.3, int nr = 96, int nt = 384) {
  const DomainSpec& dom = inst.domain;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const cplx& w : dom.curve.w) {
    x0 = std::min(x0, w.real());
    x1 = std::max(x1, w.real());
    y0 = std::min(y0, w.imag());
    y1 = std::max(y1, w.imag());
  }
  double dx = x1 - x0, dy = y1 - y0;
  x0 -= pad * dx;
  x1 += pad * dx;
  y0 -= pad * dy;
  y1 += pad * dy;

  double rcut = dom.singular ? 0.5 * dom.dist0 : 0.0;
  WeightedAreaSpec ws;
  ws.dom = &dom;
  if (dom.singular) {
    ws.region = WeightedAreaSpec::Region::domain_minus_disk;
    ws.rcut = rcut;
  } else {
    ws.region = WeightedAreaSpec::Region::domain;
  }

  std::vector<FieldSample> out;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      cplx w(x0 + (x1 - x0) * (i + 0.5) / grid, y0 + (y1 - y0) * (j + 0.5) / grid);
      if (dom.contains(w)) continue;
      if (dom.curve.min_distance(w) < dom.curve.eps_near(w)) continue;
      if (dom.curve.min_distance(w) < 0.02 * std::max(dx, dy)) continue;
      cplx transform = weighted_cauchy_area(ws, w, nr, nt);
      cplx field = inst.quad.h.eval(w);
      if (dom.singular) field += (inst.quad.q - std::log(rcut * rcut)) / w;
      FieldSample s;
      s.w = w;
      s.diff = transform - field;
      s.abs_diff = std::abs(s.diff);
      out.push_back(s);
    }
  return out;
}

}  // namespace lqd

#endif  // LQD_VERIFY_HPP
