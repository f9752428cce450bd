#ifndef LQD_FAMILIES_HPP
#define LQD_FAMILIES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lqd/complex_poly.hpp"
#include "lqd/contour.hpp"
#include "lqd/faber.hpp"
#include "lqd/riemann_map.hpp"
#include "lqd/univalence.hpp"

namespace lqd {

/** Quadrature data (h, q): h residue-free at 0 whenever 0 lies inside. */
struct QuadratureData {
  RationalFn h;
  cplx q{0.0};
  std::vector<PolePart> nodes;  // poles of h, including the one at infinity
};

enum class FamilyKind {
  null_disk,
  exp_image,
  onept_bounded_nonsingular,
  onept_unbounded_nonsingular,
  onept_bounded_singular,
  onept_unbounded_singular,
  constant,
  monomial_nonsingular,
  monomial_singular_k2,
  twopoint_symmetric,
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::null_disk;
  cplx alpha{0.0};
  cplx w0{1.0};
  double c = 0.5;   // conformal radius where applicable
  cplx q{0.0};
  bool has_q = false;
  int k = 2;        // monomial exponent
  double r = 1.0;   // disk radius (null_disk, exp_image)
  cplx center{0.0}; // exp_image disk center
  bool exterior = false;  // null_disk: exterior variant
  // map-first construction (solved parameters given directly)
  std::optional<cplx> z0_given, z1_given;
};

struct SolveRecord {
  std::optional<cplx> z0, z1, lambda, beta, zplus;
  int univalent_roots = 0;  // count of admissible roots the multi-start found
};

struct LQDInstance {
  FamilySpec spec;
  DomainSpec domain;
  QuadratureData quad;
  SolveRecord solved;
};

/** |prefactor|^2 is the constant K with phi phi# = K exp(r + r#). */
inline double log_K(const RiemannMap& m) { return std::log(std::norm(m.prefactor())); }

/**
 * Charge at the origin for a singular map: the residue at w = 0 of the
 * generalized Schwarz function, which the factored form gives in closed form
 * as ln K + r(psi(0)) + r#(psi(0)); zero for non-singular maps.
 */
inline cplx charge_closed(const RiemannMap& m) {
  auto z0 = m.domain_zero();
  if (!z0) return cplx(0.0);
  return cplx(log_K(m)) + m.exponent().eval(*z0) + m.exponent_refl().eval(*z0);
}

/** Boundary values ln|w|^2/w lift: S0 at an arbitrary admissible point. */
inline cplx schwarz_eval(const RiemannMap& m, const cplx& w,
                         std::optional<cplx> seed = std::nullopt) {
  cplx z = m.inverse(w, seed);
  return (cplx(log_K(m)) + m.exponent().eval(z) + m.exponent_refl().eval(z)) / w;
}

/** S0 at a boundary sample, with the reference preimage known. */
inline cplx schwarz_boundary(const RiemannMap& m, double t, const cplx& w) {
  cplx z(std::cos(t), std::sin(t));
  return (cplx(log_K(m)) + m.exponent().eval(z) + m.exponent_refl().eval(z)) / w;
}

/** Numeric charge: small-circle residue of S0 at the origin. */
inline cplx charge_numeric(const RiemannMap& m, const DomainSpec& dom, int n = 256) {
  if (!m.zero_in_image()) return cplx(0.0);
  double eps = 0.5 * dom.dist0;
  cplx z0 = *m.domain_zero();
  cplx acc(0.0);
  cplx seed = z0;
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * M_PI * k / n;
    cplx w = eps * cplx(std::cos(t), std::sin(t));
    cplx z = m.inverse(w, seed);
    seed = z;
    cplx s0 = (cplx(log_K(m)) + m.exponent().eval(z) + m.exponent_refl().eval(z)) / w;
    acc += s0 * (w * cplx(0.0, 1.0));  // dw/dt
  }
  return acc / cplx(0.0, double(n));
}

/**
 * Bring a raw quadrature function into the normalized class: keep principal
 * parts at poles inside the domain plus the polynomial part when infinity is
 * inside; prune numerical dust; the removed residue at 0 (if 0 is inside) is
 * reported so the caller can account for it in the charge.
 */
inline RationalFn normalize_quadrature(const RationalFn& h_raw, const DomainSpec& dom,
                                       cplx* removed_res0 = nullptr) {
  if (removed_res0) *removed_res0 = cplx(0.0);
  if (h_raw.is_zero()) return h_raw;
  PrincipalParts pp = rat_principal_parts(h_raw);
  double scale = 0.0;
  for (const PolePart& p : pp.parts)
    for (const cplx& c : p.coeffs) scale = std::max(scale, std::abs(c));
  scale = std::max(scale, pp.poly_part.scale());

  RationalFn out;
  if (!pp.poly_part.is_zero()) {
    if (dom.unbounded)
      out = out + RationalFn::from_poly(pp.poly_part);
    else if (pp.poly_part.scale() > 1e-9 * scale)
      throw error(errc::bad_input, "normalize_quadrature: polynomial part on a bounded domain");
  }
  for (const PolePart& p : pp.parts) {
    bool at0 = std::abs(p.location) < 1e-9 * (1.0 + scale);
    if (at0 && dom.singular) {
      // split off the point charge; keep any higher-order structure
      if (removed_res0) *removed_res0 += p.coeffs[0];
      for (int k = 2; k <= p.order; ++k)
        if (std::abs(p.coeffs[k - 1]) > 1e-10 * scale)
          out = out + RationalFn::pole_term(p.coeffs[k - 1], cplx(0.0), k);
      continue;
    }
    bool inside = dom.contains(p.location);
    for (int k = 1; k <= p.order; ++k) {
      if (std::abs(p.coeffs[k - 1]) < 1e-10 * scale) continue;
      if (!inside) continue;  // analytic inside the domain: contributes nothing
      out = out + RationalFn::pole_term(p.coeffs[k - 1], p.location, k);
    }
  }
  return out;
}

/** Node list (with multiplicities) of a quadrature function. */
inline std::vector<PolePart> quadrature_nodes(const RationalFn& h, bool unbounded) {
  std::vector<PolePart> nodes;
  if (h.is_zero()) return nodes;
  PrincipalParts pp = rat_principal_parts(h);
  for (PolePart& p : pp.parts) nodes.push_back(std::move(p));
  if (unbounded && !pp.poly_part.is_zero() && pp.poly_part.degree() >= 1) {
    PolePart inf;
    inf.at_infinity = true;
    inf.order = pp.poly_part.degree();
    nodes.push_back(inf);
  }
  return nodes;
}

/**
 * Direct problem: quadrature data from the map, h = (Faber(r) - C)/w with C
 * cancelling the pole at 0 (equivalently making h residue-free there).
 */
inline QuadratureData direct_problem(const RiemannMap& map, int n = 1024) {
  FaberContext ctx(map);
  RationalFn phi_r = map.exponent().is_zero() ? RationalFn::zero()
                                              : faber_rational(ctx, map.exponent());
  cplx C = phi_r.is_zero() ? cplx(0.0) : phi_r.eval(cplx(0.0));
  RationalFn h_raw = (phi_r - RationalFn::constant(C)) / RationalFn::identity();
  DomainSpec dom = DomainSpec::from_map(map, n);
  QuadratureData out;
  cplx removed;
  out.h = normalize_quadrature(h_raw, dom, &removed);
  out.q = charge_closed(map);
  out.nodes = quadrature_nodes(out.h, dom.unbounded);
  return out;
}

/** Inverse problem: the exponent r recovered from the quadrature function. */
inline RationalFn inverse_r(const QuadratureData& quad, const RiemannMap& map) {
  FaberContext ctx(map);
  RationalFn wh = quad.h * RationalFn::identity();
  if (!map.unbounded()) {
    cplx res_inf = quad.h.is_zero() ? cplx(0.0) : rat_principal_parts(quad.h).res_inf;
    RationalFn input = wh + RationalFn::constant(res_inf);
    if (input.is_zero()) return RationalFn::zero();
    return inv_faber_rational(ctx, input);
  }
  if (wh.is_zero()) return RationalFn::zero();
  RationalFn r0 = inv_faber_rational(ctx, wh);
  return r0 - RationalFn::constant(r0.eval(cplx(0.0)));
}

// ---------------------------------------------------------------------------
// nonlinear solving machinery for the family parameters
// ---------------------------------------------------------------------------

namespace detail {

using VecF = std::function<std::vector<double>(const std::vector<double>&)>;

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/** Damped Newton with a finite-difference Jacobian; n <= 6 here. */
inline bool newton_solve(const VecF& F, std::vector<double>& x, int iters = 120,
                         double tol = 1e-12) {
  const int n = static_cast<int>(x.size());
  std::vector<double> fx;
  try {
    fx = F(x);
  } catch (const error&) {
    return false;
  }
  for (int it = 0; it < iters; ++it) {
    double r0 = norm2(fx);
    if (r0 < tol) return true;
    // FD Jacobian
    std::vector<std::vector<double>> J(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
      double h = 1e-7 * (1.0 + std::abs(x[j]));
      std::vector<double> xp = x;
      xp[j] += h;
      std::vector<double> fp;
      try {
        fp = F(xp);
      } catch (const error&) {
        return false;
      }
      for (int i = 0; i < n; ++i) J[i][j] = (fp[i] - fx[i]) / h;
    }
    // solve J dx = -fx by Gaussian elimination with partial pivoting
    std::vector<std::vector<double>> A = J;
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = -fx[i];
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int i = col + 1; i < n; ++i)
        if (std::abs(A[i][col]) > std::abs(A[piv][col])) piv = i;
      if (std::abs(A[piv][col]) < 1e-300) return false;
      std::swap(A[piv], A[col]);
      std::swap(b[piv], b[col]);
      for (int i = col + 1; i < n; ++i) {
        double f = A[i][col] / A[col][col];
        for (int j = col; j < n; ++j) A[i][j] -= f * A[col][j];
        b[i] -= f * b[col];
      }
    }
    std::vector<double> dx(n);
    for (int i = n - 1; i >= 0; --i) {
      double s = b[i];
      for (int j = i + 1; j < n; ++j) s -= A[i][j] * dx[j];
      dx[i] = s / A[i][i];
    }
    // backtracking
    double step = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      std::vector<double> xn = x;
      for (int i = 0; i < n; ++i) xn[i] += step * dx[i];
      std::vector<double> fn;
      try {
        fn = F(xn);
      } catch (const error&) {
        step *= 0.5;
        continue;
      }
      if (norm2(fn) < (1.0 - 0.2 * step) * r0 || norm2(fn) < tol) {
        x = xn;
        fx = fn;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return false;
  }
  return norm2(fx) < 1e-9;
}

inline void push_unique(std::vector<std::vector<double>>& roots,
                        const std::vector<double>& x, double tol = 1e-7) {
  for (const auto& r : roots) {
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) d += std::abs(r[i] - x[i]);
    if (d < tol) return;
  }
  roots.push_back(x);
}

inline bool map_univalent(const RiemannMap& m, int n = 1024) {
  try {
    return univalence_check(m, n).univalent;
  } catch (const error&) {
    return false;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// family constructors
// ---------------------------------------------------------------------------

namespace detail {

inline LQDInstance assemble(const FamilySpec& spec, const RiemannMap& map,
                            const RationalFn& h, SolveRecord solved, int n) {
  LQDInstance inst;
  inst.spec = spec;
  inst.domain = DomainSpec::from_map(map, n);
  cplx removed;
  inst.quad.h = normalize_quadrature(h, inst.domain, &removed);
  inst.quad.q = charge_closed(map);
  inst.quad.nodes = quadrature_nodes(inst.quad.h, inst.domain.unbounded);
  inst.solved = std::move(solved);
  return inst;
}

inline RiemannMap onept_bounded_nonsingular_map(cplx w0, double alpha) {
  cplx mu = std::conj(w0) / std::abs(w0) * std::sqrt(alpha);
  return RiemannMap::make(Side::bounded, InnerKind::one, w0, 0.0,
                          RationalFn::pole_term(std::conj(mu), 0.0, 1));
}

}  // namespace detail

inline LQDInstance build_null_disk(const FamilySpec& spec, int n) {
  double r = spec.r;
  if (!(r > 0.0)) throw error(errc::range_error, "null disk: radius must be positive");
  RiemannMap map =
      RiemannMap::make(spec.exterior ? Side::unbounded : Side::bounded, InnerKind::zfact,
                       r, 0.0, RationalFn::zero());
  return detail::assemble(spec, map, RationalFn::zero(), {}, n);
}

inline LQDInstance build_onept_bounded_nonsingular(const FamilySpec& spec, int n) {
  if (std::abs(spec.alpha.imag()) > 1e-12 || spec.alpha.real() <= 0.0 ||
      spec.alpha.real() > M_PI * M_PI + 1e-12)
    throw error(errc::range_error,
                "one-point bounded family requires real alpha in (0, pi^2]");
  if (std::abs(spec.w0) < 1e-12)
    throw error(errc::range_error, "one-point family requires w0 != 0");
  RiemannMap map = detail::onept_bounded_nonsingular_map(spec.w0, spec.alpha.real());
  RationalFn h = RationalFn::pole_term(spec.alpha, spec.w0, 1);
  return detail::assemble(spec, map, h, {}, n);
}

inline LQDInstance build_onept_unbounded_nonsingular(const FamilySpec& spec, int n) {
  cplx alpha = spec.alpha, w0 = spec.w0;
  if (std::abs(w0) < 1e-12 || std::abs(alpha) < 1e-14)
    throw error(errc::range_error, "one-point family requires w0, alpha != 0");
  if (!(spec.c > 0.0)) throw error(errc::range_error, "conformal radius must be positive");
  double ct = spec.c / std::abs(w0);  // normalized problem has w0 = 1

  auto phi = [&](cplx z1, cplx lam, cplx z) {
    return ct * z * std::exp(lam / (1.0 - z * std::conj(z1)));
  };
  auto dphi = [&](cplx z1, cplx lam, cplx z) {
    cplx den = 1.0 - z * std::conj(z1);
    return ct * std::exp(lam / den) * (1.0 + z * lam * std::conj(z1) / (den * den));
  };
  auto F = [&](const std::vector<double>& x) {
    cplx z1(x[0], x[1]), lam(x[2], x[3]);
    cplx e1 = phi(z1, lam, z1) - 1.0;
    cplx e2 = lam * std::conj(z1) * std::conj(dphi(z1, lam, z1)) - std::conj(alpha);
    return std::vector<double>{e1.real(), e1.imag(), e2.real(), e2.imag()};
  };

  std::vector<std::vector<double>> roots;
  for (int a = 0; a < 8; ++a) {
    double th = 2.0 * M_PI * a / 8;
    cplx z1g = (1.0 / ct) * cplx(std::cos(th), std::sin(th));
    if (std::abs(z1g) <= 1.05) z1g *= 1.5 / std::abs(z1g);
    cplx lamg = std::conj(alpha) / (std::conj(z1g) * ct);
    std::vector<double> x{z1g.real(), z1g.imag(), lamg.real(), lamg.imag()};
    if (detail::newton_solve(F, x) && std::hypot(x[0], x[1]) > 1.0)
      detail::push_unique(roots, x);
  }
  if (roots.empty())
    throw error(errc::no_solution, "one-point unbounded family: no parameter solution");

  std::sort(roots.begin(), roots.end());
  double thw = std::arg(w0);
  int univalent_found = 0;
  std::optional<LQDInstance> result;
  for (const auto& x : roots) {
    cplx z1(x[0], x[1]), lam(x[2], x[3]);
    // denormalize: rotate the reference variable and rescale to w0
    cplx z1r = z1 * cplx(std::cos(thw), std::sin(thw));
    RationalFn r(Poly({0.0, std::conj(lam)}), Poly({-z1r, 1.0}));  // conj(lam) z/(z - z1)
    RiemannMap map = RiemannMap::make(Side::unbounded, InnerKind::zfact, spec.c, 0.0, r);
    if (!detail::map_univalent(map)) continue;
    ++univalent_found;
    if (!result) {
      SolveRecord rec;
      rec.z1 = z1r;
      rec.lambda = lam;
      RationalFn h = RationalFn::pole_term(alpha, w0, 1);
      result = detail::assemble(spec, map, h, rec, n);
    }
  }
  if (!result)
    throw error(errc::not_univalent, "one-point unbounded family: no univalent root");
  result->solved.univalent_roots = univalent_found;
  return *result;
}

inline LQDInstance build_onept_bounded_singular(const FamilySpec& spec, int n) {
  cplx alpha = spec.alpha, w0 = spec.w0;
  if (std::abs(w0) < 1e-12 || std::abs(alpha) < 1e-14)
    throw error(errc::range_error, "one-point family requires w0, alpha != 0");
  if (!spec.has_q)
    throw error(errc::range_error, "bounded singular one-point family needs the charge q");
  cplx qn = spec.q - std::log(std::norm(w0));  // normalized to w0 = 1
  if (std::abs(qn.imag() + alpha.imag()) > 1e-8)
    throw error(errc::no_solution,
                "bounded singular one-point family: Im q must equal -Im alpha");

  // unknowns: z0 in D and t = phi'(0) > 0 (via t = exp(s)); lambda = conj(alpha)/t
  auto F = [&](const std::vector<double>& x) {
    cplx z0(x[0], x[1]);
    double t = std::exp(x[2]);
    double az2 = std::norm(z0);
    if (az2 < 1e-10) az2 = 1e-10;
    cplx lam = std::conj(alpha) / t;
    cplx e1 = std::conj(z0) * (az2 - 1.0) / az2 + lam - t;
    cplx qv = lam * z0 + std::conj(lam) / z0 - std::log(az2);
    return std::vector<double>{e1.real(), e1.imag(), qv.real() - qn.real()};
  };

  std::vector<std::vector<double>> roots;
  for (double rho : {0.25, 0.5, 0.75}) {
    for (int a = 0; a < 8; ++a) {
      double th = 2.0 * M_PI * a / 8;
      for (double ts : {0.5, 1.5}) {
        std::vector<double> x{rho * std::cos(th), rho * std::sin(th),
                              std::log(ts * std::sqrt(std::abs(alpha)) + 0.2)};
        if (detail::newton_solve(F, x) && std::hypot(x[0], x[1]) < 1.0)
          detail::push_unique(roots, x);
      }
    }
  }
  if (roots.empty())
    throw error(errc::no_solution, "bounded singular one-point family: no solution");

  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    double ma = std::hypot(a[0], a[1]), mb = std::hypot(b[0], b[1]);
    return ma != mb ? ma < mb : a < b;
  });
  double thw = std::arg(w0);
  int univalent_found = 0;
  std::optional<LQDInstance> result;
  for (const auto& x : roots) {
    cplx z0(x[0], x[1]);
    double t = std::exp(x[2]);
    cplx lam = std::conj(alpha) / t;
    // residual of the imaginary charge component must close
    cplx qv = lam * z0 + std::conj(lam) / z0 - std::log(std::norm(z0));
    if (std::abs(qv.imag() - qn.imag()) > 1e-7) continue;
    cplx rot(std::cos(thw), std::sin(thw));
    cplx z0r = z0 * rot, lamr = lam / rot;
    RiemannMap map =
        RiemannMap::make(Side::bounded, InnerKind::blaschke, w0 / std::abs(z0), z0r,
                         RationalFn::pole_term(std::conj(lamr), 0.0, 1));
    if (!detail::map_univalent(map)) continue;
    ++univalent_found;
    if (!result) {
      SolveRecord rec;
      rec.z0 = z0r;
      rec.lambda = lamr;
      RationalFn h = RationalFn::pole_term(alpha, w0, 1);
      result = detail::assemble(spec, map, h, rec, n);
    }
  }
  if (!result)
    throw error(errc::not_univalent, "bounded singular one-point family: no univalent root");
  result->solved.univalent_roots = univalent_found;
  return *result;
}

inline LQDInstance build_onept_unbounded_singular(const FamilySpec& spec, int n) {
  cplx alpha = spec.alpha;
  if (std::abs(alpha) < 1e-14)
    throw error(errc::range_error, "one-point family requires alpha != 0");
  if (!(spec.c > 0.0)) throw error(errc::range_error, "conformal radius must be positive");

  auto make_map = [&](double c, cplx z0, cplx z1, cplx lam) {
    RationalFn r(Poly({0.0, std::conj(lam)}), Poly({-z1, 1.0}));
    return RiemannMap::make(Side::unbounded, InnerKind::z_blaschke, c * std::abs(z0), z0, r);
  };
  // scalar evaluations for the solver loops
  auto phi_of = [](double c, cplx z0, cplx z1, cplx lam, cplx z) {
    BlaschkeFactor b{z0};
    return c * std::abs(z0) * z * b.eval(z) * std::exp(lam / (1.0 - z * std::conj(z1)));
  };
  auto dphi_of = [](double c, cplx z0, cplx z1, cplx lam, cplx z) {
    BlaschkeFactor b{z0};
    cplx den = 1.0 - z * std::conj(z1);
    cplx e = std::exp(lam / den);
    cplx inner = z * b.eval(z);
    cplx dinner = b.eval(z) + z * b.deriv(z);
    return c * std::abs(z0) * e * (dinner + inner * lam * std::conj(z1) / (den * den));
  };

  if (spec.z0_given && spec.z1_given) {
    // map-first: (c, z0, z1) fixed, lambda solved from the alpha relation,
    // w0 and q induced
    cplx z0 = *spec.z0_given, z1 = *spec.z1_given;
    if (std::abs(z0) <= 1.0 || std::abs(z1) <= 1.0)
      throw error(errc::range_error, "map-first one-point family needs |z0|,|z1| > 1");
    auto F = [&](const std::vector<double>& x) {
      cplx lam(x[0], x[1]);
      cplx e = lam * std::conj(z1) * std::conj(dphi_of(spec.c, z0, z1, lam, z1)) -
               std::conj(alpha) * std::conj(phi_of(spec.c, z0, z1, lam, z1));
      return std::vector<double>{e.real(), e.imag()};
    };
    std::optional<std::vector<double>> best;
    for (double s : {0.05, 0.2, 0.8}) {
      std::vector<double> x{s, 0.0};
      if (detail::newton_solve(F, x)) {
        best = x;
        break;
      }
    }
    if (!best)
      throw error(errc::no_solution, "map-first one-point family: lambda solve failed");
    cplx lam((*best)[0], (*best)[1]);
    RiemannMap map = make_map(spec.c, z0, z1, lam);
    if (!detail::map_univalent(map))
      throw error(errc::not_univalent, "map-first one-point family: map not univalent");
    SolveRecord rec;
    rec.z0 = z0;
    rec.z1 = z1;
    rec.lambda = lam;
    rec.univalent_roots = 1;
    cplx w0 = map.eval(z1);
    FamilySpec sp = spec;
    sp.w0 = w0;
    RationalFn h = RationalFn::pole_term(alpha, w0, 1);
    return detail::assemble(sp, map, h, rec, n);
  }

  cplx w0 = spec.w0;
  if (std::abs(w0) < 1e-12)
    throw error(errc::range_error, "one-point family requires w0 != 0");
  if (!spec.has_q)
    throw error(errc::range_error, "unbounded singular one-point family needs the charge q");
  double ct = spec.c / std::abs(w0);
  cplx qn = spec.q - std::log(std::norm(w0));

  auto F = [&](const std::vector<double>& x) {
    cplx z0(x[0], x[1]), z1(x[2], x[3]), lam(x[4], x[5]);
    cplx e1 = phi_of(ct, z0, z1, lam, z1) - 1.0;
    cplx e2 = lam * std::conj(z1) * std::conj(dphi_of(ct, z0, z1, lam, z1)) -
              std::conj(alpha);
    cplx e3 = lam / (1.0 - z0 * std::conj(z1)) + std::conj(lam) / (1.0 - z1 / z0) +
              std::log(ct * ct * std::norm(z0)) - qn;
    return std::vector<double>{e1.real(), e1.imag(), e2.real(),
                               e2.imag(), e3.real(), e3.imag()};
  };

  std::vector<std::vector<double>> roots;
  for (double rz0 : {1.5, 2.5, 4.0}) {
    for (int a0 = 0; a0 < 4; ++a0) {
      double t0 = 2.0 * M_PI * (a0 + 0.5) / 4;
      cplx z0g = rz0 * cplx(std::cos(t0), std::sin(t0));
      for (int a1 = 0; a1 < 4; ++a1) {
        double t1 = 2.0 * M_PI * a1 / 4;
        cplx z1g = std::max(1.3, 1.0 / ct) * cplx(std::cos(t1), std::sin(t1));
        cplx lamg = std::conj(alpha) / (std::conj(z1g) * ct * std::abs(z0g));
        std::vector<double> x{z0g.real(), z0g.imag(), z1g.real(),
                              z1g.imag(), lamg.real(), lamg.imag()};
        if (detail::newton_solve(F, x) && std::hypot(x[0], x[1]) > 1.0 &&
            std::hypot(x[2], x[3]) > 1.0)
          detail::push_unique(roots, x);
      }
    }
  }
  if (roots.empty())
    throw error(errc::no_solution, "unbounded singular one-point family: no solution");

  std::sort(roots.begin(), roots.end());
  double thw = std::arg(w0);
  cplx rot(std::cos(thw), std::sin(thw));
  int univalent_found = 0;
  std::optional<LQDInstance> result;
  for (const auto& x : roots) {
    cplx z0 = cplx(x[0], x[1]) * rot, z1 = cplx(x[2], x[3]) * rot, lam(x[4], x[5]);
    RiemannMap map = make_map(spec.c / std::abs(w0) * std::abs(w0), z0, z1, lam);
    // prefactor carries c (unnormalized): rebuild with the true radius
    map = make_map(spec.c, z0, z1, lam);
    if (!detail::map_univalent(map)) continue;
    ++univalent_found;
    if (!result) {
      SolveRecord rec;
      rec.z0 = z0;
      rec.z1 = z1;
      rec.lambda = lam;
      RationalFn h = RationalFn::pole_term(alpha, w0, 1);
      result = detail::assemble(spec, map, h, rec, n);
    }
  }
  if (!result)
    throw error(errc::not_univalent,
                "unbounded singular one-point family: no univalent root");
  result->solved.univalent_roots = univalent_found;
  return *result;
}

inline LQDInstance build_constant(const FamilySpec& spec, int n) {
  cplx alpha = spec.alpha;
  double c = spec.c;
  if (std::abs(alpha) < 1e-14)
    throw error(errc::range_error, "constant family requires alpha != 0");
  if (!(c > 0.0)) throw error(errc::range_error, "conformal radius must be positive");
  RationalFn r(Poly({0.0, alpha * c}), Poly::one());  // r(z) = alpha c z

  if (!spec.has_q) {
    // 0 outside the domain: c z e^{conj(alpha) c / z}, univalent iff c < 1/|alpha|
    if (!(c < 1.0 / std::abs(alpha)))
      throw error(errc::range_error, "constant family: need |alpha| c < 1");
    RiemannMap map = RiemannMap::make(Side::unbounded, InnerKind::zfact, c, 0.0, r);
    RationalFn h = RationalFn::constant(alpha);
    return detail::assemble(spec, map, h, {}, n);
  }

  // 0 inside: solve z0 outside the disk from the charge relation
  auto F = [&](const std::vector<double>& x) {
    cplx z0(x[0], x[1]);
    cplx qv = std::log(c * c * std::norm(z0)) + alpha * c * z0 +
              std::conj(alpha) * c / z0;
    cplx e = qv - spec.q;
    return std::vector<double>{e.real(), e.imag()};
  };
  std::vector<std::vector<double>> roots;
  for (double rho : {1.4, 2.2, 3.5, 6.0})
    for (int a = 0; a < 8; ++a) {
      double th = 2.0 * M_PI * a / 8;
      std::vector<double> x{rho * std::cos(th), rho * std::sin(th)};
      if (detail::newton_solve(F, x) && std::hypot(x[0], x[1]) > 1.0)
        detail::push_unique(roots, x);
    }
  if (roots.empty())
    throw error(errc::no_solution, "constant family: no z0 satisfies the charge relation");
  std::sort(roots.begin(), roots.end());
  int univalent_found = 0;
  std::optional<LQDInstance> result;
  for (const auto& x : roots) {
    cplx z0(x[0], x[1]);
    RiemannMap map =
        RiemannMap::make(Side::unbounded, InnerKind::z_blaschke, c * std::abs(z0), z0, r);
    if (!detail::map_univalent(map)) continue;
    ++univalent_found;
    if (!result) {
      SolveRecord rec;
      rec.z0 = z0;
      RationalFn h = RationalFn::constant(alpha);
      result = detail::assemble(spec, map, h, rec, n);
    }
  }
  if (!result) throw error(errc::not_univalent, "constant family: no univalent root");
  result->solved.univalent_roots = univalent_found;
  return *result;
}

inline LQDInstance build_monomial_nonsingular(const FamilySpec& spec, int n) {
  cplx alpha = spec.alpha;
  int k = spec.k;
  double c = spec.c;
  if (k < 1) throw error(errc::range_error, "monomial family: k >= 1");
  if (std::abs(alpha) < 1e-14)
    throw error(errc::range_error, "monomial family requires alpha != 0");
  double climit = std::pow(std::abs(alpha) * k * k, -1.0 / k);
  if (!(c > 0.0 && c < climit))
    throw error(errc::range_error, "monomial family: need 0 < c < |alpha k^2|^{-1/k}");
  // r(z) = alpha k c^k z^k
  std::vector<cplx> rc(k + 1, cplx(0.0));
  rc[k] = alpha * double(k) * std::pow(c, k);
  RiemannMap map = RiemannMap::make(Side::unbounded, InnerKind::zfact, c, 0.0,
                                    RationalFn(Poly(rc), Poly::one()));
  // h = alpha k w^{k-1}
  std::vector<cplx> hc(k, cplx(0.0));
  hc[k - 1] = alpha * double(k);
  RationalFn h = RationalFn::from_poly(Poly(hc));
  return detail::assemble(spec, map, h, {}, n);
}

inline LQDInstance build_monomial_singular_k2(const FamilySpec& spec, int n) {
  cplx alpha = spec.alpha;
  double c = spec.c;
  if (std::abs(alpha) < 1e-14)
    throw error(errc::range_error, "monomial family requires alpha != 0");
  if (!(c > 0.0)) throw error(errc::range_error, "conformal radius must be positive");
  if (!spec.has_q)
    throw error(errc::range_error, "singular monomial family needs the charge q");
  double denom_beta = 16.0 * std::pow(c, 4.0) * std::norm(alpha) - 1.0;
  if (std::abs(denom_beta) < 1e-10)
    throw error(errc::range_error, "singular monomial family: 16 c^4 |alpha|^2 = 1");

  auto beta_of = [&](cplx z0) {
    double az2 = std::norm(z0);
    return 2.0 * c * c * (az2 - 1.0) * (4.0 * c * c * alpha * z0 + std::conj(z0)) /
           (az2 * denom_beta);
  };
  auto rpair = [&](cplx z0) {
    // r(z) = 2 alpha (c^2 z^2 + 2 c f0 z) with beta = 2 c conj(f0)
    cplx beta = beta_of(z0);
    cplx f0 = std::conj(beta) / (2.0 * c);
    Poly rp({0.0, 4.0 * alpha * c * f0, 2.0 * alpha * c * c});
    return std::make_pair(RationalFn(rp, Poly::one()), beta);
  };
  auto qval = [&](cplx z0) {
    cplx beta = beta_of(z0);
    cplx f0 = std::conj(beta) / (2.0 * c);
    cplx r_at = 2.0 * alpha * (c * c * z0 * z0 + 2.0 * c * f0 * z0);
    cplx rs_at = 2.0 * std::conj(alpha) * (c * c / (z0 * z0) + beta / z0);
    return std::log(c * c * std::norm(z0)) + r_at + rs_at;
  };
  auto F = [&](const std::vector<double>& x) {
    cplx z0(x[0], x[1]);
    cplx e = qval(z0) - spec.q;
    return std::vector<double>{e.real(), e.imag()};
  };

  std::vector<std::vector<double>> roots;
  for (double rho : {1.3, 1.8, 2.8, 4.5, 8.0})
    for (int a = 0; a < 8; ++a) {
      double th = 2.0 * M_PI * a / 8;
      std::vector<double> x{rho * std::cos(th), rho * std::sin(th)};
      if (detail::newton_solve(F, x) && std::hypot(x[0], x[1]) > 1.0)
        detail::push_unique(roots, x);
    }
  if (roots.empty())
    throw error(errc::no_solution, "singular monomial family: no z0 solves the charge");
  std::sort(roots.begin(), roots.end());
  int univalent_found = 0;
  std::optional<LQDInstance> result;
  for (const auto& x : roots) {
    cplx z0(x[0], x[1]);
    auto [r, beta] = rpair(z0);
    RiemannMap map =
        RiemannMap::make(Side::unbounded, InnerKind::z_blaschke, c * std::abs(z0), z0, r);
    if (!detail::map_univalent(map)) continue;
    ++univalent_found;
    if (!result) {
      SolveRecord rec;
      rec.z0 = z0;
      rec.beta = beta;
      RationalFn h = RationalFn::from_poly(Poly({0.0, 2.0 * alpha}));
      result = detail::assemble(spec, map, h, rec, n);
    }
  }
  if (!result)
    throw error(errc::not_univalent, "singular monomial family: no univalent root");
  result->solved.univalent_roots = univalent_found;
  return *result;
}

inline LQDInstance build_twopoint_symmetric(const FamilySpec& spec, int n) {
  if (std::abs(spec.alpha.imag()) > 1e-12 || spec.alpha.real() <= 0.0)
    throw error(errc::range_error, "two-point family requires real alpha > 0");
  if (std::abs(spec.q.imag()) > 1e-12)
    throw error(errc::range_error, "two-point symmetric family requires real q");
  double alpha = spec.alpha.real(), q = spec.q.real();

  auto lam_of = [&](double zp) {
    return (q + std::log(zp * zp)) / (zp * zp + 1.0 / (zp * zp));
  };
  auto g = [&](double zp) {
    double lam = lam_of(zp);
    return lam * lam + lam * (std::pow(zp, 4.0) - 1.0) / (2.0 * zp * zp) - alpha;
  };

  // scan for sign changes, then bisect
  std::vector<double> zroots;
  const int grid = 400;
  double prev_z = 0.02, prev_g = g(prev_z);
  for (int i = 1; i <= grid; ++i) {
    double z = 0.02 + (0.975 - 0.02) * i / grid;
    double gz = g(z);
    if (std::isfinite(prev_g) && std::isfinite(gz) && prev_g * gz < 0.0) {
      double a = prev_z, b = z;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (g(a) * g(mid) <= 0.0)
          b = mid;
        else
          a = mid;
        if (b - a < 1e-14) break;
      }
      zroots.push_back(0.5 * (a + b));
    }
    prev_z = z;
    prev_g = gz;
  }
  if (zroots.empty())
    throw error(errc::no_solution, "two-point family: no z+ solves the alpha relation");

  int univalent_found = 0;
  std::optional<LQDInstance> result;
  for (double zp : zroots) {
    double lam = lam_of(zp);
    double cpre = (1.0 / zp) * std::exp(lam * zp * zp);
    if (!(cpre > 0.0)) continue;
    // r#(z) = lam (1 - zp^4) z^2 / (z^2 zp^2 - 1)
    RationalFn rs(Poly({0.0, 0.0, lam * (1.0 - std::pow(zp, 4.0))}),
                  Poly({-1.0, 0.0, zp * zp}));
    RationalFn r = rs.reflect();
    RiemannMap map = RiemannMap::make(Side::bounded, InnerKind::zfact, cpre, 0.0, r);
    if (!detail::map_univalent(map)) continue;
    ++univalent_found;
    if (!result) {
      SolveRecord rec;
      rec.zplus = zp;
      rec.lambda = lam;
      RationalFn h = RationalFn::pole_term(spec.alpha, cplx(1.0), 1) +
                     RationalFn::pole_term(spec.alpha, cplx(-1.0), 1);
      result = detail::assemble(spec, map, h, rec, n);
    }
  }
  if (!result) throw error(errc::not_univalent, "two-point family: no univalent root");
  result->solved.univalent_roots = univalent_found;
  return *result;
}

// exp-image construction with the numerically extracted quadrature function
struct ExpImageExtraction {
  cplx pole{0.0};
  cplx residue{0.0};
};

/**
 * Quadrature data of the exponential image of a disk, extracted numerically:
 * project the transported density onto the exterior side, subtract from the
 * explicit boundary extension, and read the pole and residue off small-circle
 * contours.
 */
inline ExpImageExtraction exp_image_extract(cplx center, double radius, int n = 2048) {
  if (!(radius > 0.0 && radius < M_PI))
    throw error(errc::not_injective, "exp image: need radius < pi");
  BoundaryCurve img;
  img.orientation = +1;
  img.t.resize(n);
  img.w.resize(n);
  img.dw.resize(n);
  std::vector<cplx> dens(n);
  double r2 = radius * radius;
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * M_PI * k / n;
    cplx e(std::cos(t), std::sin(t));
    cplx zeta = center + radius * e;  // classical boundary point
    cplx w = std::exp(zeta);
    img.t[k] = t;
    img.w[k] = w;
    img.dw[k] = w * radius * cplx(0.0, 1.0) * e;
    dens[k] = r2 / ((zeta - center) * w);  // h(log w)/w with the tracked branch
  }
  cplx p0 = std::exp(center);
  double delta = 0.3 * img.min_distance(p0);
  auto interior_part = [&](cplx w) {
    return cauchy_projection(img, dens, ProjSide::interior, w);
  };
  auto branch_log = [&](cplx w) {
    cplx l = std::log(w);
    double twopi = 2.0 * M_PI;
    double kk = std::round((center.imag() - l.imag()) / twopi);
    return l + cplx(0.0, twopi * kk);
  };
  auto h_tilde = [&](cplx w) {
    cplx f_expl = r2 / ((branch_log(w) - center) * w);
    return f_expl - interior_part(w);
  };
  cplx res = detail::circle_integral(h_tilde, p0, delta, 128);
  cplx mom = detail::circle_integral([&](cplx w) { return w * h_tilde(w); }, p0, delta, 128);
  if (std::abs(res) < 1e-12)
    throw error(errc::no_solution, "exp image: vanishing residue");
  return {mom / res, res};
}

inline LQDInstance exp_image(cplx center, double radius, int n = 1024) {
  if (!(radius > 0.0 && radius < M_PI))
    throw error(errc::not_injective, "exp image: need radius < pi (height below 2 pi)");
  FamilySpec spec;
  spec.kind = FamilyKind::exp_image;
  spec.center = center;
  spec.r = radius;
  ExpImageExtraction ex = exp_image_extract(center, radius, std::max(n, 2048));
  cplx w0 = std::exp(center);
  RiemannMap map = detail::onept_bounded_nonsingular_map(w0, radius * radius);
  RationalFn h = RationalFn::pole_term(ex.residue, ex.pole, 1);
  LQDInstance inst = detail::assemble(spec, map, h, {}, n);
  return inst;
}

inline LQDInstance build_family(const FamilySpec& spec, int n = 1024) {
  switch (spec.kind) {
    case FamilyKind::null_disk:
      return build_null_disk(spec, n);
    case FamilyKind::exp_image:
      return exp_image(spec.center, spec.r, n);
    case FamilyKind::onept_bounded_nonsingular:
      return build_onept_bounded_nonsingular(spec, n);
    case FamilyKind::onept_unbounded_nonsingular:
      return build_onept_unbounded_nonsingular(spec, n);
    case FamilyKind::onept_bounded_singular:
      return build_onept_bounded_singular(spec, n);
    case FamilyKind::onept_unbounded_singular:
      return build_onept_unbounded_singular(spec, n);
    case FamilyKind::constant:
      return build_constant(spec, n);
    case FamilyKind::monomial_nonsingular:
      return build_monomial_nonsingular(spec, n);
    case FamilyKind::monomial_singular_k2:
      return build_monomial_singular_k2(spec, n);
    case FamilyKind::twopoint_symmetric:
      return build_twopoint_symmetric(spec, n);
  }
  throw error(errc::bad_input, "build_family: unknown kind");
}

// ---------------------------------------------------------------------------
// invariance transforms
// ---------------------------------------------------------------------------

/** Reparametrize by z -> e^{i theta} z (the image domain is unchanged). */
inline RiemannMap rotate_map(const RiemannMap& m, double theta) {
  cplx rot(std::cos(theta), std::sin(theta));
  cplx pre = m.prefactor();
  InnerKind kind = m.inner_kind();
  if (kind == InnerKind::zfact || kind == InnerKind::z_blaschke) pre *= rot;
  cplx z0 = m.inner_zero() / rot;
  RationalFn r = m.exponent().compose_scale(std::conj(rot));  // r(z/rot̄) = r(e^{-i th} z)
  return RiemannMap::make(m.side(), kind, pre, z0, r);
}

/** The map of a^{-1} Omega, renormalized. */
inline RiemannMap scale_map(const RiemannMap& m, cplx a) {
  if (std::abs(a) < 1e-300) throw error(errc::bad_input, "scale_map: a must be nonzero");
  RiemannMap scaled = RiemannMap::make(m.side(), m.inner_kind(), m.prefactor() / a,
                                       m.inner_zero(), m.exponent());
  if (m.unbounded()) scaled = rotate_map(scaled, std::arg(a));
  return scaled;
}

inline LQDInstance transform_scale(const LQDInstance& inst, cplx a, int n = 1024) {
  RiemannMap map = scale_map(inst.domain.map, a);
  // h_new(w) = a h(a w)
  RationalFn h = inst.quad.h.compose_scale(a) * a;
  FamilySpec spec = inst.spec;
  LQDInstance out = detail::assemble(spec, map, h, inst.solved, n);
  // exact charge relation cross-check: q_new = q - ln|a|^2 on singular domains
  if (out.domain.singular) {
    cplx expect = inst.quad.q - std::log(std::norm(a));
    if (std::abs(out.quad.q - expect) > 1e-8 * (1.0 + std::abs(expect)))
      throw error(errc::bad_input, "transform_scale: charge bookkeeping mismatch");
  }
  return out;
}

namespace detail {

inline RiemannMap calibrate_prefactor(Side side, InnerKind kind, cplx z0, RationalFn r,
                                      const std::function<cplx(cplx)>& target) {
  RiemannMap probe = RiemannMap::make(side, kind, 1.0, z0, r);
  const cplx zp1 = (side == Side::bounded) ? cplx(0.41, 0.13) : cplx(2.1, 0.7);
  const cplx zp2 = (side == Side::bounded) ? cplx(-0.27, 0.33) : cplx(-1.6, 1.9);
  cplx c1 = target(zp1) / probe.eval(zp1);
  cplx c2 = target(zp2) / probe.eval(zp2);
  if (std::abs(c1 - c2) > 1e-8 * (1.0 + std::abs(c1)))
    throw error(errc::bad_input, "map inversion: probe calibration inconsistent");
  RiemannMap built = RiemannMap::make(side, kind, c1, z0, r);
  if (side == Side::unbounded) {
    // rotate so the derivative at infinity is real positive
    double th = -std::arg(built.deriv_at_infinity());
    built = rotate_map(built, th);
  }
  return built;
}

}  // namespace detail

/** The Riemann map of the inverted domain 1/Omega in factored normal form. */
inline RiemannMap invert_map(const RiemannMap& m) {
  const bool unb = m.unbounded();
  const bool sing = m.zero_in_image();
  RationalFn rs = m.exponent_refl();

  if (!unb && !sing) {
    // bounded without 0 <-> bounded without 0: phi_new = 1/phi
    return RiemannMap::make(Side::bounded, InnerKind::one, 1.0 / m.prefactor(), 0.0,
                            m.exponent() * cplx(-1.0));
  }
  if (!unb && sing) {
    // bounded with 0 -> unbounded without 0: phi_new(z) = 1/phi(M(z))
    cplx z0 = m.inner_kind() == InnerKind::blaschke ? m.inner_zero() : cplx(0.0);
    // M(z) = T_{z0}(1/z) = (z0 z + 1)/(z + conj(z0))
    auto M = [z0](cplx z) { return (z0 * z + 1.0) / (z + std::conj(z0)); };
    RationalFn rs_new =
        RationalFn::constant(rs.eval(z0)) -
        rs.compose_mobius(z0, 1.0, 1.0, std::conj(z0));
    RationalFn r_new = rs_new.reflect();
    auto target = [&m, M](cplx z) { return 1.0 / m.eval(M(z)); };
    return detail::calibrate_prefactor(Side::unbounded, InnerKind::zfact, 0.0, r_new,
                                       target);
  }
  if (unb && !sing) {
    // unbounded without 0 -> bounded with 0 (zero at the reference origin)
    auto M = [](cplx z) { return 1.0 / z; };
    // rs_new(z) = -rs(1/z); rs(inf) = 0 keeps the normalization
    RationalFn rs_new = rs.compose_mobius(0.0, 1.0, 1.0, 0.0) * cplx(-1.0);
    RationalFn r_new = rs_new.reflect();
    auto target = [&m, M](cplx z) { return 1.0 / m.eval(M(z)); };
    return detail::calibrate_prefactor(Side::bounded, InnerKind::zfact, 0.0, r_new, target);
  }
  // unbounded with 0 -> unbounded with 0
  cplx z0 = m.inner_zero();
  // sigma(z) = (z + 1/conj(z0)) / (1 + z/z0): sigma(inf) = z0, new zero at -z0
  cplx a = 1.0, b = 1.0 / std::conj(z0), c = 1.0 / z0, d = 1.0;
  auto M = [=](cplx z) { return (a * z + b) / (c * z + d); };
  RationalFn rs_new =
      RationalFn::constant(rs.eval(z0)) - rs.compose_mobius(a, b, c, d);
  RationalFn r_new = rs_new.reflect();
  auto target = [&m, M](cplx z) { return 1.0 / m.eval(M(z)); };
  return detail::calibrate_prefactor(Side::unbounded, InnerKind::z_blaschke, -z0, r_new,
                                     target);
}

inline LQDInstance transform_invert(const LQDInstance& inst, int n = 1024) {
  RiemannMap map = invert_map(inst.domain.map);
  // h_new(w) = -h(1/w) / w^2
  RationalFn h_raw = inst.quad.h.compose_mobius(0.0, 1.0, 1.0, 0.0) *
                     RationalFn(Poly({-1.0}), Poly({0.0, 0.0, 1.0}));
  FamilySpec spec = inst.spec;
  return detail::assemble(spec, map, h_raw, inst.solved, n);
}

/**
 * The k-th root preimage. Supported when the preimage is connected and
 * simply connected: bounded domains containing 0 and unbounded ones not
 * containing 0 (the root hub sits at 0 or at infinity). A bounded domain
 * missing both splits into k pieces; an unbounded domain containing both
 * has a connected but multiply connected preimage, which the disk-based
 * representation cannot carry.
 */
inline LQDInstance transform_power_root(const LQDInstance& inst, int k, int n = 1024) {
  if (k < 1) throw error(errc::bad_input, "power_root: k >= 1");
  const RiemannMap& m = inst.domain.map;
  const bool unb = m.unbounded();
  const bool sing = m.zero_in_image();
  if (!unb && !sing)
    throw error(errc::disconnected_preimage,
                "power_root: preimage of a bounded domain missing 0 splits into k pieces");
  if (unb && sing)
    throw error(errc::multiply_connected,
                "power_root: preimage is connected but multiply connected");

  RationalFn rs = m.exponent_refl();
  RiemannMap root_map;
  if (!unb) {
    // bounded, 0 inside: move the zero to the reference origin, take the root
    cplx z0 = (m.inner_kind() == InnerKind::blaschke) ? m.inner_zero() : cplx(0.0);
    // rho(v) = rs(T_{z0}(v)), T(v) = (v + z0)/(1 + conj(z0) v)
    RationalFn rho = rs.compose_mobius(1.0, z0, std::conj(z0), 1.0);
    cplx C2 = m.prefactor();
    if (m.inner_kind() == InnerKind::blaschke)
      C2 *= -std::conj(z0) / std::abs(z0);  // b_{z0}(T(v)) = -(conj z0/|z0|) v
    cplx amp = C2 * std::exp(rho.eval(cplx(0.0)));
    cplx eta = std::conj(amp) / std::abs(amp);
    // rs_hat(z) = (rho(eta z^k) - rho(0))/k
    RationalFn rho_k = rho.compose_scale(eta).compose_power(k);
    RationalFn rs_hat =
        (rho_k - RationalFn::constant(rho.eval(cplx(0.0)))) * cplx(1.0 / k);
    double pre_hat = std::pow(std::abs(amp), 1.0 / k);
    root_map = RiemannMap::make(Side::bounded, InnerKind::zfact, pre_hat, 0.0,
                                rs_hat.reflect());
  } else {
    // unbounded, 0 outside: hub at infinity
    cplx amp = m.prefactor();
    cplx eta = std::conj(amp) / std::abs(amp);
    RationalFn rs_hat = rs.compose_scale(eta).compose_power(k) * cplx(1.0 / k);
    double pre_hat = std::pow(std::abs(amp), 1.0 / k);
    root_map = RiemannMap::make(Side::unbounded, InnerKind::zfact, pre_hat, 0.0,
                                rs_hat.reflect());
  }
  // h_new(w) = (1/k) w^{k-1} h(w^k)
  std::vector<cplx> mono(k, cplx(0.0));
  mono[k - 1] = cplx(1.0 / k);
  RationalFn h_raw = inst.quad.h.compose_power(k) * RationalFn::from_poly(Poly(mono));
  FamilySpec spec = inst.spec;
  return detail::assemble(spec, root_map, h_raw, inst.solved, n);
}

}  // namespace lqd

#endif  // LQD_FAMILIES_HPP
