#include <catch2/catch_amalgamated.hpp>

#include "lqd/families.hpp"
#include "lqd/verify.hpp"

using namespace lqd;
using Catch::Approx;

namespace {

FamilySpec null_spec(double r, bool exterior) {
  FamilySpec s;
  s.kind = FamilyKind::null_disk;
  s.r = r;
  s.exterior = exterior;
  return s;
}

FamilySpec bounded_singular_spec(cplx w0, cplx alpha, cplx q) {
  FamilySpec s;
  s.kind = FamilyKind::onept_bounded_singular;
  s.w0 = w0;
  s.alpha = alpha;
  s.q = q;
  s.has_q = true;
  return s;
}

bool h_matches(const RationalFn& a, const RationalFn& b, double tol = 1e-8) {
  return rat_close(a, b, tol);
}

}  // namespace

TEST_CASE("null disks") {
  LQDInstance in = build_family(null_spec(1.5, false));
  CHECK(in.quad.h.is_zero());
  CHECK(std::abs(in.quad.q - cplx(std::log(2.25))) < 1e-12);
  CHECK(in.quad.nodes.empty());
  CHECK(in.domain.singular);

  LQDInstance out = build_family(null_spec(1.5, true));
  CHECK(out.quad.h.is_zero());
  CHECK(std::abs(out.quad.q) < 1e-12);
  CHECK_FALSE(out.domain.singular);
  CHECK(out.domain.unbounded);
}

TEST_CASE("bounded one-point family and its direct problem") {
  FamilySpec s;
  s.kind = FamilyKind::onept_bounded_nonsingular;
  s.w0 = cplx(0.25);
  s.alpha = cplx(2.0);
  LQDInstance inst = build_family(s);

  // boundary satisfies |ln(w/w0)|^2 = alpha
  double worst = 0.0;
  for (const cplx& w : inst.domain.curve.w)
    worst = std::max(worst, std::abs(std::norm(std::log(w / s.w0)) - 2.0));
  CHECK(worst < 1e-8);

  // direct problem recovers h = alpha/(w - w0)
  QuadratureData qd = direct_problem(inst.domain.map);
  CHECK(h_matches(qd.h, RationalFn::pole_term(s.alpha, s.w0, 1), 1e-9));
  CHECK(std::abs(qd.q) < 1e-12);

  // out-of-range alpha rejected
  s.alpha = cplx(12.0);
  CHECK_THROWS_AS(build_family(s), error);
}

TEST_CASE("inverse problem closed forms") {
  // constant family: r(z) = alpha c z
  FamilySpec s;
  s.kind = FamilyKind::constant;
  s.alpha = cplx(1.0);
  s.c = 0.5;
  LQDInstance inst = build_family(s);
  RationalFn r = inverse_r(inst.quad, inst.domain.map);
  CHECK(h_matches(r, RationalFn(Poly({0.0, cplx(0.5)}), Poly::one()), 1e-9));

  // monomial family: r = alpha k (W_k - W_k(0)) = alpha k c^k z^k
  FamilySpec m;
  m.kind = FamilyKind::monomial_nonsingular;
  m.alpha = cplx(0.8);
  m.k = 2;
  m.c = 0.4;
  LQDInstance mi = build_family(m);
  RationalFn rm = inverse_r(mi.quad, mi.domain.map);
  RationalFn expect(Poly({0.0, 0.0, m.alpha * 2.0 * 0.16}), Poly::one());
  CHECK(h_matches(rm, expect, 1e-8));

  // bounded one-point: r(z) = (alpha w0 / phi'(0)) / z
  FamilySpec b;
  b.kind = FamilyKind::onept_bounded_nonsingular;
  b.w0 = cplx(0.25);
  b.alpha = cplx(2.0);
  LQDInstance bi = build_family(b);
  RationalFn rb = inverse_r(bi.quad, bi.domain.map);
  cplx dphi0 = bi.domain.map.deriv(cplx(0.0));
  RationalFn expect_b = RationalFn::pole_term(b.alpha * b.w0 / dphi0, 0.0, 1);
  CHECK(h_matches(rb, expect_b, 1e-8));
  // and it reproduces the stored exponent
  CHECK(h_matches(rb, bi.domain.map.exponent(), 1e-8));
}

TEST_CASE("round trip through the direct problem for every family") {
  std::vector<FamilySpec> specs;
  specs.push_back(null_spec(1.5, false));
  {
    FamilySpec s;
    s.kind = FamilyKind::onept_bounded_nonsingular;
    s.w0 = cplx(0.25);
    s.alpha = cplx(2.0);
    specs.push_back(s);
  }
  specs.push_back(bounded_singular_spec(cplx(1.0), cplx(0.7), cplx(0.5)));
  {
    FamilySpec s;
    s.kind = FamilyKind::onept_unbounded_nonsingular;
    s.w0 = cplx(1.9);
    s.alpha = cplx(1.5);
    s.c = 0.5;
    specs.push_back(s);
    s.alpha = cplx(1.5, 0.3);
    specs.push_back(s);
  }
  {
    FamilySpec s;
    s.kind = FamilyKind::constant;
    s.alpha = cplx(1.0);
    s.c = 0.5;
    specs.push_back(s);
  }
  {
    FamilySpec s;
    s.kind = FamilyKind::monomial_nonsingular;
    s.alpha = cplx(0.8);
    s.k = 2;
    s.c = 0.4;
    specs.push_back(s);
  }
  {
    FamilySpec s;
    s.kind = FamilyKind::monomial_singular_k2;
    s.alpha = cplx(-1.0);
    s.q = cplx(-2.0);
    s.has_q = true;
    s.c = 0.15;
    specs.push_back(s);
  }
  {
    FamilySpec s;
    s.kind = FamilyKind::twopoint_symmetric;
    s.alpha = cplx(0.5);
    s.q = cplx(0.0);
    s.has_q = true;
    specs.push_back(s);
  }

  for (const FamilySpec& s : specs) {
    INFO("family kind " << static_cast<int>(s.kind));
    LQDInstance inst = build_family(s);
    QuadratureData qd = direct_problem(inst.domain.map);
    if (inst.quad.h.is_zero())
      CHECK(qd.h.is_zero());
    else
      CHECK(h_matches(qd.h, inst.quad.h, 1e-6));
    CHECK(std::abs(qd.q - inst.quad.q) < 1e-6 * (1.0 + std::abs(inst.quad.q)));

    // inverse problem reproduces the stored exponent
    RationalFn r = inverse_r(inst.quad, inst.domain.map);
    if (inst.domain.map.exponent().is_zero())
      CHECK(r.num().scale() < 1e-9);
    else
      CHECK(h_matches(r, inst.domain.map.exponent(), 1e-6));
  }
}

TEST_CASE("bounded singular one-point solve satisfies its relations") {
  cplx alpha(0.7), q(0.5);
  LQDInstance inst = build_family(bounded_singular_spec(cplx(1.0), alpha, q));
  REQUIRE(inst.solved.z0.has_value());
  REQUIRE(inst.solved.lambda.has_value());
  cplx z0 = *inst.solved.z0, lam = *inst.solved.lambda;
  CHECK(std::abs(z0) < 1.0);
  // lambda = conj(alpha) / conj(phi'(0)) and q = lam z0 + conj(lam)/z0 - ln|z0|^2
  cplx dphi0 = inst.domain.map.deriv(cplx(0.0));
  CHECK(std::abs(lam * std::conj(dphi0) - std::conj(alpha)) < 1e-8);
  cplx qv = lam * z0 + std::conj(lam) / z0 - std::log(std::norm(z0));
  CHECK(std::abs(qv - q) < 1e-8);
  CHECK(std::abs(inst.quad.q - q) < 1e-8);
  // phi(0) = w0
  CHECK(std::abs(inst.domain.map.eval(cplx(0.0)) - cplx(1.0)) < 1e-12);
}

TEST_CASE("two-point solve satisfies the alpha relation") {
  FamilySpec s;
  s.kind = FamilyKind::twopoint_symmetric;
  s.alpha = cplx(0.5);
  s.q = cplx(0.0);
  s.has_q = true;
  LQDInstance inst = build_family(s);
  REQUIRE(inst.solved.zplus.has_value());
  double zp = inst.solved.zplus->real();
  double lam = inst.solved.lambda->real();
  CHECK(std::abs(lam * lam + lam * (std::pow(zp, 4.0) - 1.0) / (2.0 * zp * zp) - 0.5) <
        1e-10);
  CHECK(std::abs(inst.domain.map.eval(cplx(zp)) - cplx(1.0)) < 1e-10);
  CHECK(std::abs(inst.quad.q) < 1e-8);
}

TEST_CASE("unbounded singular one-point: map-first construction") {
  FamilySpec s;
  s.kind = FamilyKind::onept_unbounded_singular;
  s.alpha = cplx(-0.15);
  s.c = 0.389;
  s.z0_given = cplx(-3.13);
  s.z1_given = cplx(2.28);
  LQDInstance inst = build_family(s);
  // the induced w0 should come out near the figure's w0 = 2
  CHECK(std::abs(inst.spec.w0 - cplx(2.0)) < 0.2);
  // lambda relation holds
  cplx lam = *inst.solved.lambda, z1 = *inst.solved.z1;
  const RiemannMap& m = inst.domain.map;
  CHECK(std::abs(lam * std::conj(z1) * std::conj(m.deriv(z1)) -
                 std::conj(s.alpha) * std::conj(m.eval(z1))) < 1e-9);
  // charge matches the closed form
  cplx z0 = *inst.solved.z0;
  cplx qexp = lam / (1.0 - z0 * std::conj(z1)) + std::conj(lam) / (1.0 - z1 / z0) +
              std::log(std::norm(cplx(s.c) * z0));
  CHECK(std::abs(inst.quad.q - qexp) < 1e-9);
}

TEST_CASE("unbounded singular one-point: parameter solve") {
  FamilySpec s;
  s.kind = FamilyKind::onept_unbounded_singular;
  s.alpha = cplx(-0.15);
  s.c = 0.389;
  s.w0 = cplx(2.0);
  // target the same region as the map-first construction
  FamilySpec mf = s;
  mf.z0_given = cplx(-3.13);
  mf.z1_given = cplx(2.28);
  LQDInstance ref = build_family(mf);
  s.q = ref.quad.q;
  s.w0 = ref.spec.w0;
  s.has_q = true;
  LQDInstance inst = build_family(s);
  CHECK(std::abs(inst.quad.q - ref.quad.q) < 1e-7);
  CHECK(std::abs(*inst.solved.z0 - cplx(-3.13)) < 1e-6);
  CHECK(std::abs(*inst.solved.z1 - cplx(2.28)) < 1e-6);
}

TEST_CASE("monomial singular k=2 satisfies the beta closed form") {
  FamilySpec s;
  s.kind = FamilyKind::monomial_singular_k2;
  s.alpha = cplx(-1.0);
  s.q = cplx(-2.0);
  s.has_q = true;
  s.c = 0.15;
  LQDInstance inst = build_family(s);
  REQUIRE(inst.solved.z0.has_value());
  REQUIRE(inst.solved.beta.has_value());
  cplx z0 = *inst.solved.z0, beta = *inst.solved.beta;
  CHECK(std::abs(z0) > 1.0);
  double c = s.c;
  cplx alpha = s.alpha;
  cplx expect = 2.0 * c * c * (std::norm(z0) - 1.0) *
                (4.0 * c * c * alpha * z0 + std::conj(z0)) /
                (std::norm(z0) * (16.0 * std::pow(c, 4.0) * std::norm(alpha) - 1.0));
  CHECK(std::abs(beta - expect) < 1e-10);
  // beta doubles as 2 c conj(f0) of the map's own expansion
  LaurentData L = laurent_coeffs(inst.domain.map, 4);
  CHECK(std::abs(beta - 2.0 * c * std::conj(L.f(0))) < 1e-8);
  // charge is reproduced
  CHECK(std::abs(inst.quad.q - s.q) < 1e-8);
}

TEST_CASE("charge: closed form against the contour extraction") {
  LQDInstance inst = build_family(bounded_singular_spec(cplx(1.0), cplx(0.7), cplx(0.5)));
  cplx qn = charge_numeric(inst.domain.map, inst.domain);
  CHECK(std::abs(qn - inst.quad.q) < 1e-8);

  FamilySpec s;
  s.kind = FamilyKind::monomial_singular_k2;
  s.alpha = cplx(0.5);
  s.q = cplx(-2.0);
  s.has_q = true;
  s.c = 0.12;
  LQDInstance mi = build_family(s);
  CHECK(std::abs(charge_numeric(mi.domain.map, mi.domain) - mi.quad.q) < 1e-8);
}

TEST_CASE("schwarz function boundary values and interior structure") {
  LQDInstance inst = build_family(null_spec(1.5, false));
  for (int k = 0; k < 8; ++k) {
    double t = 2.0 * M_PI * k / 8;
    cplx w = 1.5 * cplx(std::cos(t), std::sin(t));
    cplx s0 = schwarz_eval(inst.domain.map, w);
    CHECK(std::abs(s0 - std::log(2.25) / w) < 1e-10);
    // classical lift equals conj(w) on the boundary
    CHECK(std::abs(std::exp(w * s0) / w - std::conj(w)) < 1e-10);
  }

  // exp image: boundary residual of the generalized boundary values
  LQDInstance ei = exp_image(cplx(-1.0), 2.0);
  double worst = 0.0;
  for (int k = 0; k < ei.domain.curve.size(); k += 37) {
    cplx w = ei.domain.curve.w[k];
    cplx s0 = schwarz_boundary(ei.domain.map, ei.domain.curve.t[k], w);
    worst = std::max(worst, std::abs(s0 - std::log(std::norm(w)) / w));
  }
  CHECK(worst < 1e-7);

  // bounded singular: S0 has the charge as its residue at 0
  LQDInstance bs = build_family(bounded_singular_spec(cplx(1.0), cplx(0.7), cplx(0.5)));
  cplx res = detail::circle_integral(
      [&](cplx w) { return schwarz_eval(bs.domain.map, w); }, cplx(0.0),
      0.4 * bs.domain.dist0, 64);
  CHECK(std::abs(res - bs.quad.q) < 1e-9);
}

TEST_CASE("exponential image of the classical example") {
  ExpImageExtraction ex = exp_image_extract(cplx(-1.0), 2.0, 2048);
  CHECK(std::abs(ex.pole - cplx(std::exp(-1.0))) < 1e-8);
  CHECK(std::abs(ex.residue - cplx(4.0)) < 1e-6);

  // classical disk identity: D_{0.5}(0) has h = r^2/(w - w0) with w0 = 0
  ExpImageExtraction small = exp_image_extract(cplx(0.0), 0.5, 2048);
  CHECK(std::abs(small.pole - cplx(1.0)) < 1e-8);
  CHECK(std::abs(small.residue - cplx(0.25)) < 1e-6);

  CHECK_THROWS_AS(exp_image(cplx(0.0), 3.5), error);
}

TEST_CASE("scaling transform") {
  LQDInstance inst = build_family(bounded_singular_spec(cplx(1.0), cplx(0.7), cplx(0.5)));
  cplx a(1.3, -0.4);
  LQDInstance scaled = transform_scale(inst, a);
  // h_new = a h(a w): the node moves to w0/a
  PrincipalParts pp = rat_principal_parts(scaled.quad.h);
  REQUIRE(pp.parts.size() == 1);
  CHECK(std::abs(pp.parts[0].location - cplx(1.0) / a) < 1e-9);
  CHECK(std::abs(pp.parts[0].residue() - cplx(0.7)) < 1e-9);
  CHECK(std::abs(scaled.quad.q - (inst.quad.q - std::log(std::norm(a)))) < 1e-9);
  // boundary is the scaled boundary
  cplx probe = inst.domain.curve.w[17] / a;
  CHECK(scaled.domain.curve.min_distance(probe) < 1e-3);
}

TEST_CASE("inversion transform across the four cases") {
  // exterior null disk of radius 1/r inverts to the interior disk of radius r
  FamilySpec ns = null_spec(1.0 / 1.5, true);
  LQDInstance next = build_family(ns);
  LQDInstance ninv = transform_invert(next);
  CHECK_FALSE(ninv.domain.unbounded);
  CHECK(ninv.domain.singular);
  for (const cplx& w : ninv.domain.curve.w) CHECK(std::abs(std::abs(w) - 1.5) < 1e-9);

  // bounded nonsingular one-point inverts to the family with w0 -> 1/w0
  FamilySpec b;
  b.kind = FamilyKind::onept_bounded_nonsingular;
  b.w0 = cplx(0.25);
  b.alpha = cplx(2.0);
  LQDInstance bi = build_family(b);
  LQDInstance binv = transform_invert(bi);
  CHECK_FALSE(binv.domain.unbounded);
  CHECK_FALSE(binv.domain.singular);
  QuadratureData qd = direct_problem(binv.domain.map);
  CHECK(h_matches(qd.h, RationalFn::pole_term(cplx(2.0), cplx(4.0), 1), 1e-7));

  // bounded singular inverts to unbounded nonsingular
  LQDInstance bs = build_family(bounded_singular_spec(cplx(1.0), cplx(0.7), cplx(0.5)));
  LQDInstance bsi = transform_invert(bs);
  CHECK(bsi.domain.unbounded);
  CHECK_FALSE(bsi.domain.singular);
  // boundary points invert pointwise
  cplx probe = 1.0 / bs.domain.curve.w[41];
  CHECK(bsi.domain.curve.min_distance(probe) < 1e-3);

  // unbounded singular inverts to unbounded singular with the charge law
  FamilySpec us;
  us.kind = FamilyKind::onept_unbounded_singular;
  us.alpha = cplx(-0.15);
  us.c = 0.389;
  us.z0_given = cplx(-3.13);
  us.z1_given = cplx(2.28);
  LQDInstance ui = build_family(us);
  LQDInstance uinv = transform_invert(ui);
  CHECK(uinv.domain.unbounded);
  CHECK(uinv.domain.singular);
  double area_ext = weighted_area_exterior(ui.domain);
  // residue-free bookkeeping: the raw image -h(1/w)/w^2 carries -alpha at 0
  cplx expect_q = -ui.quad.q - area_ext - us.alpha;
  CHECK(std::abs(uinv.quad.q - expect_q) < 1e-6);
  cplx probe2 = 1.0 / ui.domain.curve.w[77];
  CHECK(uinv.domain.curve.min_distance(probe2) < 1e-3);
}

TEST_CASE("power map on a bounded singular instance") {
  LQDInstance inst = build_family(bounded_singular_spec(cplx(1.0), cplx(0.7), cplx(0.5)));
  LQDInstance root = transform_power_root(inst, 2);
  CHECK_FALSE(root.domain.unbounded);
  CHECK(root.domain.singular);
  // squared root-map values land exactly on the original domain: phi_root(z)^2
  // must be a point of the original boundary (as a curve, not just samples)
  for (int k = 0; k < root.domain.curve.size(); k += 53) {
    cplx w2 = root.domain.curve.w[k] * root.domain.curve.w[k];
    cplx zpre = inst.domain.map.inverse(w2);  // must land on |z| = 1
    CHECK(std::abs(std::abs(zpre) - 1.0) < 1e-9);
  }
  // quadrature function: (1/2) w h(w^2)
  RationalFn expect = inst.quad.h.compose_power(2) *
                      RationalFn::from_poly(Poly({0.0, 0.5}));
  CHECK(h_matches(root.quad.h, expect, 1e-8));
  // charge halves
  CHECK(std::abs(root.quad.q - inst.quad.q / 2.0) < 1e-8);

  // unsupported topologies are reported
  FamilySpec b;
  b.kind = FamilyKind::onept_bounded_nonsingular;
  b.w0 = cplx(0.25);
  b.alpha = cplx(2.0);
  CHECK_THROWS_AS(transform_power_root(build_family(b), 2), error);
}
