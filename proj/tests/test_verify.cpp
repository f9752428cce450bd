#include <catch2/catch_amalgamated.hpp>

#include "lqd/verify.hpp"

#include <random>

using namespace lqd;
using Catch::Approx;

namespace {

LQDInstance null_disk(double r, bool exterior = false) {
  FamilySpec s;
  s.kind = FamilyKind::null_disk;
  s.r = r;
  s.exterior = exterior;
  return build_family(s);
}

LQDInstance bounded_singular(cplx w0, cplx alpha, cplx q) {
  FamilySpec s;
  s.kind = FamilyKind::onept_bounded_singular;
  s.w0 = w0;
  s.alpha = alpha;
  s.q = q;
  s.has_q = true;
  return build_family(s);
}

LQDInstance fig2_instance() {
  FamilySpec s;
  s.kind = FamilyKind::onept_bounded_nonsingular;
  s.w0 = cplx(1.0);
  s.alpha = cplx(2.0);
  return build_family(s);
}

}  // namespace

TEST_CASE("quadrature identity on the null disk") {
  LQDInstance inst = null_disk(1.5);
  // f(w) = w alone: both sides vanish
  std::vector<RationalFn> one{RationalFn::identity()};
  VerificationReport rep = verify_quadrature(inst, one, 512, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.residual < 1e-8);

  VerificationReport full = verify_quadrature(inst, default_battery(inst.domain), 512);
  CHECK(full.pass);
}

TEST_CASE("quadrature identity on the exponential image with perturbation") {
  LQDInstance inst = exp_image(cplx(-1.0), 2.0);
  std::vector<RationalFn> battery = default_battery(inst.domain, 12);
  REQUIRE(battery.size() == 12);
  VerificationReport rep = verify_quadrature(inst, battery, 1024, 1e-6);
  CHECK(rep.pass);

  // perturbing h by +0.1/(w - e^{-1}) must break the identity visibly
  LQDInstance bad = inst;
  bad.quad.h = inst.quad.h + RationalFn::pole_term(0.1, cplx(std::exp(-1.0)), 1);
  VerificationReport brep = verify_quadrature(bad, battery, 1024, 1e-6);
  CHECK_FALSE(brep.pass);
  CHECK(brep.residual > 1e-2);
}

TEST_CASE("quadrature identity across the reference families") {
  std::vector<LQDInstance> insts;
  insts.push_back(null_disk(1.5));
  insts.push_back(bounded_singular(cplx(1.0), cplx(0.7), cplx(0.5)));
  {
    FamilySpec s;
    s.kind = FamilyKind::constant;
    s.alpha = cplx(1.0);
    s.c = 0.5;
    insts.push_back(build_family(s));
  }
  {
    FamilySpec s;
    s.kind = FamilyKind::twopoint_symmetric;
    s.alpha = cplx(0.5);
    s.q = cplx(0.0);
    s.has_q = true;
    insts.push_back(build_family(s));
  }
  {
    FamilySpec s;
    s.kind = FamilyKind::monomial_singular_k2;
    s.alpha = cplx(-1.0);
    s.q = cplx(-2.0);
    s.has_q = true;
    s.c = 0.15;
    insts.push_back(build_family(s));
  }
  for (const LQDInstance& inst : insts) {
    INFO("family " << static_cast<int>(inst.spec.kind));
    VerificationReport rep = verify_quadrature(inst, default_battery(inst.domain), 1024);
    CHECK(rep.pass);
  }
}

TEST_CASE("point charges are invisible to the identity") {
  LQDInstance inst = bounded_singular(cplx(1.0), cplx(0.7), cplx(0.5));
  std::vector<RationalFn> battery = default_battery(inst.domain);
  VerificationReport base = verify_quadrature(inst, battery, 1024);
  LQDInstance shifted = inst;
  shifted.quad.h = inst.quad.h + RationalFn::pole_term(cplx(0.35, -0.6), cplx(0.0), 1);
  VerificationReport rep = verify_quadrature(shifted, battery, 1024);
  CHECK(std::abs(rep.residual - base.residual) < 1e-9);
}

TEST_CASE("coincidence residuals across families") {
  std::vector<LQDInstance> insts;
  insts.push_back(null_disk(1.5));
  insts.push_back(null_disk(1.5, true));
  insts.push_back(exp_image(cplx(-1.0), 2.0));
  insts.push_back(bounded_singular(cplx(1.0), cplx(0.7), cplx(0.5)));
  {
    FamilySpec s;
    s.kind = FamilyKind::onept_unbounded_nonsingular;
    s.w0 = cplx(1.9);
    s.alpha = cplx(1.5);
    s.c = 0.5;
    insts.push_back(build_family(s));
  }
  {
    FamilySpec s;
    s.kind = FamilyKind::monomial_nonsingular;
    s.alpha = cplx(0.8);
    s.k = 2;
    s.c = 0.4;
    insts.push_back(build_family(s));
  }
  for (const LQDInstance& inst : insts) {
    INFO("family " << static_cast<int>(inst.spec.kind));
    VerificationReport rep = verify_coincidence(inst, 1024, 1e-6);
    CHECK(rep.pass);
  }
}

TEST_CASE("coincidence detects a wrong charge") {
  LQDInstance inst = bounded_singular(cplx(1.0), cplx(0.7), cplx(0.5));
  LQDInstance bad = inst;
  bad.quad.q += 0.05;
  VerificationReport rep = verify_coincidence(bad, 512, 1e-6);
  CHECK_FALSE(rep.pass);
  double wmax = 0.0;
  for (const cplx& w : inst.domain.curve.w) wmax = std::max(wmax, std::abs(w));
  CHECK(rep.residual >= 0.04 / wmax);
}

TEST_CASE("non-singular families report zero charge") {
  LQDInstance inst = fig2_instance();
  CHECK(inst.quad.q == cplx(0.0));
  VerificationReport rep = verify_coincidence(inst, 512, 1e-6);
  CHECK(rep.pass);
}

TEST_CASE("quadrature residual converges with n") {
  // a deliberately hard instance: monomial map close to its univalence bound
  FamilySpec s;
  s.kind = FamilyKind::monomial_nonsingular;
  s.alpha = cplx(0.8);
  s.k = 2;
  double climit = std::pow(0.8 * 4.0, -0.5);
  s.c = 0.93 * climit;
  LQDInstance inst = build_family(s);
  std::vector<RationalFn> battery = default_battery(inst.domain, 6);
  double r256 = verify_quadrature(inst, battery, 256).residual;
  double r512 = verify_quadrature(inst, battery, 512).residual;
  double r1024 = verify_quadrature(inst, battery, 1024).residual;
  CHECK(r512 <= std::max(r256 / 4.0, 1e-11));
  CHECK(r1024 <= std::max(r512 / 4.0, 1e-11));
}

TEST_CASE("quadrature pass survives scaling") {
  std::mt19937 rng(3u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LQDInstance inst = bounded_singular(cplx(1.0), cplx(0.7), cplx(0.5));
  for (int trial = 0; trial < 2; ++trial) {
    cplx a(1.0 + 0.5 * u(rng), 0.5 * u(rng));
    LQDInstance scaled = transform_scale(inst, a);
    VerificationReport rep =
        verify_quadrature(scaled, default_battery(scaled.domain), 1024);
    CHECK(rep.pass);
  }
}

TEST_CASE("lambda_max at the centered case") {
  LambdaMaxResult r = lambda_max(cplx(0.0), 0.7);
  CHECK(r.value == Approx(1.0).margin(1e-8));
  LambdaMaxResult r2 = lambda_max(cplx(0.0), -2.1);
  CHECK(r2.value == Approx(1.0).margin(1e-8));
}

TEST_CASE("lambda_max invariance under the argument sum") {
  // depends on z0, arg(lambda) only through |z0| and Arg z0 + Arg lambda
  double v1 = lambda_max(0.5 * std::polar(1.0, 0.3), 0.4).value;
  double v2 = lambda_max(0.5 * std::polar(1.0, 0.6), 0.1).value;
  CHECK(v1 == Approx(v2).epsilon(1e-10));
}

TEST_CASE("univalence threshold brackets") {
  // z0 = 0: the map z e^{lambda z} flips exactly at |lambda| = 1
  auto zmap = [](double lam) {
    return RiemannMap::make(Side::bounded, InnerKind::zfact, 1.0, 0.0,
                            RationalFn::pole_term(lam, 0.0, 1));
  };
  CHECK(univalence_check(zmap(0.99)).univalent);
  UnivalenceResult bad = univalence_check(zmap(1.05));
  CHECK_FALSE(bad.univalent);
  REQUIRE(bad.witness.has_value());
  cplx za = bad.witness->first, zb = bad.witness->second;
  CHECK(std::abs(zmap(1.05).eval(za) - zmap(1.05).eval(zb)) < 1e-9);

  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> umod(0.15, 0.6), uarg(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 5; ++trial) {
    cplx z0 = std::polar(umod(rng), uarg(rng));
    double argl = uarg(rng);
    double lmax = lambda_max(z0, argl).value;
    auto bmap = [&](double mag) {
      cplx lam = std::polar(mag, argl);
      return RiemannMap::make(Side::bounded, InnerKind::blaschke, 1.0 / std::abs(z0), z0,
                              RationalFn::pole_term(std::conj(lam), 0.0, 1));
    };
    CHECK(univalence_check(bmap(0.99 * lmax)).univalent);
    CHECK_FALSE(univalence_check(bmap(1.01 * lmax)).univalent);
  }
}

TEST_CASE("bounded one-point family loses injectivity past the critical exponent") {
  auto omap = [](double alpha) {
    cplx w0(0.25);
    cplx mu = std::conj(w0) / std::abs(w0) * std::sqrt(alpha);
    return RiemannMap::make(Side::bounded, InnerKind::one, w0, 0.0,
                            RationalFn::pole_term(std::conj(mu), 0.0, 1));
  };
  CHECK(univalence_check(omap(0.97 * M_PI * M_PI)).univalent);
  CHECK_FALSE(univalence_check(omap(1.1 * M_PI * M_PI)).univalent);
}

TEST_CASE("field grid matches the quadrature function") {
  LQDInstance inst = fig2_instance();
  std::vector<FieldSample> grid = field_grid(inst, 14, 0.3);
  REQUIRE(grid.size() > 40);
  double worst = 0.0;
  for (const FieldSample& s : grid) worst = std::max(worst, s.abs_diff);
  CHECK(worst < 1e-5);
}

TEST_CASE("field grid on a singular instance uses the cutoff variant") {
  LQDInstance inst = null_disk(1.5);
  std::vector<FieldSample> grid = field_grid(inst, 10, 0.25);
  REQUIRE(!grid.empty());
  for (const FieldSample& s : grid) CHECK(s.abs_diff < 1e-6);
}

TEST_CASE("weighted areas over domain regions") {
  // cutoff independence of the charge integral on a bounded singular domain
  LQDInstance inst = bounded_singular(cplx(1.0), cplx(0.7), cplx(0.5));
  WeightedAreaSpec w1, w2;
  w1.region = w2.region = WeightedAreaSpec::Region::domain_minus_disk;
  w1.dom = w2.dom = &inst.domain;
  w1.rcut = 0.2 * inst.domain.dist0;
  w2.rcut = 0.45 * inst.domain.dist0;
  double q1 = weighted_area(w1, 256, 1024) + std::log(w1.rcut * w1.rcut);
  double q2 = weighted_area(w2, 256, 1024) + std::log(w2.rcut * w2.rcut);
  CHECK(std::abs(q1 - q2) < 1e-8);

  // the cutoff-integral equals q + sum of finite-node residues here
  cplx c1 = rat_principal_parts(inst.quad.h).res_inf;
  CHECK(std::abs(q1 - (inst.quad.q.real() + (-c1.real()))) < 1e-7);

  // degenerate region
  WeightedAreaSpec zero;
  zero.region = WeightedAreaSpec::Region::annulus;
  zero.r1 = zero.r2 = 0.3;
  CHECK(weighted_area(zero) == 0.0);
}

TEST_CASE("electrostatic identity for the nonsingular transform") {
  // C over the domain equals h at exterior points (field version of the
  // identity), via the genuine 2-D route
  LQDInstance inst = fig2_instance();
  WeightedAreaSpec ws;
  ws.region = WeightedAreaSpec::Region::domain;
  ws.dom = &inst.domain;
  for (const cplx& w : exterior_points(inst.domain, 4, 0.6)) {
    cplx c = weighted_cauchy_area(ws, w, 96, 384);
    CHECK(std::abs(c - inst.quad.h.eval(w)) < 1e-6);
  }
}

TEST_CASE("inadmissible test functions are rejected") {
  LQDInstance inst = bounded_singular(cplx(1.0), cplx(0.7), cplx(0.5));
  // pole inside the domain
  RationalFn bad1 = RationalFn::pole_term(1.0, cplx(1.0), 1);
  CHECK_THROWS_AS(check_admissible(inst.domain, bad1), error);
  // missing vanishing at 0
  RationalFn bad2 = RationalFn::constant(1.0);
  CHECK_THROWS_AS(check_admissible(inst.domain, bad2), error);
}
