#ifndef LQD_COMPLEX_POLY_HPP
#define LQD_COMPLEX_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lqd {

using cplx = std::complex<double>;

constexpr double kEpsCluster = 1e-8;   // pole separation tolerance
constexpr double kEpsRoot    = 1e-12;  // root back-substitution tolerance

inline double eps_pole(const cplx& w) { return 1e-10 * (1.0 + std::abs(w)); }

enum class errc {
  pole_proximity,
  clustered_poles,
  non_convergence,
  near_boundary,
  non_finite,
  cutoff_violation,
  pole_on_circle,
  inversion_failure,
  insufficient_laurent_order,
  zero_on_boundary,
  no_solution,
  not_univalent,
  range_error,
  disconnected_preimage,
  multiply_connected,
  branch_ambiguity,
  inadmissible_test_function,
  not_injective,
  inconclusive,
  bad_input,
};

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

/** Complex polynomial, coefficients ascending in degree. */
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly({cplx(1.0, 0.0)}); }
  static Poly identity() { return Poly({cplx(0.0, 0.0), cplx(1.0, 0.0)}); }  // z
  static Poly constant(cplx a) { return Poly({a}); }

  static Poly from_roots(const std::vector<cplx>& roots, cplx leading = 1.0) {
    Poly p = constant(leading);
    for (const cplx& r : roots) p = p * Poly({-r, cplx(1.0, 0.0)});
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0.0);
  }
  cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

  cplx eval(const cplx& z) const {  // Horner
    cplx acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<cplx> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * double(k);
    return Poly(std::move(d));
  }

  /** Largest coefficient magnitude; 0 for the zero polynomial. */
  double scale() const {
    double s = 0.0;
    for (const cplx& a : c_) s = std::max(s, std::abs(a));
    return s;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<cplx> r(std::max(a.c_.size(), b.c_.size()), cplx(0.0));
    for (size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<cplx> r(std::max(a.c_.size(), b.c_.size()), cplx(0.0));
    for (size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) r[k] -= b.c_[k];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<cplx> r(a.c_.size() + b.c_.size() - 1, cplx(0.0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, cplx s) {
    std::vector<cplx> r = a.c_;
    for (cplx& x : r) x *= s;
    return Poly(std::move(r));
  }
  friend Poly operator*(cplx s, const Poly& a) { return a * s; }

  /** Euclidean division: *this = q*d + rem, returns {q, rem}. */
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw error(errc::bad_input, "polynomial division by zero");
    std::vector<cplx> rem = c_;
    int dd = d.degree();
    int qn = degree() - dd;
    if (qn < 0) return {Poly(), *this};
    std::vector<cplx> q(qn + 1, cplx(0.0));
    for (int k = qn; k >= 0; --k) {
      cplx f = rem[k + dd] / d.c_[dd];
      q[k] = f;
      for (int j = 0; j <= dd; ++j) rem[k + j] -= f * d.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }

  /** Coefficient-wise conjugation: p with conj coefficients (= conj(p(conj z))). */
  Poly conj_coeffs() const {
    std::vector<cplx> r = c_;
    for (cplx& x : r) x = std::conj(x);
    return Poly(std::move(r));
  }

 private:
  void trim() {
    double s = 0.0;
    for (const cplx& a : c_) s = std::max(s, std::abs(a));
    // exact-zero trim plus relative noise trim of the leading end
    while (!c_.empty() && std::abs(c_.back()) <= 1e-300) c_.pop_back();
    while (c_.size() > 1 && s > 0.0 && std::abs(c_.back()) < 1e-14 * s) c_.pop_back();
    if (c_.size() == 1 && std::abs(c_[0]) <= 1e-300) c_.clear();
  }

  std::vector<cplx> c_;
};

/**
 * All roots with multiplicity by Aberth-Ehrlich simultaneous iteration.
 * Deterministic: fixed initial circle, seeded perturbation restarts.
 */
inline std::vector<cplx> poly_roots(const Poly& p) {
  if (p.degree() < 1) throw error(errc::bad_input, "poly_roots: degree must be >= 1");
  const int n = p.degree();
  std::vector<cplx> a = p.coeffs();
  for (cplx& x : a) x /= p.leading();  // monic

  // Cauchy-style inclusion radius
  double R = 0.0;
  for (int k = 0; k < n; ++k) R = std::max(R, std::pow(std::abs(a[k]), 1.0 / (n - k)));
  R = 2.0 * std::max(R, 0.5);

  Poly monic(a);
  Poly dmon = monic.derivative();
  const double pscale = std::max(monic.scale(), 1.0);

  std::mt19937 rng(0x5eed1234u);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  std::vector<cplx> z(n);
  for (int restart = 0; restart < 4; ++restart) {
    for (int i = 0; i < n; ++i) {
      double th = 2.0 * M_PI * (i + 0.37) / n + 0.31 * restart;
      double rr = R * (1.0 + (restart > 0 ? 0.2 * unif(rng) : 0.0));
      z[i] = rr * cplx(std::cos(th), std::sin(th));
    }
    bool ok = false;
    for (int iter = 0; iter < 400; ++iter) {
      double moved = 0.0;
      for (int i = 0; i < n; ++i) {
        cplx pv = monic.eval(z[i]);
        cplx dv = dmon.eval(z[i]);
        if (std::abs(dv) < 1e-300) dv = cplx(1e-300, 0.0);
        cplx newt = pv / dv;
        cplx sum(0.0);
        for (int j = 0; j < n; ++j)
          if (j != i) {
            cplx diff = z[i] - z[j];
            if (std::abs(diff) < 1e-300) diff = cplx(1e-300, 0.0);
            sum += 1.0 / diff;
          }
        cplx denom = 1.0 - newt * sum;
        if (std::abs(denom) < 1e-300) denom = cplx(1e-300, 0.0);
        cplx step = newt / denom;
        z[i] -= step;
        moved = std::max(moved, std::abs(step));
      }
      if (moved < 1e-15 * std::max(1.0, R)) {
        ok = true;
        break;
      }
    }
    // accept when back-substitution is clean
    bool clean = true;
    for (int i = 0; i < n; ++i) {
      double mag = std::max(1.0, std::pow(std::abs(z[i]), n));
      if (std::abs(monic.eval(z[i])) > 1e-10 * pscale * mag) {
        clean = false;
        break;
      }
    }
    if (ok && clean) return z;
    if (clean) return z;
  }
  throw error(errc::non_convergence, "poly_roots: Aberth iteration did not converge");
}

namespace detail {

/**
 * Cluster near-coincident points into (centroid, count) pairs. An order-m
 * root comes out of the iteration as m points spread over ~eps^(1/m), so the
 * merge tolerance is generous; centroids average the spread away.
 */
inline std::vector<std::pair<cplx, int>> cluster_points(const std::vector<cplx>& pts,
                                                        double rel_tol = 1e-4) {
  std::vector<bool> used(pts.size(), false);
  std::vector<std::pair<cplx, int>> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    cplx c = pts[i];
    int cnt = 1;
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (!used[j] && std::abs(pts[j] - pts[i]) < rel_tol * (1.0 + std::abs(pts[i]))) {
        c += pts[j];
        used[j] = true;
        ++cnt;
      }
    }
    out.emplace_back(c / double(cnt), cnt);
  }
  return out;
}

}  // namespace detail

/** One pole with its principal-part coefficients c1..c_order. */
struct PolePart {
  cplx location{0.0};
  bool at_infinity = false;
  int order = 1;
  std::vector<cplx> coeffs;  // coeffs[k-1] multiplies (z - location)^{-k}

  cplx residue() const { return coeffs.empty() ? cplx(0.0) : coeffs[0]; }
};

struct PrincipalParts {
  Poly poly_part;
  std::vector<PolePart> parts;
  cplx res_inf{0.0};  // -(coefficient of 1/z at infinity)
};

/** Rational function num/den with cached pole data. */
class RationalFn {
 public:
  RationalFn() : num_(), den_(Poly::one()) {}
  RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw error(errc::bad_input, "RationalFn: zero denominator");
    normalize();
  }
  static RationalFn zero() { return RationalFn(); }
  static RationalFn constant(cplx a) { return RationalFn(Poly::constant(a), Poly::one()); }
  static RationalFn identity() { return RationalFn(Poly::identity(), Poly::one()); }
  /** c / (z - z0)^k */
  static RationalFn pole_term(cplx c, cplx z0, int k = 1) {
    Poly d = Poly::one();
    Poly lin({-z0, cplx(1.0)});
    for (int i = 0; i < k; ++i) d = d * lin;
    return RationalFn(Poly::constant(c), d);
  }
  static RationalFn from_poly(Poly p) { return RationalFn(std::move(p), Poly::one()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  /** Evaluate; throws pole_proximity within eps_pole of a pole. */
  cplx eval(const cplx& w) const {
    cplx dv = den_.eval(w);
    double a = std::abs(dv);
    if (a < 1e-6 * den_scale_) {
      double g = 1.0, onew = 1.0 + std::abs(w);
      for (int d = den_.degree(); d > 0; --d) g *= onew;
      if (a < 1e-6 * den_scale_ * g) {
        for (const cplx& p : poles())
          if (std::abs(w - p) < eps_pole(w))
            throw error(errc::pole_proximity, "rat_eval: evaluation point near a pole");
      }
    }
    return num_.eval(w) / dv;
  }

  /** Limit value at infinity (0 if deg num < deg den, etc.). */
  cplx eval_at_infinity() const {
    int dn = num_.degree(), dd = den_.degree();
    if (dn < dd) return cplx(0.0);
    if (dn == dd) return num_.leading() / den_.leading();
    throw error(errc::bad_input, "eval_at_infinity: function has a pole at infinity");
  }

  RationalFn derivative() const {
    Poly n = num_.derivative() * den_ - num_ * den_.derivative();
    Poly d = den_ * den_;
    return RationalFn(std::move(n), std::move(d));
  }

  /** f#(z) = conj(f(1/conj z)); exact coefficient operation. */
  RationalFn reflect() const {
    int m = std::max(num_.degree(), den_.degree());
    if (m < 0) return RationalFn::zero();
    std::vector<cplx> n(m + 1, cplx(0.0)), d(m + 1, cplx(0.0));
    for (int k = 0; k <= num_.degree(); ++k) n[m - k] = std::conj(num_.coeff(k));
    for (int k = 0; k <= den_.degree(); ++k) d[m - k] = std::conj(den_.coeff(k));
    return RationalFn(Poly(std::move(n)), Poly(std::move(d)));
  }

  /** Coefficient conjugation: z -> conj(f(conj z)). */
  RationalFn conj_coeffs() const {
    return RationalFn(num_.conj_coeffs(), den_.conj_coeffs());
  }

  /** f((a z + b)/(c z + d)), exact on coefficients. */
  RationalFn compose_mobius(cplx a, cplx b, cplx c, cplx d) const {
    if (std::abs(a * d - b * c) < 1e-300)
      throw error(errc::bad_input, "compose_mobius: singular coefficient matrix");
    int m = std::max(num_.degree(), den_.degree());
    if (m < 0) return RationalFn::zero();
    Poly up({b, a});    // a z + b
    Poly down({d, c});  // c z + d
    // powers up^k * down^(m-k)
    std::vector<Poly> pu(m + 1), pd(m + 1);
    pu[0] = Poly::one();
    pd[0] = Poly::one();
    for (int k = 1; k <= m; ++k) {
      pu[k] = pu[k - 1] * up;
      pd[k] = pd[k - 1] * down;
    }
    Poly n, dn;
    for (int k = 0; k <= m; ++k) {
      cplx cn = num_.coeff(k), cd = den_.coeff(k);
      if (cn != cplx(0.0)) n = n + cn * (pu[k] * pd[m - k]);
      if (cd != cplx(0.0)) dn = dn + cd * (pu[k] * pd[m - k]);
    }
    return RationalFn(std::move(n), std::move(dn));
  }

  /** f(s z) for scalar s. */
  RationalFn compose_scale(cplx s) const { return compose_mobius(s, 0.0, 0.0, 1.0); }
  /** f(z^k), exact. */
  RationalFn compose_power(int k) const {
    auto lift = [k](const Poly& p) {
      std::vector<cplx> r(size_t(p.degree() * k + 1), cplx(0.0));
      for (int j = 0; j <= p.degree(); ++j) r[size_t(j * k)] = p.coeff(j);
      return Poly(std::move(r));
    };
    if (num_.is_zero()) return RationalFn::zero();
    return RationalFn(lift(num_), lift(den_));
  }

  friend RationalFn operator+(const RationalFn& f, const RationalFn& g) {
    return RationalFn(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
  }
  friend RationalFn operator-(const RationalFn& f, const RationalFn& g) {
    return RationalFn(f.num_ * g.den_ - g.num_ * f.den_, f.den_ * g.den_);
  }
  friend RationalFn operator*(const RationalFn& f, const RationalFn& g) {
    return RationalFn(f.num_ * g.num_, f.den_ * g.den_);
  }
  friend RationalFn operator*(const RationalFn& f, cplx s) {
    return RationalFn(f.num_ * s, f.den_);
  }
  friend RationalFn operator*(cplx s, const RationalFn& f) { return f * s; }
  friend RationalFn operator/(const RationalFn& f, const RationalFn& g) {
    if (g.is_zero()) throw error(errc::bad_input, "rational division by zero");
    return RationalFn(f.num_ * g.den_, f.den_ * g.num_);
  }

  /** Distinct pole locations (after reduction), cached. */
  const std::vector<cplx>& poles() const {
    ensure_poles();
    return poles_;
  }

  bool has_pole_at_infinity() const { return num_.degree() > den_.degree(); }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly::one();
      den_scale_ = 1.0;
      poles_.clear();
      poles_valid_ = true;
      return;
    }
    reduce_common_roots();
    // scale so den has unit leading coefficient
    cplx lead = den_.leading();
    std::vector<cplx> n = num_.coeffs(), d = den_.coeffs();
    for (cplx& x : n) x /= lead;
    for (cplx& x : d) x /= lead;
    num_ = Poly(std::move(n));
    den_ = Poly(std::move(d));
    den_scale_ = den_.scale();
    poles_valid_ = false;
  }

  // Common factors arise exactly (pole terms summed over a shared pole),
  // so Euclid with a relative cutoff recovers them at machine precision.
  // Anything that does not divide out cleanly is left alone.
  void reduce_common_roots() {
    if (den_.degree() < 1 || num_.degree() < 1) return;
    auto monic = [](Poly p) {
      if (p.is_zero()) return p;
      std::vector<cplx> c = p.coeffs();
      cplx l = p.leading();
      for (cplx& x : c) x /= l;
      return Poly(std::move(c));
    };
    Poly x = monic(num_), y = monic(den_);
    if (x.degree() < y.degree()) std::swap(x, y);
    Poly g;
    for (int guard = 0; guard < 64 && y.degree() >= 1; ++guard) {
      Poly r = x.divmod(y).second;
      if (r.scale() < 1e-11 * std::max(1.0, x.scale())) {
        g = y;
        break;
      }
      x = y;
      y = monic(r);
    }
    if (g.degree() < 1) return;
    auto [qn, rn] = num_.divmod(g);
    auto [qd, rd] = den_.divmod(g);
    if (rn.scale() > 1e-9 * std::max(1.0, num_.scale())) return;
    if (rd.scale() > 1e-9 * std::max(1.0, den_.scale())) return;
    num_ = qn;
    den_ = qd;
    reduce_common_roots();
  }

  void ensure_poles() const {
    if (poles_valid_) return;
    poles_.clear();
    if (den_.degree() >= 1) {
      for (const auto& [loc, cnt] : detail::cluster_points(poly_roots(den_)))
        poles_.push_back(loc);
    }
    poles_valid_ = true;
  }

  Poly num_, den_;
  double den_scale_ = 1.0;
  mutable std::vector<cplx> poles_;
  mutable bool poles_valid_ = false;
};

inline cplx rat_eval(const RationalFn& f, const cplx& w) { return f.eval(w); }
inline RationalFn rat_derivative(const RationalFn& f) { return f.derivative(); }
inline RationalFn rat_reflect(const RationalFn& f) { return f.reflect(); }

namespace detail {

/** Trapezoid contour integral of fn over |z-center|=radius (2-pi-i normalized). */
template <typename F>
cplx circle_integral(F&& fn, cplx center, double radius, int n = 128) {
  cplx acc(0.0);
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * M_PI * k / n;
    cplx e(std::cos(t), std::sin(t));
    cplx z = center + radius * e;
    acc += fn(z) * (radius * e);  // f(z) * dz/dt / i, with i folded below
  }
  return acc / double(n);
}
}  // namespace detail

/**
 * Principal part decomposition f = poly_part + sum of pole parts.
 * res_inf = -(coefficient of 1/z in the expansion at infinity).
 * Pole coefficients are extracted by small-circle contour integrals, so
 * the decomposition is exact up to trapezoid error (spectral here).
 */
inline PrincipalParts rat_principal_parts(const RationalFn& f) {
  PrincipalParts out;
  if (f.is_zero()) return out;

  auto [q, rem] = f.num().divmod(f.den());
  out.poly_part = q;

  if (f.den().degree() >= 1) {
    std::vector<cplx> roots = poly_roots(f.den());
    std::vector<std::pair<cplx, int>> clusters = detail::cluster_points(roots);
    // modified Newton (step scaled by multiplicity) sharpens the centroids
    Poly dden = f.den().derivative();
    for (auto& [loc, m] : clusters) {
      for (int it = 0; it < 8; ++it) {
        cplx pv = f.den().eval(loc), dv = dden.eval(loc);
        if (std::abs(dv) < 1e-300) break;
        cplx step = double(m) * pv / dv;
        loc -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(loc))) break;
      }
    }
    // Coefficient roots of a multiple cluster carry an O(sqrt(eps)) split
    // whose mean can still be biased. Contour moments of f'/f around the
    // cluster recover the mean of the actual pole group from function
    // values, which is what the extraction below pairs with.
    {
      Poly dnum = f.num().derivative();
      auto logd = [&](cplx z) {
        return (dnum.eval(z) * f.den().eval(z) - f.num().eval(z) * dden.eval(z)) /
               (f.num().eval(z) * f.den().eval(z));
      };
      std::vector<cplx> num_zeros;
      if (f.num().degree() >= 1) num_zeros = poly_roots(f.num());
      for (size_t i = 0; i < clusters.size(); ++i) {
        auto& [loc, m] = clusters[i];
        // keep every other singularity of f'/f clear of the contour
        double dist = 1e30;
        for (size_t j = 0; j < clusters.size(); ++j)
          if (j != i) dist = std::min(dist, std::abs(loc - clusters[j].first));
        for (const cplx& z : num_zeros) {
          double d = std::abs(loc - z);
          if (d > 1e-4 * (1.0 + std::abs(loc))) dist = std::min(dist, d);
        }
        double delta = std::min(0.5 * dist, 0.1 * (1.0 + std::abs(loc)));
        int nodes = 128;
        double ratio = dist / delta;  // >= 2 by construction
        while (nodes < 4096 && std::pow(1.0 / ratio, nodes) > 1e-15) nodes *= 2;
        cplx N0 = detail::circle_integral(logd, loc, delta, nodes);
        if (std::abs(N0 + cplx(double(m))) > 0.1) continue;  // zeros of f inside
        cplx N1 =
            detail::circle_integral([&](cplx z) { return z * logd(z); }, loc, delta, nodes);
        loc = N1 / N0;
      }
    }
    // ambiguous separations: distinct clusters closer than kEpsCluster
    for (size_t i = 0; i < clusters.size(); ++i)
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        double sep = std::abs(clusters[i].first - clusters[j].first);
        if (sep < kEpsCluster * (1.0 + std::abs(clusters[i].first)))
          throw error(errc::clustered_poles,
                      "rat_principal_parts: poles separated by " + std::to_string(sep));
      }

    for (size_t i = 0; i < clusters.size(); ++i) {
      auto [loc, m] = clusters[i];
      double dist = 1e30;
      for (size_t j = 0; j < clusters.size(); ++j)
        if (j != i) dist = std::min(dist, std::abs(loc - clusters[j].first));
      double delta = std::min(0.5 * dist, 0.1 * (1.0 + std::abs(loc)));
      auto extract = [&](cplx center, int order) {
        std::vector<cplx> cs(order);
        for (int k = 1; k <= order; ++k) {
          auto g = [&](cplx z) {
            return f.num().eval(z) / f.den().eval(z) * std::pow(z - center, double(k - 1));
          };
          cs[k - 1] = detail::circle_integral(g, center, delta, 256);
        }
        return cs;
      };
      PolePart pp;
      pp.location = loc;
      pp.order = m;
      pp.coeffs = extract(loc, m);
      // A stray near-coincident factor inflates the order: the top
      // coefficient then equals (m-1) c_{m-1} (shift of the true center),
      // so it is tiny relative to c_{m-1} on the cluster scale. Fold the
      // shift into the location and drop the order.
      while (pp.order >= 2) {
        cplx cm = pp.coeffs[pp.order - 1], cm1 = pp.coeffs[pp.order - 2];
        double rel = 5e-4 * (pp.order - 1) * std::abs(cm1) * (1.0 + std::abs(pp.location));
        if (std::abs(cm) >= std::max(rel, 1e-300)) break;
        if (std::abs(cm1) > 1e-300)
          pp.location += cm / (double(pp.order - 1) * cm1);
        pp.order -= 1;
        pp.coeffs = extract(pp.location, pp.order);
      }
      out.parts.push_back(std::move(pp));
    }
  }

  // prune decomposition dust: orders inflated by a stray near-coincident
  // factor carry negligible top coefficients
  {
    double scale = out.poly_part.scale();
    for (const PolePart& p : out.parts)
      for (const cplx& c : p.coeffs) scale = std::max(scale, std::abs(c));
    std::vector<PolePart> kept;
    for (PolePart& p : out.parts) {
      while (!p.coeffs.empty() && std::abs(p.coeffs.back()) < 1e-9 * scale) {
        p.coeffs.pop_back();
        --p.order;
      }
      if (!p.coeffs.empty()) kept.push_back(std::move(p));
    }
    out.parts = std::move(kept);
  }

  cplx c1(0.0);
  for (const PolePart& p : out.parts) c1 += p.residue();
  out.res_inf = -c1;
  return out;
}

/** Sum of residues at all finite poles (= lim w*f(w) when f vanishes at inf). */
inline cplx rat_res_inf(const RationalFn& f) { return rat_principal_parts(f).res_inf; }

/** Rebuild a rational function from a principal part decomposition. */
inline RationalFn rat_from_parts(const PrincipalParts& pp) {
  RationalFn f = RationalFn::from_poly(pp.poly_part);
  for (const PolePart& p : pp.parts) {
    if (p.at_infinity) continue;
    for (int k = 1; k <= p.order; ++k)
      f = f + RationalFn::pole_term(p.coeffs[k - 1], p.location, k);
  }
  return f;
}

/** Pointwise comparison on a deterministic probe set (relative). */
inline bool rat_close(const RationalFn& f, const RationalFn& g, double tol = 1e-8) {
  std::mt19937 rng(0xabcdef01u);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 24; ++trial) {
    cplx w(unif(rng), unif(rng));
    bool bad = false;
    for (const cplx& p : f.poles())
      if (std::abs(w - p) < 0.05) bad = true;
    for (const cplx& p : g.poles())
      if (std::abs(w - p) < 0.05) bad = true;
    if (bad) continue;
    cplx a = f.eval(w), b = g.eval(w);
    if (std::abs(a - b) > tol * (1.0 + std::max(std::abs(a), std::abs(b)))) return false;
    ++checked;
  }
  return checked > 0;
}

}  // namespace lqd

#endif  // LQD_COMPLEX_POLY_HPP
