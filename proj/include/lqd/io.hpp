#ifndef LQD_IO_HPP
#define LQD_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "lqd/families.hpp"
#include "lqd/verify.hpp"

namespace lqd {

using json = nlohmann::json;

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

inline json to_json(const Poly& p) {
  json arr = json::array();
  for (const cplx& c : p.coeffs()) arr.push_back(to_json(c));
  return arr;
}

inline Poly poly_from_json(const json& j) {
  std::vector<cplx> c;
  for (const auto& e : j) c.push_back(cplx_from_json(e));
  return Poly(std::move(c));
}

inline json to_json(const RationalFn& f) {
  return json{{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

inline RationalFn rational_from_json(const json& j) {
  return RationalFn(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

inline std::string kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::null_disk: return "null_disk";
    case FamilyKind::exp_image: return "exp_image";
    case FamilyKind::onept_bounded_nonsingular: return "onept_bounded_nonsingular";
    case FamilyKind::onept_unbounded_nonsingular: return "onept_unbounded_nonsingular";
    case FamilyKind::onept_bounded_singular: return "onept_bounded_singular";
    case FamilyKind::onept_unbounded_singular: return "onept_unbounded_singular";
    case FamilyKind::constant: return "constant";
    case FamilyKind::monomial_nonsingular: return "monomial_nonsingular";
    case FamilyKind::monomial_singular_k2: return "monomial_singular_k2";
    case FamilyKind::twopoint_symmetric: return "twopoint_symmetric";
  }
  return "unknown";
}

inline FamilyKind kind_from_name(const std::string& s) {
  if (s == "null_disk") return FamilyKind::null_disk;
  if (s == "exp_image") return FamilyKind::exp_image;
  if (s == "onept_bounded_nonsingular") return FamilyKind::onept_bounded_nonsingular;
  if (s == "onept_unbounded_nonsingular") return FamilyKind::onept_unbounded_nonsingular;
  if (s == "onept_bounded_singular") return FamilyKind::onept_bounded_singular;
  if (s == "onept_unbounded_singular") return FamilyKind::onept_unbounded_singular;
  if (s == "constant") return FamilyKind::constant;
  if (s == "monomial_nonsingular") return FamilyKind::monomial_nonsingular;
  if (s == "monomial_singular_k2") return FamilyKind::monomial_singular_k2;
  if (s == "twopoint_symmetric") return FamilyKind::twopoint_symmetric;
  throw error(errc::bad_input, "unknown family kind: " + s);
}

inline json to_json(const FamilySpec& s) {
  json j;
  j["kind"] = kind_name(s.kind);
  j["alpha"] = to_json(s.alpha);
  j["w0"] = to_json(s.w0);
  j["c"] = s.c;
  if (s.has_q) j["q"] = to_json(s.q);
  j["k"] = s.k;
  j["r"] = s.r;
  if (s.kind == FamilyKind::exp_image) j["center"] = to_json(s.center);
  if (s.kind == FamilyKind::null_disk) j["exterior"] = s.exterior;
  if (s.z0_given) j["z0"] = to_json(*s.z0_given);
  if (s.z1_given) j["z1"] = to_json(*s.z1_given);
  return j;
}

inline FamilySpec spec_from_json(const json& j) {
  FamilySpec s;
  s.kind = kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("alpha")) s.alpha = cplx_from_json(j["alpha"]);
  if (j.contains("w0")) s.w0 = cplx_from_json(j["w0"]);
  if (j.contains("c")) s.c = j["c"].get<double>();
  if (j.contains("q")) {
    s.q = cplx_from_json(j["q"]);
    s.has_q = true;
  }
  if (j.contains("k")) s.k = j["k"].get<int>();
  if (j.contains("r")) s.r = j["r"].get<double>();
  if (j.contains("center")) s.center = cplx_from_json(j["center"]);
  if (j.contains("exterior")) s.exterior = j["exterior"].get<bool>();
  if (j.contains("z0")) s.z0_given = cplx_from_json(j["z0"]);
  if (j.contains("z1")) s.z1_given = cplx_from_json(j["z1"]);
  return s;
}

inline std::string inner_name(InnerKind k) {
  switch (k) {
    case InnerKind::one: return "one";
    case InnerKind::zfact: return "z";
    case InnerKind::blaschke: return "blaschke";
    case InnerKind::z_blaschke: return "z_blaschke";
  }
  return "unknown";
}

inline InnerKind inner_from_name(const std::string& s) {
  if (s == "one") return InnerKind::one;
  if (s == "z") return InnerKind::zfact;
  if (s == "blaschke") return InnerKind::blaschke;
  if (s == "z_blaschke") return InnerKind::z_blaschke;
  throw error(errc::bad_input, "unknown inner factor: " + s);
}

inline json to_json(const RiemannMap& m) {
  json j;
  j["side"] = m.unbounded() ? "unbounded" : "bounded";
  j["inner"] = inner_name(m.inner_kind());
  j["prefactor"] = to_json(m.prefactor());
  j["z0"] = to_json(m.inner_zero());
  j["r"] = to_json(m.exponent());
  return j;
}

inline RiemannMap map_from_json(const json& j) {
  Side side = j.at("side").get<std::string>() == "unbounded" ? Side::unbounded
                                                             : Side::bounded;
  return RiemannMap::make(side, inner_from_name(j.at("inner").get<std::string>()),
                          cplx_from_json(j.at("prefactor")), cplx_from_json(j.at("z0")),
                          rational_from_json(j.at("r")));
}

inline json to_json(const LQDInstance& inst) {
  json j;
  j["spec"] = to_json(inst.spec);
  j["map"] = to_json(inst.domain.map);
  j["h"] = to_json(inst.quad.h);
  j["q"] = to_json(inst.quad.q);
  json nodes = json::array();
  for (const PolePart& p : inst.quad.nodes) {
    json n;
    n["location"] = p.at_infinity ? json("infinity") : to_json(p.location);
    n["order"] = p.order;
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  json solved;
  if (inst.solved.z0) solved["z0"] = to_json(*inst.solved.z0);
  if (inst.solved.z1) solved["z1"] = to_json(*inst.solved.z1);
  if (inst.solved.lambda) solved["lambda"] = to_json(*inst.solved.lambda);
  if (inst.solved.beta) solved["beta"] = to_json(*inst.solved.beta);
  if (inst.solved.zplus) solved["zplus"] = to_json(*inst.solved.zplus);
  solved["univalent_roots"] = inst.solved.univalent_roots;
  j["solved"] = solved;
  return j;
}

inline LQDInstance instance_from_json(const json& j, int n = 1024) {
  LQDInstance inst;
  inst.spec = spec_from_json(j.at("spec"));
  RiemannMap map = map_from_json(j.at("map"));
  inst.domain = DomainSpec::from_map(map, n);
  inst.quad.h = rational_from_json(j.at("h"));
  inst.quad.q = cplx_from_json(j.at("q"));
  inst.quad.nodes = quadrature_nodes(inst.quad.h, inst.domain.unbounded);
  if (j.contains("solved")) {
    const json& s = j["solved"];
    if (s.contains("z0")) inst.solved.z0 = cplx_from_json(s["z0"]);
    if (s.contains("z1")) inst.solved.z1 = cplx_from_json(s["z1"]);
    if (s.contains("lambda")) inst.solved.lambda = cplx_from_json(s["lambda"]);
    if (s.contains("beta")) inst.solved.beta = cplx_from_json(s["beta"]);
    if (s.contains("zplus")) inst.solved.zplus = cplx_from_json(s["zplus"]);
    if (s.contains("univalent_roots"))
      inst.solved.univalent_roots = s["univalent_roots"].get<int>();
  }
  return inst;
}

inline json to_json(const VerificationReport& r) {
  return json{{"check", r.check}, {"residual", r.residual}, {"tol", r.tol},
              {"pass", r.pass},   {"ms", r.ms}};
}

// ---------------------------------------------------------------------------
// flat-file outputs
// ---------------------------------------------------------------------------

/** Atomic write: stage to a temp file, then rename into place. */
inline void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw error(errc::bad_input, "cannot write " + tmp.string());
    out << data;
  }
  std::filesystem::rename(tmp, path);
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/** Boundary CSV: header t,re,im; the final row repeats the first (closure). */
inline std::string boundary_csv(const BoundaryCurve& c) {
  std::string out = "t,re,im\n";
  for (int k = 0; k < c.size(); ++k) {
    out += format_double(c.t[k]) + "," + format_double(c.w[k].real()) + "," +
           format_double(c.w[k].imag()) + "\n";
  }
  out += format_double(2.0 * M_PI) + "," + format_double(c.w[0].real()) + "," +
         format_double(c.w[0].imag()) + "\n";
  return out;
}

/** Field grid CSV: re,im,dre,dim,abs_diff. */
inline std::string field_csv(const std::vector<FieldSample>& samples) {
  std::string out = "re,im,dre,dim,abs_diff\n";
  for (const FieldSample& s : samples) {
    out += format_double(s.w.real()) + "," + format_double(s.w.imag()) + "," +
           format_double(s.diff.real()) + "," + format_double(s.diff.imag()) + "," +
           format_double(s.abs_diff) + "\n";
  }
  return out;
}

/** Closed-path SVG for a set of curves, viewBox = union bbox padded 5%. */
inline std::string curves_svg(const std::vector<BoundaryCurve>& curves,
                              double unit_scale = 100.0) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const BoundaryCurve& c : curves)
    for (const cplx& w : c.w) {
      x0 = std::min(x0, w.real());
      x1 = std::max(x1, w.real());
      y0 = std::min(y0, w.imag());
      y1 = std::max(y1, w.imag());
    }
  double pad = 0.05 * std::max(x1 - x0, y1 - y0);
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  auto sx = [&](double x) { return (x - x0) * unit_scale; };
  auto sy = [&](double y) { return (y1 - y) * unit_scale; };  // flip to screen axes
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    format_double(sx(x1)) + " " + format_double(sy(y0)) + "\">\n";
  for (const BoundaryCurve& c : curves) {
    svg += "<path fill=\"none\" stroke=\"black\" stroke-width=\"1\" d=\"M ";
    for (int k = 0; k < c.size(); ++k) {
      if (k) svg += " L ";
      svg += format_double(sx(c.w[k].real())) + " " + format_double(sy(c.w[k].imag()));
    }
    svg += " Z\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace lqd

#endif  // LQD_IO_HPP
