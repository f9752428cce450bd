// lqdlab: build log-weighted quadrature domains, verify their identities,
// and emit boundary curves, field grids and figure sweeps.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lqd/figures.hpp"
#include "lqd/io.hpp"
#include "lqd/univalence.hpp"

namespace fs = std::filesystem;
using namespace lqd;

namespace {

int default_samples() {
  if (const char* env = std::getenv("LQDLAB_N")) {
    int n = std::atoi(env);
    if (n >= 256 && (n & (n - 1)) == 0) return n;
    std::cerr << "LQDLAB_N must be a power of two >= 256; ignoring\n";
  }
  return 1024;
}

cplx parse_cplx(const std::string& s) {
  double re = 0.0, im = 0.0;
  if (std::sscanf(s.c_str(), "%lf,%lf", &re, &im) < 1)
    throw error(errc::bad_input, "cannot parse complex number: " + s);
  return {re, im};
}

int cmd_build(const std::string& spec_path, const std::string& out_dir, int n,
              double tol) {
  fs::path out(out_dir);
  fs::create_directories(out);
  json j;
  {
    std::ifstream in(spec_path);
    if (!in) {
      std::cerr << "cannot open spec file " << spec_path << "\n";
      return 2;
    }
    in >> j;
  }
  FamilySpec spec;
  LQDInstance inst;
  try {
    spec = spec_from_json(j);
    inst = build_family(spec, n);
  } catch (const error& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return 2;
  }
  VerificationReport quad = verify_quadrature(inst, default_battery(inst.domain), n, tol);
  VerificationReport coin = verify_coincidence(inst, n, tol);
  write_file_atomic(out / "instance.json", to_json(inst).dump(2) + "\n");
  write_file_atomic(out / "boundary.csv", boundary_csv(inst.domain.curve));
  json rep = json::array({to_json(quad), to_json(coin)});
  write_file_atomic(out / "report.json", rep.dump(2) + "\n");
  for (const VerificationReport& r : {quad, coin})
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check
              << " residual=" << format_double(r.residual) << " tol=" << r.tol << "\n";
  if (inst.solved.zplus)
    std::cout << "solved z+ = " << format_double(inst.solved.zplus->real()) << "\n";
  if (inst.solved.z0)
    std::cout << "solved z0 = (" << format_double(inst.solved.z0->real()) << ","
              << format_double(inst.solved.z0->imag()) << ")\n";
  return (quad.pass && coin.pass) ? 0 : 1;
}

int cmd_verify(const std::string& inst_path, const std::string& out_dir, int n,
               double tol) {
  json j;
  {
    std::ifstream in(inst_path);
    if (!in) {
      std::cerr << "cannot open instance file " << inst_path << "\n";
      return 2;
    }
    in >> j;
  }
  LQDInstance inst;
  try {
    inst = instance_from_json(j, n);
  } catch (const error& e) {
    std::cerr << "cannot reconstruct instance: " << e.what() << "\n";
    return 2;
  }
  VerificationReport quad = verify_quadrature(inst, default_battery(inst.domain), n, tol);
  VerificationReport coin = verify_coincidence(inst, n, tol);
  json rep = json::array({to_json(quad), to_json(coin)});
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "report.json", rep.dump(2) + "\n");
  }
  for (const VerificationReport& r : {quad, coin})
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check
              << " residual=" << format_double(r.residual) << " tol=" << r.tol << "\n";
  return (quad.pass && coin.pass) ? 0 : 1;
}

int cmd_figure(const std::string& id, const std::string& out_dir, int n, double tol,
               double svg_scale) {
  SweepResult result;
  try {
    result = run_figure(id, out_dir, n, tol, svg_scale);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const SweepStep& s : result.steps) {
    if (s.built)
      std::cout << (s.pass ? "[PASS] " : "[FAIL] ") << s.label
                << " residual=" << format_double(s.residual) << "\n";
    else
      std::cout << "[SKIP] " << s.label << " (" << s.note << ")\n";
  }
  if (!result.any_built) return 2;
  return result.any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"log-weighted quadrature domain laboratory"};
  app.require_subcommand(1);
  int n = default_samples();
  double tol = 1e-6;

  auto* build = app.add_subcommand("build", "build a family instance and verify it");
  std::string spec_path, out_dir = "out";
  build->add_option("--spec", spec_path, "family spec JSON")->required();
  build->add_option("--out", out_dir, "output directory");
  build->add_option("--n", n, "boundary samples (power of two >= 256)");
  build->add_option("--tol", tol, "verification tolerance");

  auto* figure = app.add_subcommand("figure", "reproduce a figure sweep");
  std::string fig_id, fig_out = "out";
  double svg_scale = 100.0;
  figure->add_option("--id", fig_id, "figure id (fig1..fig5)")->required();
  figure->add_option("--out", fig_out, "output directory");
  figure->add_option("--n", n, "boundary samples");
  figure->add_option("--tol", tol, "verification tolerance");
  figure->add_option("--svg-scale", svg_scale, "SVG units per plane unit");

  auto* lmax = app.add_subcommand("lambda-max", "injectivity threshold of the one-point family");
  std::string z0_str = "0,0";
  double arg_lambda = 0.0;
  lmax->add_option("--z0", z0_str, "inner zero, as re,im")->required();
  lmax->add_option("--arg", arg_lambda, "argument of lambda")->required();

  auto* verify = app.add_subcommand("verify", "re-verify a stored instance");
  std::string inst_path, verify_out;
  verify->add_option("--instance", inst_path, "instance JSON")->required();
  verify->add_option("--out", verify_out, "output directory for the report");
  verify->add_option("--n", n, "boundary samples");
  verify->add_option("--tol", tol, "verification tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(spec_path, out_dir, n, tol);
    if (figure->parsed()) return cmd_figure(fig_id, fig_out, n, tol, svg_scale);
    if (verify->parsed()) return cmd_verify(inst_path, verify_out, n, tol);
    if (lmax->parsed()) {
      LambdaMaxResult r = lambda_max(parse_cplx(z0_str), arg_lambda);
      std::cout << "lambda_max = " << format_double(r.value)
                << "\ntheta_star = " << format_double(r.theta_star) << "\n";
      return 0;
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
