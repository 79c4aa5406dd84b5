// isogeny2 run: compute an explicit isogeny and print it as JSON.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "isogeny2/pipeline.hpp"

using namespace isogeny2;

namespace {

std::vector<int64_t> ints(const std::string& s) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit isogenies between Jacobians of genus 2 curves"};
  app.require_subcommand(1);
  auto* run_cmd = app.add_subcommand("run", "Run the pipeline");

  std::string config, out, path = "siegel", j, jp, g, gp, C, Cp, modeq, tangent, tfield;
  uint64_t p = 0, seed = 1;
  int ell = 0, m = 0;
  int64_t bn = 0, bt = 0, s5 = 0, base_u = 0;
  size_t precision = 0;
  bool no_timings = false, serial = false, compact = false;

  run_cmd->add_option("--config", config, "JSON config file");
  run_cmd->add_option("--p", p, "prime");
  run_cmd->add_option("--path", path, "siegel | hilbert-q5 | endo")
      ->check(CLI::IsMember({"siegel", "hilbert-q5", "hilbert_q5", "endo", "endomorphism"}));
  run_cmd->add_option("--j", j, "Igusa invariants of C, \"a,b,c\"");
  run_cmd->add_option("--jp", jp, "Igusa invariants of C'");
  run_cmd->add_option("--g", g, "Gundlach invariants of C, \"a,b\"");
  run_cmd->add_option("--gp", gp, "Gundlach invariants of C'");
  run_cmd->add_option("--C", C, "coefficients a0..a6 of C");
  run_cmd->add_option("--Cp", Cp, "coefficients a0..a6 of C'");
  run_cmd->add_option("--ell", ell, "level of a Siegel isogeny");
  run_cmd->add_option("--beta-norm", bn, "norm of beta");
  run_cmd->add_option("--beta-trace", bt, "trace of beta");
  run_cmd->add_option("--m", m, "multiplier for the endomorphism path");
  run_cmd->add_option("--modeq", modeq, "modular equation file");
  run_cmd->add_option("--tangent", tangent, "tangent matrix, e.g. \"1+2a, 0; 0, 3a\"");
  run_cmd->add_option("--tangent-field", tfield, "a^2 + b a + c = 0 given as \"b,c\"");
  run_cmd->add_option("--sqrt5", s5, "square root of 5 to use");
  run_cmd->add_option("--precision", precision, "precision override (upward only)");
  run_cmd->add_option("--base-u", base_u, "Weierstrass base point abscissa");
  run_cmd->add_option("--seed", seed, "RNG seed");
  run_cmd->add_option("--out", out, "output file (default stdout)");
  run_cmd->add_flag("--no-timings", no_timings, "omit timings for reproducible output");
  run_cmd->add_flag("--serial", serial, "process candidates one at a time");
  run_cmd->add_flag("--compact", compact, "single-line JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw Error(Errc::InvalidArgument, "cannot open " + config);
      cfg = config_from_json(nlohmann::json::parse(in));
    }
    auto given = [&](const char* name) { return run_cmd->count(name) > 0; };
    if (given("--p")) cfg.p = p;
    if (given("--path")) cfg.path = parse_path(path);
    if (given("--j")) cfg.j = ints(j);
    if (given("--jp")) cfg.jp = ints(jp);
    if (given("--g")) cfg.g = ints(g);
    if (given("--gp")) cfg.gp = ints(gp);
    if (given("--C")) cfg.C = ints(C);
    if (given("--Cp")) cfg.Cp = ints(Cp);
    if (given("--ell")) cfg.ell = ell;
    if (given("--beta-norm")) cfg.beta_norm = bn;
    if (given("--beta-trace")) cfg.beta_trace = bt;
    if (given("--m")) cfg.m = m;
    if (given("--modeq")) cfg.modeq_path = modeq;
    if (given("--tangent")) cfg.tangent = parse_tangent_spec(tangent);
    if (given("--tangent-field")) {
      if (!cfg.tangent) throw Error(Errc::InvalidArgument, "--tangent-field needs --tangent");
      cfg.tangent->minpoly = parse_minpoly(tfield);
    }
    if (given("--sqrt5")) cfg.sqrt5 = s5;
    if (given("--precision")) cfg.precision = precision;
    if (given("--base-u")) cfg.base_u = base_u;
    if (given("--seed")) cfg.seed = seed;
    if (no_timings) cfg.timings = false;
    if (serial) cfg.parallel = false;
    if (cfg.p == 0) throw Error(Errc::InvalidArgument, "no prime given");

    nlohmann::json res = run(cfg);
    std::string text = res.dump(compact ? -1 : 2) + "\n";
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      f << text;
    }
    return res["accepted"].get<int>() > 0 ? 0 : 2;
  } catch (const Error& e) {
    nlohmann::json err = {{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    if (*genericity_hint(e.code())) err["error"]["condition"] = genericity_hint(e.code());
    std::cerr << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
