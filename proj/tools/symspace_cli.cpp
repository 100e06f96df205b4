#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "symspace/cex.hpp"
#include "symspace/conditions.hpp"
#include "symspace/dilation.hpp"
#include "symspace/embed.hpp"
#include "symspace/io.hpp"
#include "symspace/norms.hpp"
#include "symspace/orlicz.hpp"
#include "symspace/report.hpp"

namespace {

using namespace symspace;
using report::json;

enum Exit : int {
  kPass = 0,
  kNegative = 1,
  kInconclusive = 2,
  kUsage = 64,
  kPrecondition = 65,
  kDepth = 66,
};

struct Output {
  report::Format format = report::Format::json;
  std::string path;

  void emit(const json& j) const {
    const std::string text = report::render(j, format);
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
  }
};

int exit_for(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::converges: return kPass;
    case SeriesVerdict::diverges: return kNegative;
    case SeriesVerdict::inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

struct IndicesArgs {
  std::string spec;
  int J = 64;
  int K = 1024;
};

int run_indices(const IndicesArgs& a, const Output& out) {
  const GFun f = parse_gfun(a.spec);
  DilationOptions opt;
  opt.J = a.J;
  opt.K = a.K;
  try {
    json j = report::to_json(dilation_profile(f, opt));
    j["function"] = f.spec();
    out.emit(j);
    return kPass;
  } catch (const FitUnstable& e) {
    json j = report::to_json(e.profile());
    j["function"] = f.spec();
    j["error"] = e.what();
    out.emit(j);
    return kInconclusive;
  }
}

struct EmbedArgs {
  std::string phi, psi;
  int depth = 256;
  bool theorem5 = false;
  std::optional<int> witness;
};

int run_embed(const EmbedArgs& a, const Output& out) {
  const GFun phi = parse_gfun(a.phi), psi = parse_gfun(a.psi);
  EmbedReport r = series_test(phi, psi, a.depth);
  const ConditionAResult ca = condition_a(phi, psi);
  const ConditionBResult cb = condition_b(phi, psi);
  std::optional<Theorem5Report> t5;
  if (a.theorem5) {
    t5 = theorem5_chain(phi, psi);
    r.constants.u = t5->u;
    r.constants.C = t5->C;
    r.constants.C1 = t5->C1;
  }
  std::optional<WitnessResult> w;
  if (a.witness) {
    w = witness_search(phi, psi, *a.witness);
    if (w->witness) r.constants.C2 = w->witness->C2;
  }
  json j = report::to_json(r);
  j["phi"] = phi.spec();
  j["psi"] = psi.spec();
  j["condition_a"] = report::to_json(ca);
  j["condition_b"] = report::to_json(cb);
  if (t5) j["theorem5"] = report::to_json(*t5);
  if (w) j["witness"] = report::to_json(*w);
  out.emit(j);
  return exit_for(r.verdict);
}

struct RhoArgs {
  std::string phi, psi;
  std::optional<double> u;
  int K = 64;
};

int run_rho(const RhoArgs& a, const Output& out) {
  const GFun phi = parse_gfun(a.phi), psi = parse_gfun(a.psi);
  const RhoConstruction rc = construct_rho(phi, psi, a.u, a.K);
  const RhoVerification v = verify_rho(rc, phi, psi);
  json j = report::to_json(rc, v);
  j["phi"] = phi.spec();
  j["psi"] = psi.spec();
  out.emit(j);
  return v.pass ? kPass : kNegative;
}

struct CexArgs {
  int m = kMaxFamilyDepth;
  std::size_t samples = 1000;
  std::uint64_t seed = kDefaultSeed;
};

int run_verify_cex(const CexArgs& a, const Output& out) {
  const CexFamily fam = build_family(a.m);
  const CexReport rep = verify_all(fam, a.samples, a.seed);
  out.emit(report::to_json(rep));
  return rep.pass() ? kPass : kNegative;
}

struct NormArgs {
  std::string space, fn, x_path;
  int refinement = 64;
};

int run_norm(const NormArgs& a, const Output& out) {
  const StepFunction x = io::load_step_function(a.x_path);
  json j{{"space", a.space}, {"function", a.fn}};
  if (a.space == "lorentz") {
    j["value"] = lorentz_norm(x, parse_gfun(a.fn));
  } else if (a.space == "quasi") {
    j["value"] = quasi_norm(x, parse_gfun(a.fn));
  } else if (a.space == "marc") {
    const SupResult s = std::visit([&](const auto& theta) { return marcinkiewicz_norm(x, theta, a.refinement); },
                                   parse_theta(a.fn));
    j["value"] = s.value;
    j["argmax"] = s.argmax;
    j["refinement"] = s.refinement;
  } else if (a.space == "orlicz") {
    j["value"] = orlicz_norm(x, parse_orlicz(a.fn));
  } else {
    if (a.fn != "-") throw InvalidFunction("the F norm takes no function; pass '-'");
    const FNormResult f = f_norm(x, build_family(kMaxFamilyDepth));
    j = report::to_json(f);
    j["space"] = a.space;
  }
  out.emit(j);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rearrangement-invariant norms, embedding tests and the log-power counterexample family."};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  std::string format = "json";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_option("--output,-o", out.path, "write the report here instead of stdout");

  std::function<int()> run;

  IndicesArgs ia;
  auto* indices = app.add_subcommand("indices", "dilation indices of a function spec");
  indices->add_option("spec", ia.spec, "pow:a | powlog:a:b | table:<path> | scaled:c:<spec>")->required();
  indices->add_option("--J", ia.J, "largest dyadic dilation exponent")->capture_default_str();
  indices->add_option("--K", ia.K, "sup grid depth")->capture_default_str();
  indices->callback([&] { run = [&] { return run_indices(ia, out); }; });

  EmbedArgs ea;
  auto* embed = app.add_subcommand("embed", "Lambda(phi) into M(tilde psi): series test, conditions (A)/(B)");
  embed->add_option("phi", ea.phi, "function spec of phi")->required();
  embed->add_option("psi", ea.psi, "function spec of psi")->required();
  embed->add_option("--depth", ea.depth, "dyadic series depth")->capture_default_str()->check(CLI::Range(8, 4000));
  embed->add_flag("--theorem5", ea.theorem5, "run the index/integral chain (needs condition B)");
  embed->add_option("--witness", ea.witness, "search for n witness points")->check(CLI::Range(1, 30));
  embed->callback([&] { run = [&] { return run_embed(ea, out); }; });

  RhoArgs ra;
  auto* rho = app.add_subcommand("rho", "build and verify the intermediate weight rho");
  rho->add_option("phi", ra.phi, "function spec of phi")->required();
  rho->add_option("psi", ra.psi, "function spec of psi")->required();
  rho->add_option("--u", ra.u, "decay exponent u (default (1 - delta_phi)/2)");
  rho->add_option("--K", ra.K, "dyadic depth of the construction")->capture_default_str()->check(CLI::Range(8, 1000));
  rho->callback([&] { run = [&] { return run_rho(ra, out); }; });

  CexArgs ca;
  auto* cex = app.add_subcommand("verify-cex", "build the counterexample family and check every claim");
  cex->add_option("--m", ca.m, "largest family index M_max")->capture_default_str();
  cex->add_option("--samples", ca.samples, "random coefficient vectors")->capture_default_str();
  cex->add_option("--seed", ca.seed, "sampling seed")->default_str("0x5EED");
  cex->callback([&] { run = [&] { return run_verify_cex(ca, out); }; });

  NormArgs na;
  auto* norm = app.add_subcommand("norm", "evaluate a norm of a step function read from JSON");
  norm->add_option("space", na.space, "lorentz | marc | quasi | orlicz | F")
      ->required()
      ->check(CLI::IsMember({"lorentz", "marc", "quasi", "orlicz", "F"}));
  norm->add_option("fn", na.fn, "function spec (tilde:<spec> allowed for marc, '-' for F)")->required();
  norm->add_option("x", na.x_path, "step function JSON file")->required();
  norm->add_option("--refinement", na.refinement, "Marcinkiewicz samples per block")
      ->capture_default_str()
      ->check(CLI::Range(1, 4096));
  norm->callback([&] { run = [&] { return run_norm(na, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }
  out.format = format == "csv" ? report::Format::csv : format == "text" ? report::Format::text : report::Format::json;

  try {
    return run();
  } catch (const DepthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDepth;
  } catch (const InvalidFunction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonConvex& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionFailed& e) {
    std::cerr << "error: precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const EmbedOrderError& e) {
    std::cerr << "error: precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDepth;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}
