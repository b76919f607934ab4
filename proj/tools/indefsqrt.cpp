// indefsqrt: square roots of H-nonnegative matrices from the command line.
//
//   indefsqrt analyze problem.json
//   indefsqrt sqrt problem.json --mode hnn --seed 7
//   indefsqrt witness --kind delta_minus --a 0.5 | indefsqrt analyze -

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "indefsqrt/cli.hpp"
#include "indefsqrt/error.hpp"

namespace {

using namespace indefsqrt;

struct Settings {
  std::string input = "-";
  std::string mode = "general";
  std::optional<std::size_t> pairing;
  std::uint64_t seed = 0;
  bool probe = false;
  double radius = 1e-3;
  std::size_t samples = 20;
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::string out;
  std::string format = "json";
  std::string kind = "delta_minus";
  double a = 0.0;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Problem load(const Settings& s) {
  Problem p = parse_problem_text(read_input(s.input));
  if (s.tol_rel) p.tol.rel = *s.tol_rel;
  if (s.tol_abs) p.tol.abs = *s.tol_abs;
  validate(p.tol);
  return p;
}

int emit(const Settings& s, const Json& report, int code) {
  const std::string text = s.format == "text" ? cli::render_text(report) : report.dump(2) + "\n";
  if (s.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(s.out);
    if (!f) {
      std::cerr << "indefsqrt: cannot write '" << s.out << "'\n";
      return cli::kExitParseError;
    }
    f << text;
  }
  return code;
}

int run(const std::string& command, const Settings& s) {
  try {
    if (command == "witness") {
      return emit(s, cli::witness(parse_witness_kind(s.kind), s.a), cli::kExitOk);
    }
    const Problem p = load(s);
    cli::Options o;
    o.mode = parse_mode(s.mode);
    o.pairing = s.pairing;
    o.seed = s.seed;
    o.probe = s.probe;
    o.radius = s.radius;
    o.samples = s.samples;

    cli::Result r;
    if (command == "analyze") r = cli::analyze(p);
    else if (command == "sqrt") r = cli::sqrt(p, o);
    else if (command == "pairings") r = cli::pairings(p);
    else if (command == "stability") r = cli::stability(p, o);
    else r = cli::verify(p);
    return emit(s, r.report, r.exit_code);
  } catch (const Error& e) {
    const cli::Result r = cli::failure(command, e);
    std::cerr << "indefsqrt: " << e.what() << "\n";
    return emit(s, r.report, r.exit_code);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square roots of H-nonnegative matrices in indefinite inner product spaces"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* sub, bool takes_input) {
    if (takes_input) {
      sub->add_option("input", s.input, "ProblemFile path, or - for stdin")->capture_default_str();
      sub->add_option("--tol-rel", s.tol_rel, "relative tolerance (overrides the file)");
      sub->add_option("--tol-abs", s.tol_abs, "absolute tolerance (overrides the file)");
    }
    sub->add_option("--out", s.out, "write the report here instead of stdout");
    sub->add_option("--format", s.format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", s.seed, "RNG seed")->envname("INDEFSQRT_SEED")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "canonical form, counts and existence per mode");
  common(analyze, true);

  auto* sqrt = app.add_subcommand("sqrt", "construct and verify one square root");
  common(sqrt, true);
  seeded(sqrt);
  sqrt->add_option("--mode", s.mode)->check(CLI::IsMember({"general", "hsa", "hnn"}))->capture_default_str();
  sqrt->add_option("--pairing", s.pairing, "index into the admissible pairings of the mode");

  auto* pairings = app.add_subcommand("pairings", "list Segre pairings of the zero part");
  common(pairings, true);

  auto* stability = app.add_subcommand("stability", "stability of H-nonnegative roots");
  common(stability, true);
  seeded(stability);
  stability->add_flag("--probe", s.probe, "run the perturbation probe");
  stability->add_option("--radius", s.radius)->check(CLI::PositiveNumber)->capture_default_str();
  stability->add_option("--samples", s.samples)->check(CLI::PositiveNumber)->capture_default_str();
  stability->add_option("--pairing", s.pairing, "pairing probed (default: the most stable one)");

  auto* verify = app.add_subcommand("verify", "check the root \"A\" stored in the problem file");
  common(verify, true);

  auto* witness = app.add_subcommand("witness", "emit an instability witness pair as a ProblemFile");
  common(witness, false);
  witness->add_option("--kind", s.kind)->check(CLI::IsMember({"delta_minus", "mixed_pair"}))->capture_default_str();
  witness->add_option("--a", s.a, "family parameter in [0, 1]")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitParseError;
  }

  for (auto* sub : {analyze, sqrt, pairings, stability, verify, witness}) {
    if (sub->parsed()) return run(sub->get_name(), s);
  }
  return cli::kExitParseError;
}
