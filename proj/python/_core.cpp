#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "indefsqrt/canonical.hpp"
#include "indefsqrt/cli.hpp"
#include "indefsqrt/roots.hpp"
#include "indefsqrt/stability.hpp"
#include "indefsqrt/verify.hpp"

namespace py = pybind11;
using namespace indefsqrt;

namespace {

Tolerance make_tol(double rel, double abs) {
  Tolerance t{rel, abs};
  validate(t);
  return t;
}

cli::Options make_options(const std::string& mode, std::optional<std::size_t> pairing, std::uint64_t seed, bool probe,
                          double radius, std::size_t samples) {
  cli::Options o;
  o.mode = parse_mode(mode);
  o.pairing = pairing;
  o.seed = seed;
  o.probe = probe;
  o.radius = radius;
  o.samples = samples;
  return o;
}

// Runs a CLI command on a ProblemFile string; returns (exit code, report JSON).
py::tuple run_command(const std::string& command, const std::string& problem, const cli::Options& o) {
  cli::Result r;
  try {
    const Problem p = parse_problem_text(problem);
    if (command == "analyze") r = cli::analyze(p);
    else if (command == "sqrt") r = cli::sqrt(p, o);
    else if (command == "pairings") r = cli::pairings(p);
    else if (command == "stability") r = cli::stability(p, o);
    else if (command == "verify") r = cli::verify(p);
    else throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  } catch (const Error& e) {
    r = cli::failure(command, e);
  }
  return py::make_tuple(r.exit_code, r.report.dump(2));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Square roots of H-nonnegative matrices in indefinite inner product spaces.";

  py::register_exception<Error>(m, "IndefSqrtError", PyExc_ValueError);

  py::enum_<Mode>(m, "Mode")
      .value("general", Mode::General)
      .value("hsa", Mode::Hsa)
      .value("hnn", Mode::Hnn);

  py::enum_<StabilityLevel>(m, "StabilityLevel")
      .value("unstable", StabilityLevel::Unstable)
      .value("conditional", StabilityLevel::Conditional)
      .value("unconditional", StabilityLevel::Unconditional);

  py::class_<CanonicalBlock>(m, "CanonicalBlock")
      .def(py::init([](double eigenvalue, int size, int sign) {
             CanonicalBlock b{eigenvalue, size, sign};
             validate(b);
             return b;
           }),
           py::arg("eigenvalue"), py::arg("size"), py::arg("sign"))
      .def_readonly("eigenvalue", &CanonicalBlock::eigenvalue)
      .def_readonly("size", &CanonicalBlock::size)
      .def_readonly("sign", &CanonicalBlock::sign)
      .def("__eq__", [](const CanonicalBlock& a, const CanonicalBlock& b) { return a == b; })
      .def("__repr__", [](const CanonicalBlock& b) {
        return "CanonicalBlock(" + std::to_string(b.eigenvalue) + ", " + std::to_string(b.size) + ", " +
               std::to_string(b.sign) + ")";
      });

  py::class_<CanonicalPair>(m, "CanonicalPair")
      .def(py::init<std::vector<CanonicalBlock>>(), py::arg("blocks"))
      .def_property_readonly("blocks", &CanonicalPair::blocks)
      .def_property_readonly("dimension", &CanonicalPair::dimension)
      .def_property_readonly("q", &CanonicalPair::q)
      .def_property_readonly("r", &CanonicalPair::r)
      .def_property_readonly("s_plus", &CanonicalPair::s_plus)
      .def_property_readonly("s_minus", &CanonicalPair::s_minus)
      .def_property_readonly("t", &CanonicalPair::t)
      .def("__eq__", [](const CanonicalPair& a, const CanonicalPair& b) { return a == b; })
      .def("__len__", [](const CanonicalPair& cp) { return cp.blocks().size(); });

  py::class_<SegrePairing>(m, "SegrePairing")
      .def_readonly("l1", &SegrePairing::l1)
      .def_readonly("l2", &SegrePairing::l2)
      .def_readonly("l3", &SegrePairing::l3)
      .def_readonly("l4", &SegrePairing::l4)
      .def("__repr__", [](const SegrePairing& p) {
        return "SegrePairing(l1=" + std::to_string(p.l1) + ", l2=" + std::to_string(p.l2) +
               ", l3=" + std::to_string(p.l3) + ", l4=" + std::to_string(p.l4) + ")";
      });

  m.def(
      "synthesize",
      [](const CanonicalPair& cp) {
        const MatrixPair p = synthesize(cp);
        return py::make_tuple(p.B, p.H);
      },
      py::arg("cp"), "Returns (B, H) in canonical coordinates.");

  m.def(
      "canonicalize",
      [](const ComplexMatrix& B, const ComplexMatrix& H, double rel, double abs) {
        const CanonicalForm f = canonicalize(B, H, make_tol(rel, abs));
        return py::make_tuple(f.pair, f.S);
      },
      py::arg("B"), py::arg("H"), py::arg("rel") = 1e-10, py::arg("abs") = 1e-12,
      "Returns (cp, S) with S^-1 B S and S^* H S equal to synthesize(cp).");

  m.def(
      "is_h_nonnegative",
      [](const ComplexMatrix& B, const ComplexMatrix& H, double rel, double abs) {
        return is_H_nonnegative(B, H, make_tol(rel, abs));
      },
      py::arg("B"), py::arg("H"), py::arg("rel") = 1e-10, py::arg("abs") = 1e-12);

  m.def(
      "existence",
      [](const CanonicalPair& cp, Mode mode) {
        const Verdict v = existence(cp, mode);
        return py::make_tuple(v.ok, v.reason);
      },
      py::arg("cp"), py::arg("mode") = Mode::General);

  m.def(
      "pairings",
      [](const CanonicalPair& cp) { return enumerate_pairings(segre_characteristic(tri_split(cp).zero)); },
      py::arg("cp"), "Segre pairings of the zero part of cp.");

  m.def(
      "square_root",
      [](const CanonicalPair& cp, const SegrePairing& pairing, Mode mode, std::uint64_t seed) {
        return assemble_root(cp, sample_plan(cp, pairing, mode, seed));
      },
      py::arg("cp"), py::arg("pairing"), py::arg("mode") = Mode::General, py::arg("seed") = 0,
      "A square root of synthesize(cp).B in canonical coordinates.");

  m.def(
      "jordan_structure",
      [](const ComplexMatrix& M, double rel, double abs) {
        std::vector<std::pair<Complex, int>> out;
        for (const auto& b : jordan_structure(M, make_tol(rel, abs)).blocks) out.emplace_back(b.eigenvalue, b.size);
        return out;
      },
      py::arg("M"), py::arg("rel") = 1e-10, py::arg("abs") = 1e-12, "List of (eigenvalue, block size).");

  m.def(
      "check_square",
      [](const ComplexMatrix& A, const ComplexMatrix& B, double rel, double abs) {
        const SquareCheck c = check_square(A, B, make_tol(rel, abs));
        return py::make_tuple(c.ok, c.residual);
      },
      py::arg("A"), py::arg("B"), py::arg("rel") = 1e-10, py::arg("abs") = 1e-12);

  m.def(
      "best_stability", [](const CanonicalPair& cp) { return best_stability(cp).level; }, py::arg("cp"));

  m.def(
      "witness",
      [](const std::string& kind, double a) {
        const MatrixPair p = instability_witness(parse_witness_kind(kind), a);
        return py::make_tuple(p.B, p.H);
      },
      py::arg("kind"), py::arg("a"));

  m.def(
      "run",
      [](const std::string& command, const std::string& problem, const std::string& mode,
         std::optional<std::size_t> pairing, std::uint64_t seed, bool probe, double radius, std::size_t samples) {
        return run_command(command, problem, make_options(mode, pairing, seed, probe, radius, samples));
      },
      py::arg("command"), py::arg("problem"), py::arg("mode") = "general", py::arg("pairing") = py::none(),
      py::arg("seed") = 0, py::arg("probe") = false, py::arg("radius") = 1e-3, py::arg("samples") = 20,
      "Runs a CLI command on a ProblemFile JSON string; returns (exit_code, report_json).");
}
