#include "indefsqrt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "indefsqrt/error.hpp"
#include "indefsqrt/roots.hpp"
#include "indefsqrt/verify.hpp"

namespace indefsqrt::cli {
namespace {

Json blocks_json(const CanonicalPair& cp) {
  Json out = Json::array();
  for (const auto& b : cp.blocks()) out.push_back({{"eigenvalue", b.eigenvalue}, {"size", b.size}, {"sign", b.sign}});
  return out;
}

Json counts_json(const CanonicalPair& cp) {
  return {{"q", cp.q()},       {"r", cp.r()},           {"s", cp.s()},
          {"t", cp.t()},       {"s_plus", cp.s_plus()}, {"s_minus", cp.s_minus()},
          {"dimension", cp.dimension()}};
}

Json canonical_json(const CanonicalForm& form) {
  const TriSplit split = tri_split(form.pair);
  return {{"blocks", blocks_json(form.pair)},
          {"counts", counts_json(form.pair)},
          {"transform", matrix_to_json(form.S)},
          {"condition", form.condition},
          {"tri_split",
           {{"negative", split.negative.dimension()},
            {"zero", split.zero.dimension()},
            {"positive", split.positive.dimension()}}}};
}

Json verdict_json(const Verdict& v) { return {{"exists", v.ok}, {"reason", v.reason}}; }

Json pairing_json(const SegrePairing& p) {
  Json pairs = Json::array();
  for (const auto& pr : p.pairs()) pairs.push_back({pr.first, pr.second});
  return {{"l1", p.l1}, {"l2", p.l2}, {"l3", p.l3}, {"l4", p.l4}, {"pairs", pairs}};
}

Json params_json(const RootParams& params) {
  Json out = {{"kind", to_string(kind_of(params))}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, P11> || std::is_same_v<T, P21>) {
          out["alpha"] = complex_to_json(p.alpha);
          out["beta"] = complex_to_json(p.beta);
        } else if constexpr (std::is_same_v<T, P11Upper>) {
          out["alpha"] = complex_to_json(p.alpha);
        } else if constexpr (std::is_same_v<T, P22>) {
          out["alpha"] = Json::array({complex_to_json(p.a1), complex_to_json(p.a2), complex_to_json(p.a3),
                                      complex_to_json(p.a4)});
        } else if constexpr (std::is_same_v<T, P22Alt>) {
          out["gamma"] = Json::array({complex_to_json(p.g1), complex_to_json(p.g2), complex_to_json(p.g3)});
        } else if constexpr (std::is_same_v<T, P11Hsa> || std::is_same_v<T, P21Hsa>) {
          out["alpha"] = p.alpha;
          out["beta"] = complex_to_json(p.beta);
        }
      },
      params);
  return out;
}

Json predicted_json(const std::vector<PredictedBlock>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) {
    Json e = {{"eigenvalue", complex_to_json(b.eigenvalue)}, {"size", b.size}};
    if (b.sign != 0) e["sign"] = b.sign;
    out.push_back(e);
  }
  return out;
}

Json jordan_json(const JordanData& data) {
  Json out = Json::array();
  for (const auto& b : data.blocks) out.push_back({{"eigenvalue", complex_to_json(b.eigenvalue)}, {"size", b.size}});
  return out;
}

Json error_json(const std::string& code, const std::string& message) {
  return Json::array({{{"code", code}, {"message", message}}});
}

Json base_report(const std::string& command, const Problem& p) {
  return {{"command", command},
          {"tolerance", tolerance_to_json(p.tol)},
          {"input", {{"B", matrix_to_json(p.B)}, {"H", matrix_to_json(p.H)}}},
          {"errors", Json::array()}};
}

template <class F>
Result guarded(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return failure(command, e);
  }
}

double hermitian_defect(const ComplexMatrix& m) { return spectral_norm(m - m.adjoint()); }

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

std::vector<SegrePairing> admissible_pairings(const CanonicalPair& cp, Mode mode) {
  const CanonicalPair zero = tri_split(cp).zero;
  std::vector<SegrePairing> out;
  for (const auto& p : enumerate_pairings(segre_characteristic(zero))) {
    if (admissible_for_mode(p, zero, mode).ok) out.push_back(p);
  }
  return out;
}

Result no_root(Json report, const std::string& reason) {
  report["errors"] = error_json("NoRoot", reason);
  return {kExitNoRoot, std::move(report)};
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidArgument: return kExitParseError;
    case ErrorCode::ExistenceViolation:
    case ErrorCode::NoHnnRoot: return kExitNoRoot;
    default: return kExitInvalidPair;
  }
}

Result failure(const std::string& command, const Error& error) {
  Json report = {{"command", command}, {"errors", error_json(std::string(to_string(error.code())), error.what())}};
  return {exit_code_for(error.code()), std::move(report)};
}

Result analyze(const Problem& p) {
  return guarded("analyze", [&] {
    Json r = base_report("analyze", p);
    const CanonicalForm form = canonicalize(p.B, p.H, p.tol);
    r["canonical"] = canonical_json(form);
    r["segre_characteristic"] = segre_characteristic(tri_split(form.pair).zero).entries;
    r["existence"] = {{"general", verdict_json(existence(form.pair, Mode::General))},
                      {"hsa", verdict_json(existence(form.pair, Mode::Hsa))},
                      {"hnn", verdict_json(existence(form.pair, Mode::Hnn))}};
    return Result{kExitOk, std::move(r)};
  });
}

Result sqrt(const Problem& p, const Options& o) {
  return guarded("sqrt", [&] {
    Json r = base_report("sqrt", p);
    r["mode"] = to_string(o.mode);
    r["seed"] = o.seed;
    const CanonicalForm form = canonicalize(p.B, p.H, p.tol);
    r["canonical"] = canonical_json(form);
    const Verdict exists = existence(form.pair, o.mode);
    r["existence"] = verdict_json(exists);
    if (!exists.ok) return no_root(std::move(r), exists.reason);

    const auto candidates = admissible_pairings(form.pair, o.mode);
    const std::size_t index = o.pairing.value_or(0);
    if (index >= candidates.size()) {
      throw Error(ErrorCode::InvalidArgument, "pairing index " + std::to_string(index) + " out of range (" +
                                                  std::to_string(candidates.size()) + " admissible)");
    }
    const RootPlan plan = sample_plan(form.pair, candidates[index], o.mode, o.seed);
    const ComplexMatrix root_c = assemble_root(form.pair, plan);
    const ComplexMatrix root = form.S * root_c * form.S.partialPivLu().inverse();

    Json plan_json = {{"pairing", pairing_json(plan.pairing)}, {"pairing_index", index}};
    plan_json["params"] = Json::array();
    for (const auto& prm : plan.params) plan_json["params"].push_back(params_json(prm));
    plan_json["signs"] = plan.signs.deltas;
    plan_json["block_assignment"] = plan.block_assignment;
    r["plan"] = plan_json;

    const SquareCheck sq = check_square(root, p.B, p.tol);
    Json root_json = {{"A", matrix_to_json(root)},
                      {"A_canonical", matrix_to_json(root_c)},
                      {"square_check", {{"ok", sq.ok}, {"residual", sq.residual}, {"threshold", sq.threshold}}}};
    bool ok = sq.ok;
    if (o.mode != Mode::General) {
      const ComplexMatrix HA = p.H * root;
      const double defect = hermitian_defect(HA);
      const double limit = p.tol.threshold(spectral_norm(HA));
      const bool hsa_ok = defect <= limit;
      root_json["h_selfadjoint"] = {{"ok", hsa_ok}, {"residual", defect}, {"threshold", limit}};
      ok = ok && hsa_ok;
      if (o.mode == Mode::Hnn) {
        const double low = min_hermitian_eigenvalue(HA);
        const bool psd = low >= -limit;
        root_json["h_nonnegative"] = {{"ok", psd}, {"min_eigenvalue", low}, {"threshold", limit}};
        ok = ok && psd;
      }
    }
    const auto predicted = predicted_jordan_form(plan.pairing, form.pair, plan.signs, o.mode);
    Json jordan = {{"predicted", predicted_json(predicted)}};
    try {
      const JordanData detected = jordan_structure(root, p.tol);
      const double eig_tol = 1e-6 * std::max(1.0, spectral_norm(root));
      const bool match = same_jordan(detected, to_jordan_data(predicted), eig_tol);
      jordan["detected"] = jordan_json(detected);
      jordan["match"] = match;
      ok = ok && match;
    } catch (const Error& e) {
      jordan["detected"] = nullptr;
      jordan["match"] = false;
      jordan["detection_error"] = e.what();
    }
    root_json["jordan"] = jordan;
    root_json["ok"] = ok;
    r["root"] = root_json;
    return Result{ok ? kExitOk : kExitVerifyFailed, std::move(r)};
  });
}

Result pairings(const Problem& p) {
  return guarded("pairings", [&] {
    Json r = base_report("pairings", p);
    const CanonicalForm form = canonicalize(p.B, p.H, p.tol);
    r["canonical"] = canonical_json(form);
    const CanonicalPair zero = tri_split(form.pair).zero;
    const SegreCharacteristic sc = segre_characteristic(zero);
    r["segre_characteristic"] = sc.entries;
    r["existence"] = verdict_json(existence(form.pair, Mode::General));
    const RootSignChoice plus{std::vector<int>(form.pair.r(), 1)};
    Json list = Json::array();
    std::size_t index = 0;
    for (const auto& pr : enumerate_pairings(sc)) {
      Json e = pairing_json(pr);
      e["index"] = index++;
      e["predicted_jordan"] = predicted_json(predicted_jordan_form(pr, form.pair, plus, Mode::General));
      const Verdict hsa = admissible_for_mode(pr, zero, Mode::Hsa);
      const Verdict hnn = admissible_for_mode(pr, zero, Mode::Hnn);
      e["admissible"] = {{"general", true},
                         {"hsa", {{"ok", hsa.ok}, {"reason", hsa.reason}}},
                         {"hnn", {{"ok", hnn.ok}, {"reason", hnn.reason}}}};
      list.push_back(e);
    }
    r["pairings"] = list;
    return Result{kExitOk, std::move(r)};
  });
}

Result stability(const Problem& p, const Options& o) {
  return guarded("stability", [&] {
    Json r = base_report("stability", p);
    r["seed"] = o.seed;
    const CanonicalForm form = canonicalize(p.B, p.H, p.tol);
    r["canonical"] = canonical_json(form);
    const Verdict exists = existence(form.pair, Mode::Hnn);
    r["existence"] = verdict_json(exists);
    if (!exists.ok) return no_root(std::move(r), exists.reason);

    const StabilityVerdict best = best_stability(form.pair);
    Json st = {{"best", {{"level", to_string(best.level)}, {"reason", best.reason}}}};

    const auto candidates = admissible_pairings(form.pair, Mode::Hnn);
    Json list = Json::array();
    std::vector<RootPlan> plans;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      plans.push_back(sample_plan(form.pair, candidates[i], Mode::Hnn, o.seed));
      const StabilityVerdict v = classify_root(plans.back(), form.pair);
      if (v.level > classify_root(plans[best_index], form.pair).level) best_index = i;
      Json e = pairing_json(candidates[i]);
      e["index"] = i;
      e["level"] = to_string(v.level);
      e["reason"] = v.reason;
      list.push_back(e);
    }
    st["per_pairing"] = list;

    if (o.probe) {
      const std::size_t index = o.pairing.value_or(best_index);
      if (index >= plans.size()) {
        throw Error(ErrorCode::InvalidArgument, "pairing index " + std::to_string(index) + " out of range");
      }
      const ProbeReport pr = perturbation_probe(form.pair, plans[index], o.radius, o.samples, o.seed, p.tol);
      Json failures = Json::array();
      for (const auto& f : pr.failures) {
        failures.push_back({{"index", f.index}, {"perturbation", f.perturbation}, {"reason", f.reason}});
      }
      Json records = Json::array();
      for (const auto& s : pr.records) {
        records.push_back(
            {{"index", s.index}, {"perturbation", s.perturbation}, {"rootable", s.rootable}, {"distance", s.distance}});
      }
      st["probe"] = {{"pairing_index", index},
                    {"samples", pr.samples},
                    {"root_exists_count", pr.root_exists_count},
                    {"max_nearest_root_distance", pr.max_nearest_root_distance},
                    {"max_distance_ratio", pr.max_distance_ratio},
                    {"radius", pr.radius},
                    {"note", "perturbations are taken in canonical coordinates of the input pair"},
                    {"records", records},
                    {"failures", failures}};
    }
    r["stability"] = st;
    return Result{kExitOk, std::move(r)};
  });
}

Result verify(const Problem& p) {
  return guarded("verify", [&] {
    if (!p.A) throw Error(ErrorCode::ParseError, "verify needs a candidate root under key \"A\"");
    Json r = base_report("verify", p);
    const ComplexMatrix& A = *p.A;
    r["input"]["A"] = matrix_to_json(A);
    validate_gramian(p.H, p.tol);
    const SquareCheck sq = check_square(A, p.B, p.tol);
    r["square_check"] = {{"ok", sq.ok}, {"residual", sq.residual}, {"threshold", sq.threshold}};
    r["h_selfadjoint"] = is_H_selfadjoint(A, p.H, p.tol);
    r["h_nonnegative"] = is_H_nonnegative(A, p.H, p.tol);
    try {
      r["jordan"] = jordan_json(jordan_structure(A, p.tol));
    } catch (const Error& e) {
      r["jordan"] = nullptr;
      r["jordan_error"] = e.what();
    }
    return Result{sq.ok ? kExitOk : kExitVerifyFailed, std::move(r)};
  });
}

Json witness(WitnessKind kind, double a) { return problem_to_json(instability_witness(kind, a)); }

std::string render_text(const Json& r) {
  std::ostringstream out;
  const std::string command = r.value("command", "");
  out << "command: " << command << "\n";
  if (r.contains("canonical")) {
    out << "canonical blocks (eigenvalue, size, sign):\n";
    for (const auto& b : r["canonical"]["blocks"]) {
      out << "  (" << b["eigenvalue"].get<double>() << ", " << b["size"] << ", " << (b["sign"].get<int>() > 0 ? "+1" : "-1")
          << ")\n";
    }
    const auto& c = r["canonical"]["counts"];
    out << "counts: q=" << c["q"] << " r=" << c["r"] << " s=" << c["s"] << " t=" << c["t"] << " s+=" << c["s_plus"]
        << " s-=" << c["s_minus"] << "\n";
  }
  if (r.contains("existence")) {
    const auto& e = r["existence"];
    if (e.contains("exists")) {
      out << "root exists: " << (e["exists"].get<bool>() ? "yes" : "no") << " (" << e["reason"].get<std::string>() << ")\n";
    } else {
      for (const char* m : {"general", "hsa", "hnn"}) {
        out << "exists[" << m << "]: " << (e[m]["exists"].get<bool>() ? "yes" : "no") << " ("
            << e[m]["reason"].get<std::string>() << ")\n";
      }
    }
  }
  const Json* listed = r.contains("pairings") ? &r["pairings"]
                       : r.contains("stability") ? &r["stability"]["per_pairing"]
                                                 : nullptr;
  if (listed != nullptr) {
    out << "pairings:\n";
    for (const auto& p : *listed) {
      out << "  #" << p["index"] << " l1=" << p["l1"] << " l2=" << p["l2"] << " l3=" << p["l3"] << " l4=" << p["l4"];
      if (p.contains("level")) out << " -> " << p["level"].get<std::string>();
      if (p.contains("predicted_jordan")) {
        out << " jordan:";
        for (const auto& b : p["predicted_jordan"]) out << " J" << b["size"];
      }
      out << "\n";
    }
  }
  if (r.contains("root")) {
    const auto& root = r["root"];
    out << "root residual ||A^2 - B|| = " << root["square_check"]["residual"].get<double>() << "\n";
    out << "root checks: " << (root["ok"].get<bool>() ? "pass" : "FAIL") << "\n";
  }
  if (r.contains("square_check")) {
    out << "square check: " << (r["square_check"]["ok"].get<bool>() ? "pass" : "FAIL")
        << " (residual " << r["square_check"]["residual"].get<double>() << ")\n";
  }
  if (r.contains("stability")) {
    out << "best stability: " << r["stability"]["best"]["level"].get<std::string>() << "\n";
  }
  if (r.contains("stability") && r["stability"].contains("probe")) {
    const auto& p = r["stability"]["probe"];
    out << "probe: " << p["root_exists_count"] << "/" << p["samples"] << " rootable, max distance "
        << p["max_nearest_root_distance"].get<double>() << ", max ratio " << p["max_distance_ratio"].get<double>()
        << "\n";
  }
  for (const auto& e : r.value("errors", Json::array())) {
    out << "error: " << e["code"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
  }
  return out.str();
}

}  // namespace indefsqrt::cli
