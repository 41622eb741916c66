#include "nilsect/report.hpp"

#include "nilsect/alb.hpp"
#include "nilsect/f2.hpp"
#include "nilsect/obstruction.hpp"
#include "nilsect/spec_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nilsect {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const char* kPass = "pass";
const char* kFail = "fail";
const char* kGated = "hypothesis not met";

json labels_json(const std::vector<F2Vector>& classes) {
  json out = json::array();
  for (const auto& c : classes) out.push_back(class_label(c));
  return out;
}

json adjunction_json(const EquivariantPi1Data& data) {
  const auto adj = verify_unit_adjunction(data);
  json out;
  out["status"] = adj.gated ? kGated : (adj.passed() ? kPass : kFail);
  if (adj.gated) out["reason"] = adj.gate_reason;
  out["h1_dimension"] = adj.h1_dimension;
  json kappa = json::array();
  for (std::size_t i = 0; i < adj.kappa_coordinates.size(); ++i)
    kappa.push_back({{"component", data.pi0_real.labels[i]},
                     {"base", static_cast<Index>(i) == data.pi0_real.base},
                     {"class", class_label(adj.kappa_coordinates[i])}});
  out["kappa"] = kappa;
  if (!adj.gated) {
    out["base_zero"] = adj.base_zero;
    out["distinct_nonzero"] = adj.distinct_nonzero;
    out["basis"] = adj.basis;
    out["unit_matches_kappa"] = unit_matches_kappa(data);
    if (!unit_matches_kappa(data)) out["status"] = kFail;
  }
  if (!adj.failures.empty()) out["failures"] = adj.failures;
  return out;
}

json delta2_json(const Delta2Calculator& calc, const ObstructionReport& rep, std::uint64_t seed) {
  json out;
  const auto zark = check_zarkhin_identity(calc);
  const auto indep = check_representative_independence(calc, seed);
  const bool oracle = check_solvability_oracle(calc);
  bool ok = zark.holds && indep.holds && oracle;
  if (rep.zarkhin_available) {
    out["route_agreement"] = rep.routes_agree;
    ok = ok && rep.routes_agree;
  } else {
    out["route_agreement"] = "kappa classes are not a basis; lift route only";
  }
  out["zarkhin_identity"] = {{"holds", zark.holds}, {"pairs", zark.pairs_checked}};
  if (zark.counterexample)
    out["zarkhin_identity"]["counterexample"] = {class_label(zark.counterexample->first),
                                                 class_label(zark.counterexample->second)};
  out["representative_independence"] = {{"holds", indep.holds}, {"samples", indep.samples}};
  out["solvability_oracle"] = oracle;
  out["status"] = ok ? kPass : kFail;
  json values = json::array();
  for (const auto& row : rep.rows) {
    json r;
    r["class"] = class_label(row.h1);
    r["lift"] = class_label(row.delta2_lift);
    r["zarkhin"] = row.delta2_zarkhin ? json(class_label(*row.delta2_zarkhin)) : json(nullptr);
    values.push_back(r);
  }
  out["values"] = values;
  return out;
}

json theorem_json(const EquivariantPi1Data& data, const ObstructionReport& rep) {
  json out;
  out["status"] = rep.verdict == Verdict::pass ? kPass : (rep.verdict == Verdict::fail ? kFail : kGated);
  if (!data.hypotheses_met) out["warnings"] = data.warnings;
  std::vector<F2Vector> kernel, image;
  json rows = json::array();
  for (const auto& row : rep.rows) {
    if (row.in_kernel) kernel.push_back(row.h1);
    if (row.realized) image.push_back(row.h1);
    json r;
    r["class"] = class_label(row.h1);
    r["representative"] = vector_json(row.representative);
    r["delta2"] = class_label(row.delta2_lift);
    r["in_kernel"] = row.in_kernel;
    r["realized"] = row.realized;
    r["components"] = row.components;
    rows.push_back(r);
  }
  out["kernel"] = labels_json(kernel);
  out["image"] = labels_json(image);
  out["kernel_size"] = rep.kernel_size;
  out["image_size"] = rep.image_size;
  out["rows"] = rows;
  return out;
}

json alb_json(const EquivariantPi1Data& data) {
  const AlbModel m1(data, 1), m2(data, 2);
  const auto rc = reconcile_with_delta2(data, m1, m2);
  json out;
  out["status"] = rc.agrees ? kPass : kFail;
  out["fixed_components"] = rc.components;
  out["h1_order"] = rc.h1_order;
  out["lifting"] = rc.lifting;
  json rows = json::array();
  for (const auto& row : rc.rows) {
    json r;
    r["point"] = rational_strings(row.point);
    r["class"] = class_label(row.h1);
    r["lifts"] = row.lifts;
    r["in_kernel"] = row.in_kernel;
    r["fiber_translation"] = rational_strings(row.lift.fiber_translation);
    if (row.lift.witness) r["witness"] = rational_strings(*row.lift.witness);
    if (row.lift.obstruction) r["obstruction"] = rational_strings(*row.lift.obstruction);
    rows.push_back(r);
  }
  out["rows"] = rows;
  return out;
}

json lemma_json(const EquivariantPi1Data& data) {
  json out;
  bool ok = true;
  const auto& ab = data.abelianization();
  const Index k = h1(ab).num_generators();
  if (pair_count(k) < 40) {
    const auto cw = check_cup_wedge_injective(ab);
    out["cup_wedge"] = {{"injective", cw.injective}, {"h1_dimension", cw.h1_dimension},
                        {"elements_checked", cw.elements_checked}};
    ok = ok && cw.injective;
  } else {
    out["cup_wedge"] = "skipped: H^1 ^ H^1 too large to enumerate";
  }
  const auto pf = check_pushforward_injective(data);
  out["pushforward"] = {{"injective", pf.injective}, {"source_dimension", pf.source_dimension},
                        {"elements_checked", pf.elements_checked}};
  ok = ok && pf.injective;
  out["status"] = ok ? kPass : kFail;
  return out;
}

std::string combine(const std::vector<std::string>& statuses) {
  if (std::find(statuses.begin(), statuses.end(), kFail) != statuses.end()) return kFail;
  if (std::find(statuses.begin(), statuses.end(), kGated) != statuses.end()) return kGated;
  return kPass;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char ch : s) out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-') ? ch : '_';
  return out.empty() ? "spec" : out;
}

}  // namespace

std::optional<Check> parse_check(const std::string& name) {
  if (name == "adjunction") return Check::adjunction;
  if (name == "delta2") return Check::delta2;
  if (name == "theorem") return Check::theorem;
  if (name == "alb") return Check::alb;
  if (name == "lemma-injectivity") return Check::lemma_injectivity;
  return std::nullopt;
}

std::string to_string(Check c) {
  switch (c) {
    case Check::adjunction:
      return "adjunction";
    case Check::delta2:
      return "delta2";
    case Check::theorem:
      return "theorem";
    case Check::alb:
      return "alb";
    case Check::lemma_injectivity:
      return "lemma-injectivity";
  }
  return "";
}

std::vector<Check> all_checks() {
  return {Check::adjunction, Check::delta2, Check::theorem, Check::alb, Check::lemma_injectivity};
}

std::string class_label(const F2Vector& bits) {
  std::string out;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out += (out.empty() ? "e" : "+e") + std::to_string(i + 1);
  return out.empty() ? "0" : out;
}

json analyze(const CurveSpec& spec, const std::vector<Check>& checks, std::uint64_t seed, int verbosity) {
  const EquivariantPi1Data data = build(spec);
  json out;
  out["name"] = spec.name;
  json summary;
  summary["rank"] = data.nil2->rank();
  summary["center_rank"] = data.nil2->center_rank();
  summary["pi0_real"] = data.pi0_real.labels;
  summary["base"] = data.pi0_real.labels[static_cast<std::size_t>(data.pi0_real.base)];
  summary["h1_dimension"] = h1(data.abelianization()).num_generators();
  summary["h2_center_dimension"] = h2(data.nil2->center()).num_generators();
  summary["hypotheses_met"] = data.hypotheses_met;
  if (verbosity > 0) {
    json tau = json::array();
    const auto& t = data.abelianization().tau();
    for (Index i = 0; i < t.rows(); ++i) tau.push_back(vector_json(IntVector(t.row(i).transpose())));
    summary["tau"] = tau;
  }
  out["summary"] = summary;
  out["warnings"] = data.warnings;

  std::optional<Delta2Calculator> calc;
  std::optional<ObstructionReport> rep;
  auto need_obstruction = [&] {
    if (!calc) {
      calc.emplace(data);
      rep = verify_main_theorem(data);
    }
  };

  json results;
  std::vector<std::string> statuses;
  for (Check c : checks) {
    json r;
    switch (c) {
      case Check::adjunction:
        r = adjunction_json(data);
        break;
      case Check::delta2:
        need_obstruction();
        r = delta2_json(*calc, *rep, seed);
        break;
      case Check::theorem:
        need_obstruction();
        r = theorem_json(data, *rep);
        break;
      case Check::alb:
        r = alb_json(data);
        break;
      case Check::lemma_injectivity:
        r = lemma_json(data);
        break;
    }
    statuses.push_back(r["status"].get<std::string>());
    results[to_string(c)] = r;
  }
  out["status"] = combine(statuses);
  out["checks"] = results;
  return out;
}

RunResult run(const RunConfig& config) {
  RunResult res;
  json report;
  report["tool"] = "nilsect";
  report["seed"] = config.seed;
  json checks = json::array();
  for (Check c : config.checks) checks.push_back(to_string(c));
  report["checks"] = checks;

  json specs = json::array();
  json errors = json::array();
  Index passed = 0, failed = 0, gated = 0;
  if (config.checks.empty()) errors.push_back({{"input", nullptr}, {"error", "no checks selected"}});
  if (config.inputs.empty()) errors.push_back({{"input", nullptr}, {"error", "no input specs given"}});

  if (errors.empty()) {
    for (const auto& path : expand_inputs(config.inputs)) {
      try {
        CurveSpec spec = load_curve_spec(path.string());
        json r = analyze(spec, config.checks, config.seed, config.verbosity);
        r["source"] = path.string();
        const std::string status = r["status"].get<std::string>();
        if (status == kPass)
          ++passed;
        else if (status == kFail)
          ++failed;
        else
          ++gated;
        if (!config.plot_dir.empty()) {
          EquivariantPi1Data data = build(spec);
          fs::create_directories(config.plot_dir);
          const fs::path dst = fs::path(config.plot_dir) / (safe_name(spec.name.empty() ? path.stem().string() : spec.name) + ".plot.json");
          std::ofstream(dst) << plot_data(AlbModel(data, 1), AlbModel(data, 2)).dump(2) << "\n";
          r["plot_data"] = dst.string();
        }
        specs.push_back(r);
      } catch (const SpecParseError& e) {
        errors.push_back({{"input", path.string()}, {"error", e.what()}});
      } catch (const SpecError& e) {
        errors.push_back({{"input", path.string()}, {"error", e.what()}});
      }
    }
  }
  report["specs"] = specs;
  report["errors"] = errors;
  report["summary"] = {{"specs", static_cast<Index>(specs.size())},
                       {"passed", passed},
                       {"failed", failed},
                       {"hypothesis_not_met", gated},
                       {"input_errors", static_cast<Index>(errors.size())}};
  if (!errors.empty())
    res.exit_code = ExitCode::input_error;
  else if (failed > 0)
    res.exit_code = ExitCode::check_failed;
  report["exit_code"] = static_cast<int>(res.exit_code);
  res.report = report;
  res.rendered = config.format == Format::json ? report.dump(2) + "\n" : render_text(report);
  if (!config.out.empty()) {
    std::ofstream o(config.out);
    if (!o) throw std::runtime_error("cannot write " + config.out);
    o << res.rendered;
  }
  return res;
}

std::string render_text(const json& report) {
  std::ostringstream o;
  for (const auto& s : report["specs"]) {
    const auto& sum = s["summary"];
    o << "== " << s["name"].get<std::string>() << " [" << s["status"].get<std::string>() << "]\n";
    o << "  rank " << sum["rank"] << ", center rank " << sum["center_rank"] << ", H^1 dimension "
      << sum["h1_dimension"] << ", real components " << sum["pi0_real"].size() << "\n";
    for (const auto& w : s["warnings"]) o << "  warning: " << w.get<std::string>() << "\n";
    const auto& ch = s["checks"];
    if (ch.contains("adjunction")) {
      const auto& a = ch["adjunction"];
      o << "  adjunction: " << a["status"].get<std::string>() << "\n";
      for (const auto& k : a["kappa"])
        o << "    " << k["component"].get<std::string>() << " -> " << k["class"].get<std::string>() << "\n";
    }
    if (ch.contains("delta2")) {
      const auto& d = ch["delta2"];
      o << "  delta2: " << d["status"].get<std::string>() << " (Zarkhin identity on "
        << d["zarkhin_identity"]["pairs"] << " pairs)\n";
      for (const auto& v : d["values"])
        o << "    delta2(" << v["class"].get<std::string>() << ") = " << v["lift"].get<std::string>() << "\n";
    }
    if (ch.contains("theorem")) {
      const auto& t = ch["theorem"];
      auto join = [](const json& arr) {
        std::string out;
        for (const auto& x : arr) out += (out.empty() ? "" : ", ") + x.get<std::string>();
        return "{" + out + "}";
      };
      o << "  theorem: " << t["status"].get<std::string>() << "\n";
      o << "    Ker delta2   = " << join(t["kernel"]) << "\n";
      o << "    Image kappa  = " << join(t["image"]) << "\n";
    }
    if (ch.contains("alb")) {
      const auto& a = ch["alb"];
      o << "  alb: " << a["status"].get<std::string>() << ", " << a["fixed_components"] << " fixed components, "
        << a["lifting"] << " lift\n";
      for (const auto& r : a["rows"]) {
        std::string pt;
        for (const auto& x : r["point"]) pt += (pt.empty() ? "" : ", ") + x.get<std::string>();
        o << "    (" << pt << ") " << (r["lifts"].get<bool>() ? "lifts" : "does not lift");
        if (r.contains("obstruction")) {
          std::string ob;
          for (const auto& x : r["obstruction"]) ob += (ob.empty() ? "" : ", ") + x.get<std::string>();
          o << ", fiber translation (" << ob << ")";
        }
        o << "\n";
      }
    }
    if (ch.contains("lemma-injectivity")) o << "  lemma-injectivity: " << ch["lemma-injectivity"]["status"].get<std::string>() << "\n";
  }
  for (const auto& e : report["errors"]) o << "error: " << e["error"].get<std::string>() << "\n";
  const auto& sum = report["summary"];
  o << "summary: " << sum["specs"] << " specs, " << sum["passed"] << " passed, " << sum["failed"] << " failed, "
    << sum["hypothesis_not_met"] << " hypothesis not met, " << sum["input_errors"] << " input errors\n";
  return o.str();
}

}  // namespace nilsect
