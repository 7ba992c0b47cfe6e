#include "ghostcheck/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ghostcheck/acceptance.hpp"
#include "ghostcheck/error.hpp"
#include "ghostcheck/factory.hpp"
#include "ghostcheck/serialization.hpp"

namespace ghostcheck {

namespace {

struct Options {
  bool json = false;
  bool timing = false;
  std::string out_path;
  std::uint64_t seed = 1;
};

std::string human_verdict(Verdict v) {
  return v == Verdict::NotEventuallySmoothable ? "NOT eventually smoothable (obstruction fires)"
                                               : "inconclusive (obstruction vanishes)";
}

std::string braces(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "}";
}

std::string brackets(const QVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

unsigned thread_count() {
  const char* env = std::getenv("GHOSTCHECK_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) {
    throw Error(ErrorCode::InvalidInput, std::string("GHOSTCHECK_THREADS must be an integer in 1..256, got \"") +
                                             env + "\"");
  }
  return static_cast<unsigned>(v);
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidInput, opt.out_path + ": cannot open for writing");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json local_model_report(const LocalModelInput& lm, std::string& human) {
  const ResidueReport report = verify_residue_theorem(lm.G, lm.m, static_cast<int>(lm.G.size()));
  Json levels = Json::array();
  std::ostringstream h;
  h << "local model: m = " << lm.m << ", " << lm.G.size() << " coordinate(s)\n";
  for (const auto& level : report.trace.expansion.levels) {
    Json comps = Json::array();
    h << "level " << level.l << ": a = " << brackets(level.a) << "\n";
    for (const auto& c : level.components) {
      Json cj;
      cj["name"] = c.name;
      cj["pole_order"] = c.pole_order;
      cj["residue"] = to_json(c.residue);
      comps.push_back(std::move(cj));
      if (c.pole_order > 0) h << "  " << c.name << ": pole order " << c.pole_order << ", residue " << brackets(c.residue) << "\n";
    }
    Json lj;
    lj["l"] = level.l;
    lj["a"] = to_json(level.a);
    lj["components"] = std::move(comps);
    levels.push_back(std::move(lj));
  }
  Json out;
  out["m"] = lm.m;
  out["levels"] = std::move(levels);
  out["expected_residue"] = to_json(report.expected_residue);
  out["verdict"] = report.passed() ? "pass" : "fail";
  out["failures"] = report.failures;
  if (report.trace.failure) {
    const auto& f = *report.trace.failure;
    Json fj;
    fj["code"] = std::string(code_name(f.code));
    fj["level"] = f.level;
    fj["message"] = f.message;
    out["finding"] = std::move(fj);
    h << "finding: " << code_name(f.code) << " at level " << f.level << ": " << f.message << "\n";
  }
  h << "expected residue (x-linear coefficient of G(x,0,0)): " << brackets(report.expected_residue) << "\n";
  for (const auto& f : report.failures) h << "failure: " << f << "\n";
  h << "residue check: " << (report.passed() ? "pass" : "fail") << "\n";
  human = h.str();
  return out;
}

Json header() {
  Json j;
  j["tool"] = std::string(kToolName);
  j["version"] = std::string(kToolVersion);
  return j;
}

int cmd_check(const Options& opt, const std::string& path, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemFile file = problem_file_from_json(read_json_file(path));
  if (file.components.empty()) {
    throw Error(ErrorCode::InvalidInput, path + ": no obstruction problem found (use localmodel for local-model files)");
  }
  const unsigned threads = thread_count();

  Json report = header();
  Json comps = Json::array();
  std::ostringstream h;
  h << kToolName << " " << kToolVersion << "\n";
  bool fires = false;
  for (std::size_t i = 0; i < file.components.size(); ++i) {
    const ObstructionProblem prob = file.components[i].resolve();
    const TheoremVerdict tv = theorem_check(prob);
    fires = fires || tv.verdict == Verdict::NotEventuallySmoothable;

    Json cj;
    cj["index"] = i;
    if (file.components[i].name) cj["name"] = *file.components[i].name;
    cj["genus"] = prob.genus();
    cj["ambient_dim"] = prob.ambient_dim();
    cj["n"] = prob.size();
    Json tj = to_json(tv);
    h << "component " << i;
    if (file.components[i].name) h << " (" << *file.components[i].name << ")";
    h << ": genus " << prob.genus() << ", N = " << prob.ambient_dim() << ", n = " << prob.size() << "\n";
    h << "  theorem:   rank " << tv.rank << "/" << prob.size() << ", " << human_verdict(tv.verdict) << "\n";
    if (tv.kernel_witness) {
      const auto support = kernel_to_witness_D(prob, *tv.kernel_witness);
      tj["kernel_support"] = support;
      h << "    kernel witness " << brackets(*tv.kernel_witness) << ", support " << braces(support) << "\n";
    }
    cj["theorem"] = std::move(tj);

    try {
      const CorollaryVerdict cv = corollary_check(prob, threads);
      cj["corollary"] = to_json(cv);
      h << "  corollary: " << human_verdict(cv.verdict);
      if (cv.witness_D) h << ", witness D = " << braces(*cv.witness_D);
      h << "\n";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooManyPoints) throw;
      Json ej;
      ej["code"] = std::string(code_name(e.code()));
      ej["message"] = e.what();
      Json cj2;
      cj2["error"] = std::move(ej);
      cj["corollary"] = std::move(cj2);
      h << "  corollary: not run (" << e.what() << ")\n";
    }
    comps.push_back(std::move(cj));
  }
  const Verdict map_verdict = fires ? Verdict::NotEventuallySmoothable : Verdict::Inconclusive;
  report["components"] = std::move(comps);
  report["map_verdict"] = std::string(verdict_name(map_verdict));
  h << "map verdict: " << human_verdict(map_verdict) << "\n";

  if (file.local_model) {
    std::string lm_human;
    report["local_model"] = local_model_report(*file.local_model, lm_human);
    h << lm_human;
  }
  if (opt.timing) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = {{"seconds", secs}};
    h << "time: " << std::fixed << std::setprecision(3) << secs << " s\n";
  }
  emit(opt, out, opt.json ? dump(report) : h.str());
  return kExitOk;
}

int cmd_localmodel(const Options& opt, const std::string& path, std::ostream& out) {
  const ProblemFile file = problem_file_from_json(read_json_file(path));
  if (!file.local_model) throw Error(ErrorCode::InvalidInput, path + ": no local-model section");
  std::string human;
  Json report = header();
  const Json body = local_model_report(*file.local_model, human);
  for (const auto& [k, v] : body.items()) report[k] = v;
  emit(opt, out, opt.json ? dump(report) : human);
  return kExitOk;
}

int cmd_generate(const Options& opt, int N, int h, const std::string& model, bool raw, bool random, int g, int n,
                 int bound, std::ostream& out) {
  ProblemFile file;
  if (random) {
    if (g < 1 || N < 1 || n < 1 || bound < 1) {
      throw Error(ErrorCode::InvalidInput, "generate --random needs --g, --N, --n and --bound >= 1");
    }
    file.components.push_back({std::nullopt, random_instance(opt.seed, g, N, n, bound)});
  } else {
    ModelKind kind;
    if (model == "hyperelliptic") {
      kind = ModelKind::Hyperelliptic;
    } else if (model == "nodal_rational") {
      kind = ModelKind::NodalRational;
    } else {
      throw Error(ErrorCode::InvalidInput, "--model must be hyperelliptic or nodal_rational");
    }
    if (N < 2 || h < 2) throw Error(ErrorCode::InvalidInput, "generate needs --N >= 2 and --h >= 2");
    const CurveInstance inst = build_worked_example_curve_instance(N, h, kind);
    const std::string name = "N=" + std::to_string(N) + " h=" + std::to_string(h) + " " + model;
    if (raw) {
      file.components.push_back({name, problem_from_curve(inst.model, inst.points, inst.derivs)});
    } else {
      file.components.push_back({name, inst});
    }
  }
  emit(opt, out, dump(to_json(file)));
  return kExitOk;
}

int cmd_dims(const Options& opt, std::optional<int> N, std::optional<int> g, std::optional<int> d,
             const std::string& stratum_path, std::ostream& out) {
  std::optional<StratumSpec> spec;
  if (!stratum_path.empty()) {
    spec = stratum_from_json(read_json_file(stratum_path));
    auto agree = [&](const std::optional<int>& flag, int value, const char* label) {
      if (flag && *flag != value) {
        throw Error(ErrorCode::InvalidInput, std::string("--") + label + " = " + std::to_string(*flag) +
                                                 " disagrees with the stratum file (" + std::to_string(value) + ")");
      }
    };
    agree(N, spec->N, "N");
    agree(g, spec->g, "g");
    agree(d, spec->d, "d");
    N = spec->N;
    g = spec->g;
    d = spec->d;
  }
  if (!N || !g || !d) throw Error(ErrorCode::InvalidInput, "dims needs --N, --g and --d (or --stratum)");

  Json report = header();
  std::ostringstream h;
  const std::int64_t dm = dim_moduli(*N, *g, *d);
  report["N"] = *N;
  report["g"] = *g;
  report["d"] = *d;
  report["dim_moduli"] = dm;
  h << "dim M(N=" << *N << ", g=" << *g << ", d=" << *d << ") = " << dm << "\n";
  if (spec) {
    const std::int64_t ds = dim_stratum(*spec);
    Json sj = to_json(*spec);
    sj["dim_stratum"] = ds;
    sj["dim_moduli_plus_Nh_minus_n"] = dm + static_cast<std::int64_t>(spec->N) * spec->h - spec->n;
    report["stratum"] = std::move(sj);
    h << "dim stratum(h=" << spec->h << ", n=" << spec->n << ") = " << ds << " = dim M + N h - n = " << dm << " + "
      << spec->N * spec->h << " - " << spec->n << "\n";
  }
  emit(opt, out, opt.json ? dump(report) : h.str());
  return kExitOk;
}

int cmd_selftest(const Options& opt, std::ostream& out) {
  const auto results = run_acceptance(thread_count());
  if (opt.json) {
    Json report = header();
    Json items = Json::array();
    for (const auto& r : results) {
      Json j;
      j["id"] = r.id;
      j["name"] = r.name;
      j["passed"] = r.passed;
      j["detail"] = r.detail;
      j["budget_seconds"] = r.budget;
      if (opt.timing) j["seconds"] = r.seconds;
      items.push_back(std::move(j));
    }
    report["criteria"] = std::move(items);
    report["passed"] = all_passed(results);
    emit(opt, out, dump(report));
  } else {
    std::ostringstream s;
    print_acceptance(s, results, opt.timing);
    emit(opt, out, s.str());
  }
  return all_passed(results) ? kExitOk : kExitSelftestFailed;
}

void report_error(const Options& opt, std::ostream& out, std::ostream& err, std::string_view code,
                  const std::string& message) {
  err << "error [" << code << "]: " << message << "\n";
  if (opt.json) {
    Json j;
    j["error"] = {{"code", std::string(code)}, {"message", message}};
    out << dump(j);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact obstruction and local-model checks for ghost components of stable maps",
               std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolName) + " " + std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", opt.json, "Machine-readable JSON output only");
  app.add_flag("--timing", opt.timing, "Include wall-clock timings (output is then not byte-stable)");
  app.add_option("--out", opt.out_path, "Write the report to this file instead of stdout");
  app.add_option("--seed", opt.seed, "Seed for random generation");

  std::string check_path;
  auto* check = app.add_subcommand("check", "Run the theorem and corollary checks on a problem file");
  check->add_option("file", check_path, "Problem file (JSON)")->required();

  std::string lm_path;
  auto* localmodel = app.add_subcommand("localmodel", "Expand a ghost function and verify the residue formula");
  localmodel->add_option("file", lm_path, "File with {\"m\", \"G\"} or a \"local_model\" section")->required();

  int gen_N = 0, gen_h = 0, gen_g = 0, gen_n = 0, gen_bound = 3;
  std::string gen_model = "hyperelliptic";
  bool gen_raw = false, gen_random = false;
  auto* generate = app.add_subcommand("generate", "Write a problem file");
  generate->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  generate->add_option("--N", gen_N, "Ambient dimension");
  generate->add_option("--h", gen_h, "Ghost genus (structured family)");
  generate->add_option("--model", gen_model, "hyperelliptic or nodal_rational")
      ->check(CLI::IsMember({"hyperelliptic", "nodal_rational"}));
  generate->add_flag("--raw", gen_raw, "Write resolved (delta, deriv) columns instead of the curve model");
  generate->add_flag("--random", gen_random, "Random instance from --seed with --g, --N, --n");
  generate->add_option("--g", gen_g, "Genus (random instance)");
  generate->add_option("--n", gen_n, "Number of attachment points (random instance)");
  generate->add_option("--bound", gen_bound, "Entry bound (random instance)");

  std::optional<int> dims_N, dims_g, dims_d;
  std::string stratum_path;
  auto* dims = app.add_subcommand("dims", "Moduli and boundary stratum dimensions");
  dims->add_option("--N", dims_N, "Ambient dimension");
  dims->add_option("--g", dims_g, "Total genus");
  dims->add_option("--d", dims_d, "Total degree");
  dims->add_option("--stratum", stratum_path, "Stratum spec file {\"N\", \"h\", \"parts\": [[g_i, d_i], ...]}");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*check) return cmd_check(opt, check_path, out);
    if (*localmodel) return cmd_localmodel(opt, lm_path, out);
    if (*generate) return cmd_generate(opt, gen_N, gen_h, gen_model, gen_raw, gen_random, gen_g, gen_n, gen_bound, out);
    if (*dims) return cmd_dims(opt, dims_N, dims_g, dims_d, stratum_path, out);
    if (*selftest) return cmd_selftest(opt, out);
  } catch (const Error& e) {
    report_error(opt, out, err, code_name(e.code()), e.what());
    return e.code() == ErrorCode::InternalError ? kExitInternal : kExitBadInput;
  } catch (const std::exception& e) {
    report_error(opt, out, err, "InternalError", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace ghostcheck
