#include "ghostcheck/serialization.hpp"

#include <fstream>
#include <sstream>

#include "ghostcheck/error.hpp"

namespace ghostcheck {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::InvalidInput, path + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const std::string& path) {
  const Json& a = field(j, key, path);
  if (!a.is_array()) bad(path + "." + key, "expected an array");
  return a;
}

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1'000'000'000 || v > 1'000'000'000) bad(path, "integer out of range");
  return static_cast<int>(v);
}

int int_field(const Json& j, const char* key, const std::string& path) {
  return int_from_json(field(j, key, path), path + "." + key);
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// Wraps library errors raised while constructing validated types so that
// the message carries the JSON path.
template <typename F>
auto with_path(const std::string& path, F&& make) -> decltype(make()) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput && std::string_view(e.what()).starts_with("$")) throw;
    throw Error(ErrorCode::InvalidInput, path + ": " + std::string(code_name(e.code())) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) bad(path, "expected a rational string such as \"-3/4\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

QVector qvector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of rationals");
  QVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], idx(path, i)));
  return out;
}

Json to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json term;
    term["exps"] = e;
    term["coeff"] = c.str();
    out.push_back(std::move(term));
  }
  return out;
}

LaurentPoly laurent_from_json(const Json& j, const std::vector<std::string>& vars, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of {\"exps\", \"coeff\"} terms");
  LaurentPoly p(vars);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = idx(path, i);
    const Json& exps = array_field(j[i], "exps", at);
    if (exps.size() != vars.size()) {
      bad(at + ".exps", "expected " + std::to_string(vars.size()) + " exponents, got " + std::to_string(exps.size()));
    }
    Exponents e;
    for (std::size_t k = 0; k < exps.size(); ++k) e.push_back(int_from_json(exps[k], idx(at + ".exps", k)));
    p.add_term(e, rational_from_json(field(j[i], "coeff", at), at + ".coeff"));
  }
  return p;
}

Json to_json(const CurveModel& model) {
  Json out;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, HyperellipticModel>) {
          out["type"] = "hyperelliptic";
          out["genus"] = m.genus();
          out["f"] = to_json(m.f());
        } else if constexpr (std::is_same_v<M, NodalRationalModel>) {
          out["type"] = "nodal_rational";
          out["genus"] = m.genus();
          Json nodes = Json::array();
          for (const auto& [a, b] : m.node_pairs()) nodes.push_back(Json::array({a.str(), b.str()}));
          out["nodes"] = std::move(nodes);
        } else {
          out["type"] = "raw";
          out["genus"] = m.genus();
          Json rows = Json::array();
          for (std::size_t r = 0; r < m.ev_matrix().rows(); ++r) rows.push_back(to_json(m.ev_matrix().row(r)));
          out["ev_matrix"] = std::move(rows);
        }
      },
      model);
  return out;
}

CurveModel curve_model_from_json(const Json& j, const std::string& path) {
  const Json& type = field(j, "type", path);
  if (!type.is_string()) bad(path + ".type", "expected a string");
  const std::string kind = type.get<std::string>();
  const int g = int_field(j, "genus", path);

  if (kind == "hyperelliptic") {
    QVector f = qvector_from_json(field(j, "f", path), path + ".f");
    return with_path(path, [&]() -> CurveModel { return HyperellipticModel(g, std::move(f)); });
  }
  if (kind == "nodal_rational") {
    const Json& nodes = array_field(j, "nodes", path);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::string at = idx(path + ".nodes", i);
      if (!nodes[i].is_array() || nodes[i].size() != 2) bad(at, "expected a pair [a, b]");
      pairs.emplace_back(rational_from_json(nodes[i][0], at + "[0]"), rational_from_json(nodes[i][1], at + "[1]"));
    }
    return with_path(path, [&]() -> CurveModel { return NodalRationalModel(g, std::move(pairs)); });
  }
  if (kind == "raw") {
    const Json& rows = array_field(j, "ev_matrix", path);
    std::vector<QVector> data;
    for (std::size_t r = 0; r < rows.size(); ++r) data.push_back(qvector_from_json(rows[r], idx(path + ".ev_matrix", r)));
    return with_path(path, [&]() -> CurveModel { return RawEvaluationModel(g, QMatrix::from_rows(data)); });
  }
  bad(path + ".type", "unknown curve model \"" + kind + "\" (expected hyperelliptic, nodal_rational or raw)");
}

Json to_json(const AttachmentPoint& p) {
  Json out;
  if (const auto* h = std::get_if<HyperellipticPoint>(&p)) {
    out["x"] = h->x.str();
    out["y"] = h->y.str();
  } else if (const auto* l = std::get_if<LinePoint>(&p)) {
    out["p"] = l->p.str();
  } else {
    out["index"] = std::get<PointIndex>(p).index;
  }
  return out;
}

AttachmentPoint attachment_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an attachment point object");
  if (j.contains("x") || j.contains("y")) {
    return HyperellipticPoint{rational_from_json(field(j, "x", path), path + ".x"),
                              rational_from_json(field(j, "y", path), path + ".y")};
  }
  if (j.contains("p")) return LinePoint{rational_from_json(j["p"], path + ".p")};
  if (j.contains("index")) {
    const int i = int_from_json(j["index"], path + ".index");
    if (i < 0) bad(path + ".index", "must be >= 0");
    return PointIndex{static_cast<std::size_t>(i)};
  }
  bad(path, "expected {\"x\",\"y\"}, {\"p\"} or {\"index\"}");
}

Json to_json(const ObstructionProblem& prob) {
  Json out;
  out["genus"] = prob.genus();
  out["ambient_dim"] = prob.ambient_dim();
  Json points = Json::array();
  for (const auto& c : prob.columns()) {
    Json p;
    p["delta"] = to_json(c.delta);
    p["deriv"] = to_json(c.deriv);
    points.push_back(std::move(p));
  }
  out["points"] = std::move(points);
  return out;
}

ObstructionProblem problem_from_json(const Json& j, const std::string& path) {
  const int g = int_field(j, "genus", path);
  const int N = int_field(j, "ambient_dim", path);
  const Json& points = array_field(j, "points", path);
  std::vector<ObstructionColumn> columns;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string at = idx(path + ".points", i);
    QVector delta = qvector_from_json(field(points[i], "delta", at), at + ".delta");
    QVector deriv = qvector_from_json(field(points[i], "deriv", at), at + ".deriv");
    if (delta.size() != static_cast<std::size_t>(g)) {
      bad(at + ".delta", "has length " + std::to_string(delta.size()) + ", expected genus " + std::to_string(g));
    }
    if (deriv.size() != static_cast<std::size_t>(N)) {
      bad(at + ".deriv", "has length " + std::to_string(deriv.size()) + ", expected ambient_dim " + std::to_string(N));
    }
    columns.push_back({std::move(delta), std::move(deriv)});
  }
  return with_path(path, [&] { return ObstructionProblem(g, N, std::move(columns)); });
}

Json to_json(const CurveInstance& inst) {
  Json out;
  out["curve_model"] = to_json(inst.model);
  Json points = Json::array();
  for (const auto& p : inst.points) points.push_back(to_json(p));
  out["attachments"] = std::move(points);
  Json derivs = Json::array();
  for (const auto& d : inst.derivs) derivs.push_back(to_json(d));
  out["derivs"] = std::move(derivs);
  return out;
}

CurveInstance curve_instance_from_json(const Json& j, const std::string& path) {
  CurveInstance inst{curve_model_from_json(field(j, "curve_model", path), path + ".curve_model"), {}, {}};
  const Json& points = array_field(j, "attachments", path);
  for (std::size_t i = 0; i < points.size(); ++i)
    inst.points.push_back(attachment_from_json(points[i], idx(path + ".attachments", i)));
  const Json& derivs = array_field(j, "derivs", path);
  for (std::size_t i = 0; i < derivs.size(); ++i)
    inst.derivs.push_back(qvector_from_json(derivs[i], idx(path + ".derivs", i)));
  if (inst.points.size() != inst.derivs.size()) {
    bad(path, std::to_string(inst.points.size()) + " attachments but " + std::to_string(inst.derivs.size()) +
                  " derivative vectors");
  }
  // Resolve once so that bad points are reported with their path.
  with_path(path, [&] { return problem_from_curve(inst.model, inst.points, inst.derivs); });
  return inst;
}

Json to_json(const LocalModelInput& lm) {
  Json out;
  out["m"] = lm.m;
  Json g = Json::array();
  for (const auto& p : lm.G) g.push_back(to_json(p));
  out["G"] = std::move(g);
  return out;
}

LocalModelInput local_model_from_json(const Json& j, const std::string& path) {
  LocalModelInput lm;
  lm.m = int_field(j, "m", path);
  if (lm.m < 1) bad(path + ".m", "must be >= 1");
  const Json& g = array_field(j, "G", path);
  if (g.empty()) bad(path + ".G", "needs at least one coordinate");
  for (std::size_t k = 0; k < g.size(); ++k) lm.G.push_back(laurent_from_json(g[k], surface_vars(), idx(path + ".G", k)));
  return lm;
}

ObstructionProblem ProblemComponent::resolve() const {
  if (const auto* p = std::get_if<ObstructionProblem>(&source)) return *p;
  const auto& inst = std::get<CurveInstance>(source);
  return problem_from_curve(inst.model, inst.points, inst.derivs);
}

namespace {

ProblemComponent component_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected a problem object");
  std::optional<std::string> name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) bad(path + ".name", "expected a string");
    name = j["name"].get<std::string>();
  }
  if (j.contains("curve_model")) return {name, curve_instance_from_json(j, path)};
  if (j.contains("points")) return {name, problem_from_json(j, path)};
  bad(path, "expected either \"points\" or \"curve_model\"");
}

}  // namespace

ProblemFile problem_file_from_json(const Json& j) {
  if (!j.is_object()) bad("$", "expected a JSON object");
  ProblemFile file;
  if (j.contains("version")) {
    file.version = int_from_json(j["version"], "$.version");
    if (file.version != kProblemFileVersion) {
      bad("$.version", "unsupported version " + std::to_string(file.version));
    }
  }
  if (j.contains("components")) {
    const Json& comps = array_field(j, "components", "$");
    if (comps.empty()) bad("$.components", "needs at least one component");
    for (std::size_t i = 0; i < comps.size(); ++i) file.components.push_back(component_from_json(comps[i], idx("$.components", i)));
  } else if (j.contains("points") || j.contains("curve_model")) {
    file.components.push_back(component_from_json(j, "$"));
  }
  if (j.contains("local_model")) {
    file.local_model = local_model_from_json(j["local_model"], "$.local_model");
  } else if (j.contains("G")) {
    file.local_model = local_model_from_json(j, "$");
  }
  if (file.components.empty() && !file.local_model) {
    bad("$", "no obstruction problem and no local-model section found");
  }
  return file;
}

Json to_json(const ProblemFile& file) {
  Json out;
  out["version"] = file.version;
  Json comps = Json::array();
  for (const auto& c : file.components) {
    Json body = std::visit([](const auto& s) { return to_json(s); }, c.source);
    Json entry;
    if (c.name) entry["name"] = *c.name;
    for (auto& [k, v] : body.items()) entry[k] = v;
    comps.push_back(std::move(entry));
  }
  if (!file.components.empty()) out["components"] = std::move(comps);
  if (file.local_model) out["local_model"] = to_json(*file.local_model);
  return out;
}

Json parse_json_text(std::string_view text, const std::string& source_name) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::InvalidInput, source_name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                             ": malformed JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

Json to_json(const TheoremVerdict& v) {
  Json out;
  out["verdict"] = std::string(verdict_name(v.verdict));
  out["rank"] = v.rank;
  out["kernel_witness"] = v.kernel_witness ? to_json(*v.kernel_witness) : Json(nullptr);
  return out;
}

Json to_json(const CorollaryVerdict& v) {
  Json out;
  out["verdict"] = std::string(verdict_name(v.verdict));
  out["witness_D"] = v.witness_D ? Json(*v.witness_D) : Json(nullptr);
  return out;
}

Json to_json(const StratumSpec& spec) {
  Json out;
  out["N"] = spec.N;
  out["g"] = spec.g;
  out["d"] = spec.d;
  out["h"] = spec.h;
  out["n"] = spec.n;
  Json parts = Json::array();
  for (const auto& [gi, di] : spec.parts) parts.push_back(Json::array({gi, di}));
  out["parts"] = std::move(parts);
  return out;
}

StratumSpec stratum_from_json(const Json& j, const std::string& path) {
  const int N = int_field(j, "N", path);
  const int h = int_field(j, "h", path);
  const Json& parts = array_field(j, "parts", path);
  std::vector<std::pair<int, int>> pv;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string at = idx(path + ".parts", i);
    if (!parts[i].is_array() || parts[i].size() != 2) bad(at, "expected a pair [g_i, d_i]");
    pv.emplace_back(int_from_json(parts[i][0], at + "[0]"), int_from_json(parts[i][1], at + "[1]"));
  }
  StratumSpec spec = make_stratum(N, h, std::move(pv));
  // Declared totals, when present, must agree with the parts.
  if (j.contains("g")) spec.g = int_from_json(j["g"], path + ".g");
  if (j.contains("d")) spec.d = int_from_json(j["d"], path + ".d");
  if (j.contains("n")) spec.n = int_from_json(j["n"], path + ".n");
  with_path(path, [&] {
    validate(spec);
    return 0;
  });
  return spec;
}

}  // namespace ghostcheck
