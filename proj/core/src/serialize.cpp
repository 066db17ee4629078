#include "orbitlab/serialize.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits "name(arg1=..., arg2=...)" into the name and a key -> raw-value map,
// respecting bracket nesting inside values.
struct Term {
  std::string name;
  std::map<std::string, std::string> args;
};

Term parse_term(const std::string& text) {
  const std::string s = trim(text);
  Term t;
  const auto open = s.find('(');
  if (open == std::string::npos) {
    t.name = s;
    return t;
  }
  if (s.back() != ')') throw ConfigError("unbalanced parentheses in term: " + s);
  t.name = trim(s.substr(0, open));
  const std::string inner = s.substr(open + 1, s.size() - open - 2);

  int depth = 0;
  std::string current;
  std::vector<std::string> parts;
  for (char c : inner) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!trim(current).empty()) parts.push_back(current);
  for (const auto& part : parts) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value in term: " + part);
    t.args[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  return t;
}

int arg_int(const Term& t, const std::string& key) {
  const auto it = t.args.find(key);
  if (it == t.args.end()) throw ConfigError("term " + t.name + " missing key '" + key + "'");
  return std::stoi(it->second);
}

double arg_double(const Term& t, const std::string& key) {
  const auto it = t.args.find(key);
  if (it == t.args.end()) throw ConfigError("term " + t.name + " missing key '" + key + "'");
  return std::stod(it->second);
}

std::string arg_str(const Term& t, const std::string& key) {
  const auto it = t.args.find(key);
  if (it == t.args.end()) throw ConfigError("term " + t.name + " missing key '" + key + "'");
  return it->second;
}

bool has_arg(const Term& t, const std::string& key) { return t.args.count(key) > 0; }

std::vector<double> parse_number_list(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigError("expected a [..] list, got: " + raw);
  }
  s = s.substr(1, s.size() - 2);
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

Eigen::MatrixXd parse_matrix(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigError("expected a [..] matrix, got: " + raw);
  }
  s = s.substr(1, s.size() - 2);
  std::vector<std::vector<double>> rows;
  std::istringstream rows_in(s);
  std::string row;
  while (std::getline(rows_in, row, ';')) {
    std::istringstream in(row);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    if (!values.empty()) rows.push_back(values);
  }
  if (rows.empty()) throw ConfigError("empty matrix literal");
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ConfigError("ragged matrix literal");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Eigen::MatrixXd> parse_matrix_list(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigError("expected a [..] list of matrices");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<Eigen::MatrixXd> out;
  int depth = 0;
  std::string current;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    current += c;
    if (depth == 0 && c == ']') {
      out.push_back(parse_matrix(current));
      current.clear();
    } else if (depth == 0 && c == ',') {
      current.clear();
    }
  }
  return out;
}

ReflectionFamily parse_family(const std::string& name) {
  if (name == "A") return ReflectionFamily::A;
  if (name == "B") return ReflectionFamily::B;
  if (name == "I2") return ReflectionFamily::I2;
  throw ConfigError("unknown reflection family: " + name);
}

WallpaperSignature parse_signature(const std::string& name) {
  if (name == "o-rect") return WallpaperSignature::ORect;
  if (name == "**") return WallpaperSignature::StarStar;
  if (name == "2*22") return WallpaperSignature::TwoStar22;
  if (name == "4*2") return WallpaperSignature::FourStar2;
  if (name == "xx") return WallpaperSignature::XX;
  throw UnsupportedSignature(name);
}

int reflection_label(const Term& t) {
  if (has_arg(t, "n")) return arg_int(t, "n");
  if (has_arg(t, "m")) return arg_int(t, "m");
  throw ConfigError("reflection term needs n= or m=");
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Action specs

GroupActionSpec parse_action_spec(const std::string& text) {
  const Term t = parse_term(text);
  if (t.name == "scalar_cyclic")
    return GroupActionSpec(ScalarCyclic{arg_int(t, "r"), arg_int(t, "n")});
  if (t.name == "circle_scalar") return GroupActionSpec(CircleScalar{arg_int(t, "n")});
  if (t.name == "finite_linear") {
    FiniteLinear fl;
    fl.dim = arg_int(t, "dim");
    fl.elements = parse_matrix_list(arg_str(t, "elements"));
    return GroupActionSpec(std::move(fl));
  }
  if (t.name == "orthogonal_left")
    return GroupActionSpec(OrthogonalLeft{arg_int(t, "r"), arg_int(t, "n")});
  if (t.name == "special_orthogonal_left")
    return GroupActionSpec(SpecialOrthogonalLeft{arg_int(t, "r"), arg_int(t, "n")});
  if (t.name == "unitary_left")
    return GroupActionSpec(UnitaryLeft{arg_int(t, "r"), arg_int(t, "n")});
  if (t.name == "permute_columns")
    return GroupActionSpec(PermuteColumns{arg_int(t, "d"), arg_int(t, "n")});
  if (t.name == "euclidean_diag")
    return GroupActionSpec(EuclideanDiag{arg_int(t, "r"), arg_int(t, "n")});
  if (t.name == "special_euclidean_diag")
    return GroupActionSpec(SpecialEuclideanDiag{arg_int(t, "r"), arg_int(t, "n")});
  if (t.name == "reflection")
    return GroupActionSpec(ReflectionGroup{parse_family(arg_str(t, "family")),
                                           reflection_label(t)});
  if (t.name == "alternating_reflection")
    return GroupActionSpec(AlternatingReflection{parse_family(arg_str(t, "family")),
                                                 reflection_label(t)});
  if (t.name == "wallpaper")
    return GroupActionSpec(Wallpaper{parse_signature(arg_str(t, "sig")),
                                     arg_double(t, "a"), arg_double(t, "b")});
  if (t.name == "rect_torus") {
    return GroupActionSpec(RectTorus{parse_number_list(arg_str(t, "lengths"))});
  }
  throw ConfigError("unknown action family: " + t.name);
}

std::string serialize_action_spec(const GroupActionSpec& spec) {
  if (const auto* sc = spec.get_if<ScalarCyclic>())
    return "scalar_cyclic(r=" + std::to_string(sc->order) + ",n=" + std::to_string(sc->n) + ")";
  if (const auto* cs = spec.get_if<CircleScalar>())
    return "circle_scalar(n=" + std::to_string(cs->n) + ")";
  if (const auto* fl = spec.get_if<FiniteLinear>()) {
    std::string out = "finite_linear(dim=" + std::to_string(fl->dim) + ",elements=[";
    for (std::size_t k = 0; k < fl->elements.size(); ++k) {
      if (k) out += ",";
      out += "[";
      const auto& m = fl->elements[k];
      for (int i = 0; i < m.rows(); ++i) {
        if (i) out += ";";
        for (int j = 0; j < m.cols(); ++j) {
          if (j) out += " ";
          out += format_double(m(i, j));
        }
      }
      out += "]";
    }
    return out + "])";
  }
  if (const auto* ol = spec.get_if<OrthogonalLeft>())
    return "orthogonal_left(r=" + std::to_string(ol->r) + ",n=" + std::to_string(ol->n) + ")";
  if (const auto* so = spec.get_if<SpecialOrthogonalLeft>())
    return "special_orthogonal_left(r=" + std::to_string(so->r) + ",n=" +
           std::to_string(so->n) + ")";
  if (const auto* ul = spec.get_if<UnitaryLeft>())
    return "unitary_left(r=" + std::to_string(ul->r) + ",n=" + std::to_string(ul->n) + ")";
  if (const auto* pc = spec.get_if<PermuteColumns>())
    return "permute_columns(d=" + std::to_string(pc->d) + ",n=" + std::to_string(pc->n) + ")";
  if (const auto* ed = spec.get_if<EuclideanDiag>())
    return "euclidean_diag(r=" + std::to_string(ed->r) + ",n=" + std::to_string(ed->n) + ")";
  if (const auto* se = spec.get_if<SpecialEuclideanDiag>())
    return "special_euclidean_diag(r=" + std::to_string(se->r) + ",n=" +
           std::to_string(se->n) + ")";
  if (const auto* rg = spec.get_if<ReflectionGroup>())
    return "reflection(family=" + reflection_family_name(rg->family) +
           ",n=" + std::to_string(rg->n) + ")";
  if (const auto* ar = spec.get_if<AlternatingReflection>())
    return "alternating_reflection(family=" + reflection_family_name(ar->family) +
           ",n=" + std::to_string(ar->n) + ")";
  if (const auto* w = spec.get_if<Wallpaper>())
    return "wallpaper(sig=" + wallpaper_signature_name(w->signature) +
           ",a=" + format_double(w->a) + ",b=" + format_double(w->b) + ")";
  const auto* t = spec.get_if<RectTorus>();
  std::string out = "rect_torus(lengths=[";
  for (std::size_t i = 0; i < t->lengths.size(); ++i) {
    if (i) out += ",";
    out += format_double(t->lengths[i]);
  }
  return out + "])";
}

// ---------------------------------------------------------------------------
// Configs

namespace {

std::map<std::string, std::string> parse_kv_block(const std::string& text,
                                                  const std::vector<std::string>& allowed) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool ok = false;
    for (const auto& a : allowed) {
      if (key == a) { ok = true; break; }
    }
    if (!ok) throw ConfigError("unknown key '" + key + "'");
    if (kv.count(key)) throw ConfigError("duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

const std::vector<std::string> kConfigKeys = {
    "label", "action", "embedding", "pairs",  "mix",
    "restarts", "seed",   "scale",     "out_json", "out_csv", "out_dump"};

MixWeights parse_mix(const std::string& raw) {
  std::istringstream in(raw);
  MixWeights mix{};
  if (!(in >> mix.independent >> mix.near_diagonal >> mix.near_orbit)) {
    throw ConfigError("mix needs three weights");
  }
  return mix;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  const auto kv = parse_kv_block(text, kConfigKeys);
  ExperimentConfig cfg;
  auto need = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
  };
  cfg.label = need("label");
  cfg.action = need("action");
  cfg.embedding = need("embedding");
  cfg.pairs = std::stoull(need("pairs"));
  cfg.seed = std::stoull(need("seed"));
  if (kv.count("mix")) cfg.mix = parse_mix(kv.at("mix"));
  if (kv.count("restarts")) cfg.restarts = std::stoi(kv.at("restarts"));
  if (kv.count("scale")) cfg.scale = std::stod(kv.at("scale"));
  if (kv.count("out_json")) cfg.out_json = kv.at("out_json");
  if (kv.count("out_csv")) cfg.out_csv = kv.at("out_csv");
  if (kv.count("out_dump")) cfg.out_dump = kv.at("out_dump");
  // validate the structured terms eagerly so config errors surface here
  const GroupActionSpec action = parse_action_spec(cfg.action);
  build_embedding(cfg.embedding, action);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "label = " << cfg.label << "\n";
  out << "action = " << cfg.action << "\n";
  out << "embedding = " << cfg.embedding << "\n";
  out << "pairs = " << cfg.pairs << "\n";
  out << "mix = " << format_double(cfg.mix.independent) << " "
      << format_double(cfg.mix.near_diagonal) << " "
      << format_double(cfg.mix.near_orbit) << "\n";
  out << "restarts = " << cfg.restarts << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "scale = " << format_double(cfg.scale) << "\n";
  if (!cfg.out_json.empty()) out << "out_json = " << cfg.out_json << "\n";
  if (!cfg.out_csv.empty()) out << "out_csv = " << cfg.out_csv << "\n";
  if (!cfg.out_dump.empty()) out << "out_dump = " << cfg.out_dump << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Embedding resolution

EmbeddingHandle build_embedding(const std::string& embedding_term,
                                const GroupActionSpec& action) {
  const Term t = parse_term(embedding_term);
  const Ambient amb = action.ambient();
  auto require = [&](bool ok, const std::string& why) {
    if (!ok) throw ConfigError("embedding '" + t.name + "' incompatible with action " +
                               action.describe() + ": " + why);
  };

  if (t.name == "identity") return make_identity_handle(amb);
  if (t.name == "real_antipodal") {
    require(amb.kind == AmbientKind::RealVec, "needs a real vector ambient");
    return make_real_antipodal_handle(amb.rows);
  }
  if (t.name == "complex_phase") {
    require(amb.kind == AmbientKind::CplxVec, "needs a complex vector ambient");
    return make_complex_phase_handle(amb.rows);
  }
  if (t.name == "scalar_cyclic") {
    require(amb.kind == AmbientKind::CplxVec, "needs a complex vector ambient");
    int r = 0;
    if (has_arg(t, "r")) {
      r = arg_int(t, "r");
    } else if (const auto* sc = action.get_if<ScalarCyclic>()) {
      r = sc->order;
    } else {
      throw ConfigError("scalar_cyclic embedding needs r=");
    }
    return make_scalar_cyclic_handle(r, amb.rows);
  }
  if (t.name == "gram_sqrt") {
    require(amb.kind == AmbientKind::RealMat, "needs a real matrix ambient");
    return make_gram_sqrt_handle(amb.rows, amb.cols);
  }
  if (t.name == "special_orthogonal") {
    require(amb.kind == AmbientKind::RealMat, "needs a real matrix ambient");
    return make_special_orthogonal_handle(amb.rows, amb.cols);
  }
  if (t.name == "chamber") {
    if (const auto* rg = action.get_if<ReflectionGroup>()) {
      return make_chamber_handle(rg->family, rg->n);
    }
    throw ConfigError("chamber embedding needs a reflection action");
  }
  if (t.name == "alternating_reflection") {
    if (const auto* ar = action.get_if<AlternatingReflection>()) {
      return make_alternating_reflection_handle(ar->family, ar->n);
    }
    throw ConfigError("alternating_reflection embedding needs an alternating action");
  }
  if (t.name == "circle_arc") {
    const auto* torus = action.get_if<RectTorus>();
    require(torus && torus->lengths.size() == 1, "needs a 1-d torus action");
    return make_circle_arc_handle(torus->lengths[0]);
  }
  if (t.name == "rect_torus") {
    const auto* torus = action.get_if<RectTorus>();
    require(torus != nullptr, "needs a torus action");
    return make_rect_torus_handle(torus->lengths);
  }
  if (t.name == "wallpaper") {
    const auto* w = action.get_if<Wallpaper>();
    require(w != nullptr, "needs a wallpaper action");
    return make_wallpaper_handle(*w);
  }
  if (t.name == "landmarks") {
    if (const auto* ed = action.get_if<EuclideanDiag>()) {
      return make_landmarks_handle(EuclideanKind::E, ed->r, ed->n);
    }
    if (const auto* se = action.get_if<SpecialEuclideanDiag>()) {
      return make_landmarks_handle(EuclideanKind::SE, se->r, se->n);
    }
    throw ConfigError("landmarks embedding needs a Euclidean diagonal action");
  }
  if (t.name == "max_filter_bank") {
    require(action.is_finite(), "needs a finite action");
    const int count = has_arg(t, "count") ? arg_int(t, "count") : 2 * amb.real_dim();
    const std::uint64_t seed = has_arg(t, "seed") ? std::stoull(arg_str(t, "seed")) : 7;
    return max_filter_bank(action, count, seed);
  }
  throw ConfigError("unknown embedding: " + t.name);
}

// ---------------------------------------------------------------------------
// Suites

std::vector<SuiteEntry> parse_suite(const std::string& text) {
  std::vector<std::string> blocks;
  std::string current;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string stripped = line;
    const auto hash = stripped.find('#');
    if (hash != std::string::npos) stripped = stripped.substr(0, hash);
    if (trim(stripped).empty()) {
      if (!trim(current).empty()) blocks.push_back(current);
      current.clear();
    } else {
      current += stripped + "\n";
    }
  }
  if (!trim(current).empty()) blocks.push_back(current);

  const std::vector<std::string> keys = {"label", "action", "embedding", "pairs",
                                         "restarts", "seed", "claim"};
  std::vector<SuiteEntry> entries;
  for (const auto& block : blocks) {
    const auto kv = parse_kv_block(block, keys);
    SuiteEntry e;
    auto need = [&](const std::string& key) {
      const auto it = kv.find(key);
      if (it == kv.end()) throw ConfigError("suite entry missing key '" + key + "'");
      return it->second;
    };
    e.label = need("label");
    e.action = need("action");
    e.embedding = need("embedding");
    if (kv.count("pairs")) e.pairs = std::stoull(kv.at("pairs"));
    if (kv.count("restarts")) e.restarts = std::stoi(kv.at("restarts"));
    if (kv.count("seed")) e.seed = std::stoull(kv.at("seed"));
    if (kv.count("claim")) e.claim = kv.at("claim");
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<SuiteEntry> load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open suite: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_suite(buffer.str());
}

// ---------------------------------------------------------------------------
// Reports

namespace {

ordered_json point_to_json(const Point& p) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < p.data.size(); ++i) arr.push_back(p.data[i]);
  return arr;
}

ordered_json witness_to_json(const WitnessPair& w) {
  ordered_json j;
  j["x"] = point_to_json(w.x);
  j["y"] = point_to_json(w.y);
  j["ratio"] = w.ratio;
  return j;
}

}  // namespace

std::string report_to_json(const std::string& label, const DistortionReport& report,
                           double claim) {
  ordered_json j;
  j["label"] = label;
  j["claim"] = claim;
  j["alpha_hat"] = report.alpha_hat;
  j["beta_hat"] = report.beta_hat;
  j["kappa_hat"] = report.kappa_hat;
  j["n_pairs"] = report.n_pairs;
  j["seed"] = report.seed;
  ordered_json witnesses;
  if (report.witness_min) witnesses["min"] = witness_to_json(*report.witness_min);
  if (report.witness_max) witnesses["max"] = witness_to_json(*report.witness_max);
  j["witnesses"] = witnesses;
  ordered_json violations = ordered_json::array();
  for (const auto& v : report.violations) {
    ordered_json vj;
    vj["x"] = point_to_json(v.x);
    vj["y"] = point_to_json(v.y);
    vj["quotient_distance"] = v.quotient_distance;
    vj["embedded_distance"] = v.embedded_distance;
    vj["claimed_bound"] = v.claimed_bound;
    vj["side"] = v.side;
    violations.push_back(vj);
  }
  j["violations"] = violations;
  j["runtime_seconds"] = report.runtime_seconds;
  return j.dump(2) + "\n";
}

std::string report_csv_header() {
  return "label,alpha_hat,beta_hat,kappa_hat,n_pairs,seed,violations,runtime_seconds\n";
}

std::string report_to_csv_row(const std::string& label, const DistortionReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << label << "," << report.alpha_hat << "," << report.beta_hat << ","
      << report.kappa_hat << "," << report.n_pairs << "," << report.seed << ","
      << report.violations.size() << "," << report.runtime_seconds << "\n";
  return out.str();
}

ReportSummary summarize_report_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  if (!j.is_object() || !j.contains("kappa_hat")) {
    throw IoError("not a distortion report (expected an object with kappa_hat)");
  }
  ReportSummary s;
  s.label = j.value("label", "");
  s.kappa_hat = j.value("kappa_hat", 0.0);
  s.claim = j.value("claim", 0.0);
  if (s.claim > 0.0) s.margin = s.claim - s.kappa_hat;
  return s;
}

std::string render_kappa_svg(const std::vector<ReportSummary>& rows) {
  const int bar_h = 22, gap = 8, left = 180, width = 640, top = 30;
  double max_kappa = 1.0;
  for (const auto& r : rows) max_kappa = std::max(max_kappa, r.kappa_hat);
  const double axis_max = 1.1 * max_kappa;
  const double axis_min = 1.0;
  const int height = top + static_cast<int>(rows.size()) * (bar_h + gap) + 40;

  auto x_of = [&](double v) {
    const double frac = (v - axis_min) / std::max(axis_max - axis_min, 1e-12);
    return left + frac * (width - left - 20);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<text x=\"10\" y=\"18\" font-size=\"13\">empirical distortion vs claims "
         "(axis [1, "
      << axis_max << "])</text>\n";
  int y = top;
  for (const auto& r : rows) {
    svg << "<text x=\"4\" y=\"" << y + bar_h - 6 << "\" font-size=\"12\">" << r.label
        << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\""
        << std::max(1.0, x_of(r.kappa_hat) - left) << "\" height=\"" << bar_h
        << "\" fill=\"#4477aa\"/>\n";
    if (r.claim > 0.0) {
      const double cx = x_of(r.claim);
      svg << "<line x1=\"" << cx << "\" y1=\"" << y - 2 << "\" x2=\"" << cx
          << "\" y2=\"" << y + bar_h + 2 << "\" stroke=\"#cc3311\" stroke-width=\"2\"/>\n";
    }
    y += bar_h + gap;
  }
  svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << width - 20
      << "\" y2=\"" << y << "\" stroke=\"#000\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------
// Embedded-vector dumps

namespace {

constexpr char kDumpMagic[8] = {'O', 'L', 'E', 'M', 'B', 'E', 'D', '\0'};

template <typename T>
void write_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char*>(bytes), sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_embedding_dump(std::ostream& out, const std::vector<Eigen::VectorXd>& rows) {
  out.write(kDumpMagic, sizeof(kDumpMagic));
  write_le<std::uint32_t>(out, 1);
  const std::uint32_t dim = rows.empty() ? 0 : static_cast<std::uint32_t>(rows[0].size());
  write_le<std::uint32_t>(out, dim);
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(rows.size()));
  for (const auto& r : rows) {
    if (static_cast<std::uint32_t>(r.size()) != dim)
      throw IoError("embedding dump rows must share one dimension");
    for (int i = 0; i < r.size(); ++i) write_le<double>(out, r[i]);
  }
}

std::vector<Eigen::VectorXd> read_embedding_dump(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kDumpMagic, sizeof(magic)) != 0)
    throw IoError("bad embedding dump magic");
  const auto version = read_le<std::uint32_t>(in);
  if (version != 1) throw IoError("unsupported embedding dump version");
  const auto dim = read_le<std::uint32_t>(in);
  const auto count = read_le<std::uint64_t>(in);
  std::vector<Eigen::VectorXd> rows(count, Eigen::VectorXd(dim));
  for (auto& r : rows) {
    for (std::uint32_t i = 0; i < dim; ++i) r[i] = read_le<double>(in);
  }
  if (!in) throw IoError("truncated embedding dump");
  return rows;
}

std::string embeddings_to_csv(const std::vector<Eigen::VectorXd>& rows) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& r : rows) {
    for (int i = 0; i < r.size(); ++i) {
      if (i) out << ",";
      out << r[i];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace orbitlab
