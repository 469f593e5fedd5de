#include "ratlyap/serialize.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ratlyap {

using nlohmann::json;

namespace {

json poly_to_obj(const HomogPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"exps", m.exponents()}, {"coeff", c}});
  }
  return {{"n", p.dimension()}, {"degree", p.degree()}, {"terms", terms}};
}

HomogPoly poly_from_obj(const json& obj) {
  HomogPoly p(obj.at("n").get<int>(), obj.at("degree").get<int>());
  for (const auto& t : obj.at("terms")) {
    p.add_term(Monomial(t.at("exps").get<std::vector<int>>()),
               t.at("coeff").get<double>());
  }
  return p;
}

json field_to_obj(const VectorField& f) {
  json comps = json::array();
  for (const auto& parts : f.components()) {
    json entry = json::array();
    for (const auto& p : parts) entry.push_back(poly_to_obj(p));
    comps.push_back(entry);
  }
  json obj = {{"n", f.dimension()}, {"components", comps}};
  if (f.declared_degree()) obj["declared_degree"] = *f.declared_degree();
  return obj;
}

VectorField field_from_obj(const json& obj) {
  const int n = obj.at("n").get<int>();
  std::vector<std::vector<HomogPoly>> comps;
  for (const auto& entry : obj.at("components")) {
    std::vector<HomogPoly> parts;
    if (entry.is_array()) {
      for (const auto& p : entry) parts.push_back(poly_from_obj(p));
    } else {
      parts.push_back(poly_from_obj(entry));
    }
    comps.push_back(std::move(parts));
  }
  std::optional<int> declared;
  if (obj.contains("declared_degree")) {
    declared = obj.at("declared_degree").get<int>();
  }
  return VectorField(n, std::move(comps), declared);
}

json sym_to_obj(const Eigen::MatrixXd& X) {
  const int k = static_cast<int>(X.rows());
  std::vector<double> upper;
  upper.reserve(static_cast<size_t>(k * (k + 1) / 2));
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) upper.push_back(X(i, j));
  }
  return {{"size", k}, {"upper", upper}};
}

Eigen::MatrixXd sym_from_obj(const json& obj) {
  const int k = obj.at("size").get<int>();
  const auto upper = obj.at("upper").get<std::vector<double>>();
  if (static_cast<int>(upper.size()) != k * (k + 1) / 2) {
    throw std::invalid_argument("symmetric matrix payload has wrong length");
  }
  Eigen::MatrixXd X(k, k);
  size_t idx = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      X(i, j) = upper[idx];
      X(j, i) = upper[idx];
      ++idx;
    }
  }
  return X;
}

json cert_to_obj(const Certificate& cert) {
  return {{"shape",
           {{"n", cert.shape.n},
            {"d", cert.shape.d},
            {"s", cert.shape.s},
            {"r", cert.shape.r}}},
          {"P", sym_to_obj(cert.P)},
          {"Q", sym_to_obj(cert.Q)},
          {"diagnostics",
           {{"identity_residual", cert.diagnostics.identity_residual},
            {"min_eig_P", cert.diagnostics.min_eig_P},
            {"min_eig_Q", cert.diagnostics.min_eig_Q},
            {"sphere_min_V", cert.diagnostics.sphere_min_V},
            {"sphere_min_Vdot", cert.diagnostics.sphere_min_Vdot},
            {"sample_seed", cert.diagnostics.sample_seed}}},
          {"tool_version", cert.tool_version}};
}

Certificate cert_from_obj(const json& obj) {
  Certificate cert;
  const auto& sh = obj.at("shape");
  cert.shape =
      CandidateShape::make(sh.at("n").get<int>(), sh.at("s").get<int>(),
                           sh.at("r").get<int>(), sh.at("d").get<int>());
  cert.P = sym_from_obj(obj.at("P"));
  cert.Q = sym_from_obj(obj.at("Q"));
  if (obj.contains("diagnostics")) {
    const auto& d = obj.at("diagnostics");
    cert.diagnostics.identity_residual =
        d.value("identity_residual", 0.0);
    cert.diagnostics.min_eig_P = d.value("min_eig_P", 0.0);
    cert.diagnostics.min_eig_Q = d.value("min_eig_Q", 0.0);
    cert.diagnostics.sphere_min_V = d.value("sphere_min_V", 0.0);
    cert.diagnostics.sphere_min_Vdot = d.value("sphere_min_Vdot", 0.0);
    cert.diagnostics.sample_seed = d.value("sample_seed", std::uint64_t{0});
  }
  cert.tool_version = obj.value("tool_version", "");
  return cert;
}

}  // namespace

std::string poly_to_json(const HomogPoly& p) { return poly_to_obj(p).dump(2); }

HomogPoly poly_from_json(const std::string& text) {
  return poly_from_obj(json::parse(text));
}

std::string vector_field_to_json(const VectorField& f) {
  return field_to_obj(f).dump(2);
}

VectorField vector_field_from_json(const std::string& text) {
  return field_from_obj(json::parse(text));
}

std::string lyapunov_to_json(const RationalLyapunov& V) {
  return json{{"numerator", poly_to_obj(V.numerator)}, {"r", V.r}}.dump(2);
}

RationalLyapunov lyapunov_from_json(const std::string& text) {
  const json obj = json::parse(text);
  return make_rational_lyapunov(poly_from_obj(obj.at("numerator")),
                                obj.at("r").get<int>());
}

std::string certificate_to_json(const Certificate& cert) {
  return cert_to_obj(cert).dump(2);
}

Certificate certificate_from_json(const std::string& text) {
  return cert_from_obj(json::parse(text));
}

std::string report_to_json(const SearchReport& report) {
  json levels = json::array();
  for (const auto& lv : report.levels) {
    levels.push_back({{"s", lv.s},
                      {"r", lv.r},
                      {"status", to_string(lv.status)},
                      {"wall_ms", lv.wall_ms},
                      {"solver_margin", lv.solver_margin},
                      {"message", lv.message}});
  }
  json obj = {{"outcome", to_string(report.outcome)},
              {"note", report.note},
              {"levels", levels}};
  if (report.certificate) obj["certificate"] = cert_to_obj(*report.certificate);
  return obj.dump(2);
}

std::string gram_system_to_json(const AffineGramSystem& system) {
  json trips = json::array();
  for (const auto& t : system.triplets) {
    trips.push_back({{"row", t.row},
                     {"block", t.block == GramBlock::P ? "P" : "Q"},
                     {"i", t.i},
                     {"j", t.j},
                     {"value", t.value}});
  }
  return json{{"shape",
               {{"n", system.shape.n},
                {"d", system.shape.d},
                {"s", system.shape.s},
                {"r", system.shape.r}}},
              {"rows", system.rows()},
              {"triplets", trips}}
      .dump(2);
}

namespace {

struct TextScanner {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("polynomial text parse error at position " +
                                std::to_string(pos) + ": " + what);
  }
  double number() {
    skip_ws();
    const size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      ++pos;
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      size_t epos = pos + 1;
      if (epos < text.size() && (text[epos] == '+' || text[epos] == '-')) ++epos;
      if (epos < text.size() && std::isdigit(static_cast<unsigned char>(text[epos]))) {
        pos = epos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        }
      }
    }
    if (pos == start) fail("expected a number");
    return std::stod(text.substr(start, pos - start));
  }
  int integer() {
    skip_ws();
    const size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == start) fail("expected an integer");
    return std::stoi(text.substr(start, pos - start));
  }
};

}  // namespace

std::vector<HomogPoly> poly_parts_from_text(const std::string& text, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  TextScanner sc{text};
  std::map<int, HomogPoly> by_degree;

  double sign = 1.0;
  if (sc.accept('-')) sign = -1.0;
  else sc.accept('+');

  while (true) {
    if (sc.done()) sc.fail("expected a term");
    double coeff = sign;
    std::vector<int> exps(static_cast<size_t>(n), 0);
    bool saw_factor = false;

    const char first = sc.peek();
    if (std::isdigit(static_cast<unsigned char>(first)) || first == '.') {
      coeff *= sc.number();
      saw_factor = true;
      if (!sc.accept('*')) {
        // Pure constant term.
        goto term_done;
      }
    }
    while (true) {
      if (sc.peek() != 'x') sc.fail("expected a variable like x1");
      ++sc.pos;
      const int var = sc.integer();
      if (var < 1 || var > n) sc.fail("variable index out of range");
      int e = 1;
      if (sc.accept('^')) e = sc.integer();
      exps[static_cast<size_t>(var - 1)] += e;
      saw_factor = true;
      if (!sc.accept('*')) break;
      if (sc.peek() != 'x') sc.fail("expected a variable after *");
    }

  term_done:
    if (!saw_factor) sc.fail("empty term");
    const Monomial mono(exps);
    const int deg = mono.degree();
    auto it = by_degree.find(deg);
    if (it == by_degree.end()) {
      it = by_degree.emplace(deg, HomogPoly(n, deg)).first;
    }
    it->second.add_term(mono, coeff);

    if (sc.done()) break;
    if (sc.accept('+')) sign = 1.0;
    else if (sc.accept('-')) sign = -1.0;
    else sc.fail("expected + or - between terms");
  }

  std::vector<HomogPoly> parts;
  for (auto& [deg, p] : by_degree) {
    if (!p.is_zero()) parts.push_back(std::move(p));
  }
  return parts;
}

VectorField vector_field_from_text(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      lines.push_back(line);
    }
  }
  if (lines.empty()) {
    throw std::invalid_argument("vector field text has no components");
  }
  const int n = static_cast<int>(lines.size());
  std::vector<std::vector<HomogPoly>> comps;
  comps.reserve(lines.size());
  for (const auto& l : lines) comps.push_back(poly_parts_from_text(l, n));
  return VectorField(n, std::move(comps));
}

VectorField load_vector_field(const std::string& path) {
  const std::string content = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    return vector_field_from_json(content);
  }
  return vector_field_from_text(content);
}

std::string trajectory_to_csv(const Trajectory& traj,
                              const std::string& extra_name,
                              const std::vector<double>& extra) {
  if (!extra_name.empty() && extra.size() != traj.states.size()) {
    throw std::invalid_argument("extra column length does not match trajectory");
  }
  std::ostringstream os;
  os.precision(17);
  const int n = traj.states.empty() ? 0 : static_cast<int>(traj.states[0].size());
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  if (!extra_name.empty()) os << "," << extra_name;
  os << "\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    os << traj.times[k];
    for (double v : traj.states[k]) os << "," << v;
    if (!extra_name.empty()) os << "," << extra[k];
    os << "\n";
  }
  return os.str();
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace ratlyap
