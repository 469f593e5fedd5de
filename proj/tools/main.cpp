// Command-line front end: certify a vector field, simulate trajectories,
// verify stored certificates, and run the built-in benchmark table.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ratlyap/hierarchy.hpp"
#include "ratlyap/serialize.hpp"
#include "ratlyap/version.hpp"

using namespace ratlyap;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitRejected = 3;
constexpr int kExitSolverFailure = 4;
constexpr int kExitVerifyFailed = 5;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

Eigen::MatrixXd parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find(';', pos);
    if (next == std::string::npos) next = text.size();
    rows.push_back(parse_csv_doubles(text.substr(pos, next - pos)));
    pos = next + 1;
    if (next == text.size()) break;
  }
  const size_t n = rows.size();
  Eigen::MatrixXd A(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("matrix must be square (rows 'a,b;c,d')");
    }
    for (size_t j = 0; j < n; ++j) A(i, j) = rows[i][j];
  }
  return A;
}

struct FieldSpec {
  std::string family;
  std::string input_path;
  double theta = 0.0;
  bool theta_set = false;
  double lambda = 0.0;
  bool lambda_set = false;
  std::string matrix_text;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--family", family,
                    "builtin family: linear, cubic, quintic, nonhomog");
    cmd->add_option("--input", input_path,
                    "vector field file (.json or polynomial text)");
    cmd->add_option("--theta", theta, "rotation angle for cubic/quintic")
        ->each([this](const std::string&) { theta_set = true; });
    cmd->add_option("--lambda", lambda, "cubic family parameter (> 0)")
        ->each([this](const std::string&) { lambda_set = true; });
    cmd->add_option("--matrix", matrix_text,
                    "matrix for the linear family, rows 'a,b;c,d'");
  }

  VectorField resolve() const {
    if (!family.empty() && !input_path.empty()) {
      throw std::invalid_argument("--family and --input are exclusive");
    }
    if (!input_path.empty()) return load_vector_field(input_path);
    if (family == "linear") {
      if (matrix_text.empty()) {
        throw std::invalid_argument("--family linear requires --matrix");
      }
      return family_linear(parse_matrix(matrix_text));
    }
    if (family == "cubic") {
      if (!theta_set || !lambda_set) {
        throw std::invalid_argument("--family cubic requires --theta and --lambda");
      }
      return family_cubic(theta, lambda);
    }
    if (family == "quintic") {
      if (!theta_set) {
        throw std::invalid_argument("--family quintic requires --theta");
      }
      return family_quintic(theta);
    }
    if (family == "nonhomog") return family_nonhomog_counterexample();
    throw std::invalid_argument(
        "specify --family {linear, cubic, quintic, nonhomog} or --input FILE");
  }

  std::string digest() const {
    if (!input_path.empty()) return digest_hex(read_file(input_path));
    std::string desc = "family:" + family;
    if (theta_set) desc += " theta:" + std::to_string(theta);
    if (lambda_set) desc += " lambda:" + std::to_string(lambda);
    if (!matrix_text.empty()) desc += " matrix:" + matrix_text;
    return digest_hex(desc);
  }
};

class ManifestWriter {
 public:
  ManifestWriter(std::string command, std::string prefix)
      : command_(std::move(command)),
        prefix_(std::move(prefix)),
        start_(std::chrono::steady_clock::now()) {}

  void set_input_digest(std::string digest) { input_digest_ = std::move(digest); }
  void set_config(json config) { config_ = std::move(config); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void emit(const std::string& path, const std::string& content) {
    write_file(path, content);
    outputs_.push_back({{"path", path}, {"digest", digest_hex(content)}});
  }

  void finalize() {
    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
    const json manifest = {{"command", command_},
                           {"input_digest", input_digest_},
                           {"config", config_},
                           {"tool_version", std::string(kToolVersion)},
                           {"seed", seed_},
                           {"wall_ms", wall_ms},
                           {"outputs", outputs_}};
    write_file(prefix_ + ".manifest.json", manifest.dump(2));
  }

 private:
  std::string command_;
  std::string prefix_;
  std::chrono::steady_clock::time_point start_;
  std::string input_digest_;
  json config_ = json::object();
  std::uint64_t seed_ = 0;
  json outputs_ = json::array();
};

double env_time_budget_ms() {
  const char* env = std::getenv("RATLYAP_TIME_BUDGET_MS");
  if (env == nullptr) return 0.0;
  return std::atof(env);
}

void print_levels(const SearchReport& report) {
  for (const auto& lv : report.levels) {
    std::cout << "  (s=" << lv.s << ", r=" << lv.r
              << ") " << to_string(lv.status) << "  [" << lv.wall_ms
              << " ms]\n";
  }
}

struct SearchSummary {
  SearchReport report;
  bool rejected = false;
  bool rejected_definitive = false;
  std::string rejection;
};

SearchSummary run_search(const VectorField& f, const SearchConfig& config) {
  SearchSummary out;
  try {
    out.report = search(f, config);
  } catch (const RejectedField& e) {
    out.rejected = true;
    out.rejected_definitive = e.definitive_verdict();
    out.rejection = e.what();
  }
  return out;
}

int cmd_certify(const FieldSpec& spec, int s_max, const std::string& r_mode,
                const std::string& out_prefix, std::uint64_t seed) {
  ManifestWriter manifest("certify", out_prefix);
  manifest.set_seed(seed);
  manifest.set_input_digest(spec.digest());

  VectorField f = spec.resolve();

  SearchConfig config;
  config.s_max = s_max;
  config.r_zero_only = (r_mode == "zero-only");
  config.level_time_budget_ms = env_time_budget_ms();
  config.verify.seed = seed;
  manifest.set_config({{"s_max", s_max},
                       {"r_mode", r_mode},
                       {"level_time_budget_ms", config.level_time_budget_ms}});

  const SearchSummary summary = run_search(f, config);
  if (summary.rejected) {
    std::cout << "rejected: " << summary.rejection << "\n";
    if (summary.rejected_definitive) {
      std::cout << "verdict: not asymptotically stable\n";
    }
    const json rep = {{"outcome", "rejected"},
                      {"definitive_instability", summary.rejected_definitive},
                      {"note", summary.rejection}};
    manifest.emit(out_prefix + ".report.json", rep.dump(2));
    manifest.finalize();
    return kExitRejected;
  }

  const SearchReport& report = summary.report;
  print_levels(report);
  std::cout << "outcome: " << report.note << "\n";
  manifest.emit(out_prefix + ".report.json", report_to_json(report));
  if (report.certificate) {
    manifest.emit(out_prefix + ".cert.json",
                  certificate_to_json(*report.certificate));
  }
  manifest.finalize();

  switch (report.outcome) {
    case SearchOutcome::certified: return kExitOk;
    case SearchOutcome::exhausted: return kExitExhausted;
    case SearchOutcome::aborted: return kExitSolverFailure;
  }
  return kExitSolverFailure;
}

RationalLyapunov resolve_lyapunov(const std::string& name) {
  if (name == "builtin:quintic-W") return builtin_quintic_w();
  return lyapunov_from_json(read_file(name));
}

int cmd_simulate(const FieldSpec& spec, const std::string& x0_text, double step,
                 double horizon, const std::string& out_path,
                 const std::string& lyapunov_name,
                 const std::string& levels_text,
                 const std::string& levels_out, std::uint64_t seed) {
  const std::string prefix =
      out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv"
          ? out_path.substr(0, out_path.size() - 4)
          : out_path;
  ManifestWriter manifest("simulate", prefix);
  manifest.set_seed(seed);
  manifest.set_input_digest(spec.digest());
  manifest.set_config({{"x0", x0_text},
                       {"step", step},
                       {"horizon", horizon},
                       {"lyapunov", lyapunov_name},
                       {"levelsets", levels_text}});

  VectorField f = spec.resolve();
  const std::vector<double> x0 = parse_csv_doubles(x0_text);
  const Trajectory traj = simulate(f, x0, step, horizon);
  if (traj.diverged) {
    std::cout << "warning: trajectory hit the divergence guard at t = "
              << traj.times.back() << "\n";
  }

  std::optional<RationalLyapunov> V;
  if (!lyapunov_name.empty()) V = resolve_lyapunov(lyapunov_name);

  std::string csv;
  if (V) {
    std::vector<double> vals;
    vals.reserve(traj.states.size());
    for (const auto& x : traj.states) vals.push_back(V->eval(x));
    csv = trajectory_to_csv(traj, "V", vals);
  } else {
    csv = trajectory_to_csv(traj);
  }
  manifest.emit(out_path, csv);
  std::cout << "wrote " << traj.length() << " samples to " << out_path << "\n";

  if (!levels_text.empty()) {
    if (!V) {
      throw std::invalid_argument("--levelsets requires --lyapunov");
    }
    if (f.dimension() != 2) {
      throw std::invalid_argument("--levelsets requires a planar field");
    }
    const int net_degree = V->numerator.degree() - 2 * V->r;
    std::ostringstream os;
    os.precision(17);
    os << "level,angle,x1,x2\n";
    const int grid = 720;
    for (double level : parse_csv_doubles(levels_text)) {
      for (int k = 0; k < grid; ++k) {
        const double angle = 2.0 * M_PI * k / grid;
        const std::vector<double> u = {std::cos(angle), std::sin(angle)};
        const double vu = V->eval(u);
        if (vu <= 0.0) continue;
        const double rho = std::pow(level / vu, 1.0 / net_degree);
        os << level << "," << angle << "," << rho * u[0] << ","
           << rho * u[1] << "\n";
      }
    }
    const std::string target =
        levels_out.empty() ? prefix + ".levels.csv" : levels_out;
    manifest.emit(target, os.str());
    std::cout << "wrote level sets to " << target << "\n";
  }
  manifest.finalize();
  return kExitOk;
}

int cmd_verify(const FieldSpec& spec, const std::string& cert_path,
               std::uint64_t seed) {
  const Certificate cert = certificate_from_json(read_file(cert_path));
  VectorField f = spec.resolve();
  VerifySettings settings;
  settings.seed = seed;
  const CheckResult res = check_certificate(f, cert, settings);
  std::cout << "verification: " << (res.pass ? "PASS" : "FAIL") << " ("
            << res.reason << ")\n"
            << "  identity residual: " << res.diagnostics.identity_residual
            << "\n  min eig P: " << res.diagnostics.min_eig_P
            << "\n  min eig Q: " << res.diagnostics.min_eig_Q << "\n";
  return res.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_bench(const std::string& out_prefix, int s_max, std::uint64_t seed) {
  ManifestWriter manifest("bench", out_prefix);
  manifest.set_seed(seed);
  manifest.set_input_digest(digest_hex("builtin-benchmark"));
  manifest.set_config({{"s_max", s_max}});

  struct RowSpec {
    std::string name;
    VectorField field;
  };
  std::vector<RowSpec> rows;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> shift(0.1, 0.6);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 2; ++rep) {
      Eigen::MatrixXd A(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = coeff(rng);
      }
      const double max_re = Eigen::EigenSolver<Eigen::MatrixXd>(A)
                                .eigenvalues()
                                .real()
                                .maxCoeff();
      A -= (max_re + shift(rng)) * Eigen::MatrixXd::Identity(n, n);
      rows.push_back({"linear-hurwitz-" + std::to_string(n) + "x" +
                          std::to_string(n) + "-" + std::to_string(rep),
                      family_linear(A)});
    }
  }
  const double lambda = std::sqrt(2.0);
  for (double theta : {M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0}) {
    std::ostringstream name;
    name << "cubic-theta-" << theta;
    rows.push_back({name.str(), family_cubic(theta, lambda)});
  }
  for (double theta : {0.05, 0.5, 1.5}) {
    std::ostringstream name;
    name << "quintic-theta-" << theta;
    rows.push_back({name.str(), family_quintic(theta)});
  }

  json table = json::array();
  bool any_aborted = false;
  std::cout << "system                          rational (s, r)   polynomial s\n";
  for (const auto& row : rows) {
    SearchConfig config;
    config.s_max = s_max;
    config.verify.seed = seed;
    config.level_time_budget_ms = env_time_budget_ms();
    const SearchSummary rational = run_search(row.field, config);
    config.r_zero_only = true;
    const SearchSummary poly = run_search(row.field, config);

    auto level_text = [](const SearchSummary& s, bool poly_mode) {
      if (s.rejected) return std::string("rejected");
      if (s.report.outcome == SearchOutcome::certified) {
        const auto& sh = s.report.certificate->shape;
        if (poly_mode) return std::to_string(sh.s);
        return "(" + std::to_string(sh.s) + ", " + std::to_string(sh.r) + ")";
      }
      if (s.report.outcome == SearchOutcome::exhausted) {
        return std::string("none <= s_max");
      }
      return std::string("aborted");
    };
    const std::string rat_text = level_text(rational, false);
    const std::string poly_text = level_text(poly, true);
    any_aborted = any_aborted ||
                  (!rational.rejected &&
                   rational.report.outcome == SearchOutcome::aborted) ||
                  (!poly.rejected && poly.report.outcome == SearchOutcome::aborted);

    std::cout << "  " << row.name;
    for (size_t pad = row.name.size(); pad < 30; ++pad) std::cout << ' ';
    std::cout << rat_text;
    for (size_t pad = rat_text.size(); pad < 18; ++pad) std::cout << ' ';
    std::cout << poly_text << "\n";

    json entry = {{"system", row.name},
                  {"rational", rat_text},
                  {"polynomial_only", poly_text}};
    if (!rational.rejected) {
      json levels = json::array();
      for (const auto& lv : rational.report.levels) {
        levels.push_back({{"s", lv.s},
                          {"r", lv.r},
                          {"status", to_string(lv.status)},
                          {"wall_ms", lv.wall_ms}});
      }
      entry["rational_levels"] = levels;
    }
    table.push_back(entry);
  }

  manifest.emit(out_prefix + ".bench.json", json{{"rows", table}}.dump(2));
  manifest.finalize();
  return any_aborted ? kExitSolverFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational Lyapunov certificates for homogeneous polynomial "
               "vector fields"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::uint64_t seed = 20240501;
  app.add_option("--seed", seed, "seed recorded in manifests and diagnostics");

  // certify
  auto* certify = app.add_subcommand(
      "certify", "search the hierarchy for a verified certificate");
  FieldSpec certify_spec;
  certify_spec.add_options(certify);
  int s_max = 12;
  std::string r_mode = "free";
  std::string certify_out = "ratlyap-certify";
  certify->add_option("--s-max", s_max, "largest numerator degree (even)");
  certify->add_option("--r-mode", r_mode, "free or zero-only")
      ->check(CLI::IsMember({"free", "zero-only"}));
  certify->add_option("--out", certify_out, "output file prefix");

  // simulate
  auto* simulate_cmd =
      app.add_subcommand("simulate", "integrate the field and export CSV");
  FieldSpec sim_spec;
  sim_spec.add_options(simulate_cmd);
  std::string x0_text = "1,0.2";
  double step = 1e-3, horizon = 10.0;
  std::string sim_out = "ratlyap-simulate.csv";
  std::string lyapunov_name;
  std::string levels_text;
  std::string levels_out;
  simulate_cmd->add_option("--x0", x0_text, "initial state 'v1,v2,...'");
  simulate_cmd->add_option("--step", step, "integration step");
  simulate_cmd->add_option("--horizon", horizon, "final time");
  simulate_cmd->add_option("--out", sim_out, "trajectory CSV path");
  simulate_cmd->add_option("--lyapunov", lyapunov_name,
                           "builtin:quintic-W or a Lyapunov JSON file; adds a "
                           "V column");
  simulate_cmd->add_option("--levelsets", levels_text,
                           "comma-separated level values to export");
  simulate_cmd->add_option("--levelsets-out", levels_out,
                           "level-set CSV path");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "re-verify a stored certificate");
  FieldSpec verify_spec;
  verify_spec.add_options(verify_cmd);
  std::string cert_path;
  verify_cmd->add_option("--certificate", cert_path, "certificate JSON file")
      ->required();

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "minimal certified levels across the builtin families");
  std::string bench_out = "ratlyap-bench";
  int bench_s_max = 12;
  bench_cmd->add_option("--out", bench_out, "output file prefix");
  bench_cmd->add_option("--s-max", bench_s_max, "largest numerator degree");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*certify) {
      return cmd_certify(certify_spec, s_max, r_mode, certify_out, seed);
    }
    if (*simulate_cmd) {
      return cmd_simulate(sim_spec, x0_text, step, horizon, sim_out,
                          lyapunov_name, levels_text, levels_out, seed);
    }
    if (*verify_cmd) {
      return cmd_verify(verify_spec, cert_path, seed);
    }
    if (*bench_cmd) {
      return cmd_bench(bench_out, bench_s_max, seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
