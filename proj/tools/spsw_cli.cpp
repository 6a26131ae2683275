// spsw: verification suites and the torus solver from the command line.
//
// Settings are layered: built-in defaults < --config file < SPSW_* environment
// < flags. Exit status: 0 all checks pass, 1 some check fails, 2 configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <spsw/suites.hpp>

extern char** environ;

namespace {

using Settings = std::map<std::string, std::string>;

constexpr const char* kKeys[] = {"chart", "backend", "fd-step", "seed", "samples", "grid", "threads", "out", "csv",
                                 "normalization", "start", "rule", "max-iterations", "amplitude", "scan-samples"};

bool known_key(const std::string& k) {
  return k.rfind("tol.", 0) == 0 || std::find(std::begin(kKeys), std::end(kKeys), k) != std::end(kKeys);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// key = value lines; blank lines and # comments are skipped.
void read_config_file(const std::string& path, Settings& out) {
  std::ifstream in(path);
  if (!in) throw spsw::ConfigError("cannot read config file " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw spsw::ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!known_key(key)) throw spsw::ConfigError(path + ":" + std::to_string(number) + ": unknown key " + key);
    out[key] = trim(line.substr(eq + 1));
  }
}

// SPSW_FD_STEP -> fd-step; SPSW_TOL.ALGEBRA.CLIFFORD -> tol.algebra.clifford.
void read_environment(Settings& out) {
  for (char** e = environ; *e; ++e) {
    const std::string entry = *e;
    if (entry.rfind("SPSW_", 0) != 0) continue;
    const auto eq = entry.find('=');
    std::string key = entry.substr(5, eq - 5);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    if (key.rfind("tol.", 0) != 0) std::replace(key.begin(), key.end(), '_', '-');
    if (known_key(key)) out[key] = entry.substr(eq + 1);
  }
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw spsw::ConfigError("invalid value for " + key + ": " + v);
  return out;
}

spsw::RunConfig to_run_config(spsw::Suite suite, const Settings& s) {
  spsw::RunConfig cfg;
  cfg.suite = suite;
  for (const auto& [key, value] : s) {
    if (key == "chart") {
      spsw::ChartKind k;
      if (!spsw::parse_chart(value, k)) throw spsw::ConfigError("unknown chart " + value);
      cfg.chart = k;
    } else if (key == "backend") {
      spsw::BackendKind k;
      if (!spsw::parse_backend(value, k)) throw spsw::ConfigError("unknown backend " + value);
      cfg.backend = k;
    } else if (key == "fd-step") {
      cfg.fd_step = parse_number<double>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "samples") {
      cfg.samples = parse_number<std::size_t>(key, value);
    } else if (key == "grid") {
      cfg.grid = parse_number<int>(key, value);
    } else if (key == "threads") {
      cfg.threads = parse_number<int>(key, value);
    } else if (key == "normalization") {
      if (!spsw::parse_normalization(value, cfg.norm)) throw spsw::ConfigError("unknown normalization " + value);
    } else if (key == "start") {
      if (!spsw::parse_start(value, cfg.start)) throw spsw::ConfigError("unknown start preset " + value);
    } else if (key == "rule") {
      if (!spsw::parse_step_rule(value, cfg.rule)) throw spsw::ConfigError("unknown step rule " + value);
    } else if (key == "max-iterations") {
      cfg.max_iterations = parse_number<int>(key, value);
    } else if (key == "amplitude") {
      cfg.start_amplitude = parse_number<double>(key, value);
    } else if (key == "scan-samples") {
      cfg.scan_samples = parse_number<int>(key, value);
    } else if (key.rfind("tol.", 0) == 0) {
      cfg.tolerances[key.substr(4)] = parse_number<double>(key, value);
    }
  }
  if (cfg.samples && *cfg.samples == 0) throw spsw::ConfigError("samples must be positive");
  if (cfg.scan_samples < 2) throw spsw::ConfigError("scan-samples must be >= 2");
  return cfg;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw spsw::ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sp(1) Seiberg-Witten verification and solving toolkit"};
  app.set_version_flag("--version", std::string(spsw::toolkit_version()));
  app.require_subcommand(1);

  Settings flags;
  std::string config_path;
  const std::pair<spsw::Suite, const char*> commands[] = {
      {spsw::Suite::algebra, "Clifford, moment map, bracket, equivariance and properness checks"},
      {spsw::Suite::hyperbolic, "canonical hyperbolic solutions and the square of the linearization"},
      {spsw::Suite::weitzenboeck, "the Weitzenboeck formula on random spinor fields"},
      {spsw::Suite::product, "block reduction on S^1 x Sigma and the last-block scan"},
      {spsw::Suite::torus, "residual minimization on the flat 3-torus"},
      {spsw::Suite::cotton, "Cotton tensor of model and perturbed metrics"},
  };
  std::map<CLI::App*, spsw::Suite> suite_of;
  for (auto [suite, help] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(spsw::to_string(suite)), help);
    sub->allow_extras();
    suite_of[sub] = suite;
    for (const char* key : kKeys)
      sub->add_option_function<std::string>(std::string("--") + key, [&flags, key](const std::string& v) { flags[key] = v; });
    sub->add_option("--config", config_path, "key = value file with defaults for the flags above");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    // Remaining arguments may only be --tol.<id> value or --tol.<id>=value.
    const std::vector<std::string> extra = sub->remaining();
    for (std::size_t i = 0; i < extra.size(); ++i) {
      const std::string& a = extra[i];
      if (a.rfind("--tol.", 0) != 0) throw spsw::ConfigError("unknown argument " + a);
      const auto eq = a.find('=');
      if (eq != std::string::npos) {
        flags[a.substr(2, eq - 2)] = a.substr(eq + 1);
      } else {
        if (i + 1 >= extra.size()) throw spsw::ConfigError(a + " needs a value");
        flags[a.substr(2)] = extra[++i];
      }
    }

    Settings merged;
    if (!config_path.empty()) read_config_file(config_path, merged);
    read_environment(merged);
    for (const auto& [k, v] : flags) merged[k] = v;

    const spsw::RunConfig cfg = to_run_config(suite_of.at(sub), merged);
    const spsw::ReportDocument doc = spsw::run_suite(cfg);

    const std::string json = doc.dump();
    if (merged.count("out"))
      write_file(merged.at("out"), json);
    else
      std::cout << json;
    if (merged.count("csv")) write_file(merged.at("csv"), doc.csv());
    for (const auto& r : doc.records())
      if (!r.pass) std::cerr << "FAIL " << r.id << ": " << r.max_residual << " > " << r.tolerance << "\n";
    return doc.all_pass() ? 0 : 1;
  } catch (const spsw::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
}
