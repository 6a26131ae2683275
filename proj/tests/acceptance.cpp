// Acceptance runner: one pass/fail line per criterion.
//
//   spsw_acceptance [--criterion N] [--cli PATH]
//
// Exit status 0 when every selected criterion passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <spsw/suites.hpp>

namespace {

using namespace spsw;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const CheckRecord& record(const ReportDocument& doc, const std::string& id) {
  for (const auto& r : doc.records())
    if (r.id == id) return r;
  throw std::runtime_error("report has no record " + id);
}

// All listed records pass; the detail lists their residuals.
Outcome check_records(const ReportDocument& doc, const std::vector<std::string>& ids) {
  Outcome o{true, {}};
  std::ostringstream os;
  os.precision(3);
  for (const auto& id : ids) {
    const CheckRecord& r = record(doc, id);
    o.pass = o.pass && r.pass;
    os << id << "=" << r.max_residual;
    if (!r.pass) os << "(>" << r.tolerance << ")";
    os << " ";
  }
  o.detail = os.str();
  return o;
}

RunConfig config(Suite s, std::size_t samples) {
  RunConfig c;
  c.suite = s;
  c.seed = 20240611;
  c.samples = samples;
  c.threads = 1;
  return c;
}

Outcome c1() {
  const auto doc = verify_algebra(config(Suite::algebra, 10000));
  return check_records(doc, {"algebra.clifford", "algebra.moment_chain", "algebra.moment_abstract", "algebra.bracket",
                             "algebra.equivariance"});
}

Outcome c2() {
  // 100 x samples unit spinors: 10^6
  const auto doc = verify_algebra(config(Suite::algebra, 10000));
  Outcome o = check_records(doc, {"algebra.properness", "algebra.homogeneity"});
  if (record(doc, "algebra.properness").samples < 1000000) o.pass = false;
  return o;
}

Outcome c3() {
  const auto doc = verify_hyperbolic(config(Suite::hyperbolic, 1000));
  return check_records(doc, {"hyperbolic.canonical"});
}

Outcome c4() {
  const auto doc = verify_weitzenboeck(config(Suite::weitzenboeck, 100));
  return check_records(doc, {"weitzenboeck.ad", "weitzenboeck.fd"});
}

Outcome c5() {
  RunConfig c = config(Suite::hyperbolic, 50);
  c.chart = ChartKind::ball;
  c.backend = BackendKind::fd;
  const auto doc = verify_hyperbolic(c);
  return check_records(doc, {"hyperbolic.l2_off_diagonal", "hyperbolic.l2_diagonal"});
}

Outcome c6() {
  RunConfig c = config(Suite::torus, 1);
  c.start = StartPreset::zero;
  const auto doc = solve_torus(c);
  return check_records(doc, {"torus.l2_off_diagonal"});
}

Outcome c7() {
  RunConfig c = config(Suite::torus, 20);
  c.grid = 16;
  c.start = StartPreset::random;
  const auto doc = solve_torus(c);
  Outcome o = check_records(doc, {"torus.converged", "torus.phi_sup", "torus.curvature", "torus.energy"});
  o.detail += "converged=" + doc.to_json().at("summary_flows").at("converged").dump() + "/20";
  return o;
}

Outcome c8() {
  const auto doc = verify_product(config(Suite::product, 200));
  return check_records(doc, {"product.block.1", "product.block.2", "product.block.3", "product.block.4",
                             "product.block.5", "product.block.6", "product.last_block_scan"});
}

Outcome c9() {
  const auto doc = verify_cotton(config(Suite::cotton, 100));
  return check_records(doc, {"cotton.model", "cotton.symmetric", "cotton.trace_free", "cotton.conformal"});
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome c10(const std::string& cli) {
  if (cli.empty()) return {false, "no --cli path given"};
  const auto dir = std::filesystem::temp_directory_path() / ("spsw_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::vector<std::string> runs = {
      "verify-algebra --seed 7 --samples 2000",
      "verify-hyperbolic --seed 7 --samples 100",
      "verify-product --seed 7 --samples 20 --scan-samples 9",
      "solve-torus --seed 7 --grid 8 --start random --samples 2 --amplitude 0.1",
  };
  Outcome o{true, {}};
  int index = 0;
  for (const auto& args : runs) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / ("run" + std::to_string(index) + "_" + std::to_string(rep) + ".json");
      const std::string cmd = "\"" + cli + "\" " + args + " --threads 1 --out \"" + out.string() + "\" 2>/dev/null";
      const int status = std::system(cmd.c_str());
      if (status == -1 || !std::filesystem::exists(out)) {
        o.pass = false;
        o.detail += "[" + args + ": no report] ";
        continue;
      }
      const std::string text = slurp(out);
      if (rep == 0)
        first = text;
      else if (text != first || text.empty()) {
        o.pass = false;
        o.detail += "[" + args + ": reports differ] ";
      }
    }
    ++index;
  }
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail = std::to_string(runs.size()) + " subcommands byte-identical across two runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc)
      only = std::atoi(argv[++i]);
    else if (a == "--cli" && i + 1 < argc)
      cli = argv[++i];
    else {
      std::cerr << "usage: spsw_acceptance [--criterion N] [--cli PATH]\n";
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "algebraic identities on 10^4 inputs", 5, c1},
      {2, "moment map properness and homogeneity", 30, c2},
      {3, "canonical hyperbolic solutions", 10, c3},
      {4, "Weitzenboeck formula", 60, c4},
      {5, "square of the linearization at (0,1,0)", 120, c5},
      {6, "L^2 off-diagonal blocks at reducible torus solutions", 60, c6},
      {7, "torus solver from 20 random starts", 600, c7},
      {8, "product block identities and last-block scan", 300, c8},
      {9, "Cotton tensor", 60, c9},
      {10, "CLI determinism", 300, [&cli] { return c10(cli); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("criterion %d %s: %s | %s| %.2fs of %.0fs%s\n", c.id, c.name, pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
