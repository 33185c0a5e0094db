#include "qip/cli.hpp"

#include "qip/bench.hpp"
#include "qip/errors.hpp"
#include "qip/generators.hpp"
#include "qip/io.hpp"
#include "qip/oracle.hpp"
#include "qip/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>

namespace qip {

namespace {

using nlohmann::json;

constexpr std::size_t kOracleMaxVars = 24;

std::string summary(const QipInstance& instance) {
  std::string out = "n " + std::to_string(instance.num_vars()) + ", m " +
                    std::to_string(instance.num_rows()) + ", blocks";
  for (const Block& b : block_structure(instance).blocks) {
    out += ' ';
    out += to_char(b.quantifier);
    out += std::to_string(b.size());
  }
  return out;
}

json bits_json(const Assignment& a) {
  json arr = json::array();
  for (std::size_t j = 0; j < a.size(); ++j) arr.push_back(a[j]);
  return arr;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return kExitFeasible;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::LimitReached: return kExitLimit;
  }
  return kExitUsage;
}

double millis(std::chrono::nanoseconds ns) {
  return std::chrono::duration<double, std::milli>(ns).count();
}

struct SolveArgs {
  std::string path;
  std::string scp = "opt";
  std::string mono = "on";
  std::string ordering = "default";
  double timeout = 0;
  std::uint64_t node_limit = 0;
  bool json_out = false;
  bool scout = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const QipInstance instance = parse_qip(read_text_file(a.path));
  SearchOptions so;
  so.mono = a.mono == "on";
  so.scp = *parse_scp_mode(a.scp);
  so.ordering = a.ordering == "naive" ? MoveOrdering::Naive : MoveOrdering::Default;
  so.scout = a.scout;
  if (a.timeout > 0) {
    so.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(a.timeout * 1000.0));
    if (so.time_limit->count() == 0) so.time_limit = std::chrono::milliseconds(1);
  }
  if (a.node_limit > 0) so.node_limit = a.node_limit;
  const SolveResult r = solve(instance, so);

  if (a.json_out) {
    json j;
    j["instance"] = instance.name();
    j["status"] = to_string(r.status);
    j["value"] = r.value.to_string();
    j["first_stage"] = r.first_stage;
    j["pv"] = r.pv ? bits_json(*r.pv) : json(nullptr);
    j["lower_bound"] = r.lower_bound ? json(to_string(*r.lower_bound)) : json(nullptr);
    j["upper_bound"] = r.upper_bound.to_string();
    j["stats"] = {{"nodes_visited", r.stats.nodes_visited},
                  {"scp_prunes", r.stats.scp_prunes},
                  {"scp_bound_updates", r.stats.scp_bound_updates},
                  {"mono_prunes", r.stats.mono_prunes},
                  {"leaves_evaluated", r.stats.leaves_evaluated},
                  {"elapsed_ms", millis(r.stats.elapsed)}};
    out << j.dump(2) << "\n";
  } else {
    out << "status: " << to_string(r.status) << "\n";
    out << "value: " << r.value.to_string() << "\n";
    if (r.status == SolveStatus::Feasible) {
      out << "first_stage: " << join(r.first_stage) << "\n";
      out << "pv: " << r.pv->to_string() << "\n";
    }
    if (r.status == SolveStatus::LimitReached) {
      out << "lower_bound: " << (r.lower_bound ? to_string(*r.lower_bound) : "-inf") << "\n";
      out << "upper_bound: " << r.upper_bound.to_string() << "\n";
    }
    out << "nodes_visited: " << r.stats.nodes_visited << "\n";
    out << "scp_prunes: " << r.stats.scp_prunes << "\n";
    out << "scp_bound_updates: " << r.stats.scp_bound_updates << "\n";
    out << "mono_prunes: " << r.stats.mono_prunes << "\n";
    out << "leaves_evaluated: " << r.stats.leaves_evaluated << "\n";
    out << "elapsed_ms: " << millis(r.stats.elapsed) << "\n";
  }
  return exit_for(r.status);
}

int cmd_oracle(const std::string& path, bool force, bool json_out, std::ostream& out,
               std::ostream& err) {
  const QipInstance instance = parse_qip(read_text_file(path));
  if (instance.num_vars() > kOracleMaxVars && !force) {
    err << "error: oracle refuses n = " << instance.num_vars() << " > " << kOracleMaxVars
        << " without --force\n";
    return kExitUsage;
  }
  const ExtValue value = oracle::minimax(instance, Assignment(instance.num_vars()));
  const auto pv = value.is_finite() ? oracle::principal_variation(instance) : std::nullopt;
  if (json_out) {
    json j;
    j["instance"] = instance.name();
    j["value"] = value.to_string();
    j["pv"] = pv ? bits_json(*pv) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "value: " << value.to_string() << "\n";
    if (pv) out << "pv: " << pv->to_string() << "\n";
  }
  return value.is_finite() ? kExitFeasible : kExitInfeasible;
}

void emit_instance(const QipInstance& instance, const std::string& path, std::ostream& out,
                   std::ostream& err) {
  const std::string text = serialize_qip(instance);
  if (path.empty() || path == "-") {
    out << text;
    err << summary(instance) << "\n";
  } else {
    write_text_file(path, text);
    out << "wrote " << path << ": " << summary(instance) << "\n";
  }
}

Rational rational_arg(const std::string& text, const char* what) {
  const auto r = parse_rational(text);
  if (!r) throw PreconditionError(std::string("invalid rational for ") + what + ": " + text);
  return *r;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solver for binary quantified integer programs", "qip"};
  app.require_subcommand(1);
  int code = kExitFeasible;

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("path", sa.path, "Instance file")->required();
  solve_cmd->add_option("--scp", sa.scp, "Copy-pruning phases")
      ->check(CLI::IsMember({"off", "feas", "opt", "both"}));
  solve_cmd->add_option("--mono", sa.mono, "Monotone-variable pruning")
      ->check(CLI::IsMember({"on", "off"}));
  solve_cmd->add_option("--ordering", sa.ordering, "Move ordering")
      ->check(CLI::IsMember({"default", "naive"}));
  solve_cmd->add_option("--timeout", sa.timeout, "Time limit in seconds")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--node-limit", sa.node_limit, "Node limit")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--json", sa.json_out, "Machine-readable output");
  solve_cmd->add_flag("--scout", sa.scout, "Null-window tests at existential nodes");

  std::string oracle_path;
  bool force = false;
  bool oracle_json = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive minimax value of a small instance");
  oracle_cmd->add_option("path", oracle_path, "Instance file")->required();
  oracle_cmd->add_flag("--force", force, "Allow more than 24 variables");
  oracle_cmd->add_flag("--json", oracle_json, "Machine-readable output");

  std::string bench_dir;
  std::string bench_csv;
  double bench_timeout = 60;
  unsigned bench_jobs = 1;
  std::uint64_t bench_nodes = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Ablation grid over a directory of instances");
  bench_cmd->add_option("dir", bench_dir, "Directory of .qip files")->required();
  bench_cmd->add_option("--timeout", bench_timeout, "Per-run time limit in seconds")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--jobs", bench_jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--node-limit", bench_nodes, "Per-run node limit")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--csv", bench_csv, "Write CSV here ('-' prints CSV instead of the table)");

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->require_subcommand(1);
  RunwayParams rp;
  std::string rp_cost = "1";
  std::string gen_out;
  std::uint64_t seed = 1;
  auto* runway_cmd = gen_cmd->add_subcommand("runway", "Runway scheduling under disturbances");
  runway_cmd->add_option("--planes", rp.planes)->check(CLI::PositiveNumber);
  runway_cmd->add_option("--slots", rp.slots)->check(CLI::PositiveNumber);
  runway_cmd->add_option("--cap", rp.capacity)->check(CLI::PositiveNumber);
  runway_cmd->add_option("--window", rp.window)->check(CLI::PositiveNumber);
  runway_cmd->add_option("--disturbed", rp.disturbed);
  runway_cmd->add_option("--max-shift", rp.max_shift, "Largest window shift");
  runway_cmd->add_option("--cost", rp_cost, "Reassignment cost (rational)");
  runway_cmd->add_option("--seed", seed);
  runway_cmd->add_option("--out,-o", gen_out, "Output file (default stdout)");
  RandomParams qp;
  std::string qp_univ = "1/4";
  std::string qp_density = "1/2";
  auto* random_cmd = gen_cmd->add_subcommand("random", "Random instance");
  random_cmd->add_option("--n", qp.n)->check(CLI::PositiveNumber);
  random_cmd->add_option("--m", qp.m);
  random_cmd->add_option("--universal-fraction", qp_univ, "Rational in [0,1]");
  random_cmd->add_option("--density", qp_density, "Rational in (0,1]");
  random_cmd->add_option("--range", qp.coeff_range)->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", seed);
  random_cmd->add_option("--out,-o", gen_out, "Output file (default stdout)");

  std::string conv_in;
  std::string conv_out;
  auto* convert_cmd = app.add_subcommand("convert", "QDIMACS to instance format");
  convert_cmd->add_option("input", conv_in, "QDIMACS file")->required();
  convert_cmd->add_option("output", conv_out, "Instance file (default stdout)");

  std::string dep_in;
  std::string dep_out;
  std::uint64_t dep_cap = DepOptions{}.max_scenarios;
  auto* dep_cmd = app.add_subcommand("export-dep", "Deterministic equivalent in LP format");
  dep_cmd->add_option("input", dep_in, "Instance file")->required();
  dep_cmd->add_option("output", dep_out, "LP file (default stdout)");
  dep_cmd->add_option("--max-scenarios", dep_cap)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) {
      code = cmd_solve(sa, out);
    } else if (*oracle_cmd) {
      code = cmd_oracle(oracle_path, force, oracle_json, out, err);
    } else if (*bench_cmd) {
      BenchOptions bo;
      bo.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(bench_timeout * 1000.0));
      if (bo.timeout.count() == 0) bo.timeout = std::chrono::milliseconds(1);
      bo.jobs = bench_jobs;
      if (bench_nodes > 0) bo.node_limit = bench_nodes;
      const BenchReport report = run_bench_dir(bench_dir, bo);
      if (bench_csv == "-") {
        out << report.to_csv();
      } else {
        out << report.to_table();
        if (!bench_csv.empty()) write_text_file(bench_csv, report.to_csv());
      }
    } else if (*gen_cmd) {
      if (*runway_cmd) {
        rp.reassign_cost = rational_arg(rp_cost, "--cost");
        rp.seed = seed;
        emit_instance(gen_runway(rp), gen_out, out, err);
      } else {
        qp.universal_fraction = rational_arg(qp_univ, "--universal-fraction");
        qp.density = rational_arg(qp_density, "--density");
        qp.seed = seed;
        emit_instance(gen_random(qp), gen_out, out, err);
      }
    } else if (*convert_cmd) {
      emit_instance(import_qdimacs(read_text_file(conv_in)), conv_out, out, err);
    } else if (*dep_cmd) {
      const QipInstance instance = parse_qip(read_text_file(dep_in));
      const std::string lp = export_dep(instance, DepOptions{dep_cap});
      if (dep_out.empty() || dep_out == "-") {
        out << lp;
      } else {
        write_text_file(dep_out, lp);
        out << "wrote " << dep_out << ": " << summary(instance) << "\n";
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return code;
}

}  // namespace qip
