#pragma once

#include "qip/instance.hpp"
#include "qip/solver.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qip {

struct BenchSetting {
  bool mono = true;
  ScpMode scp = ScpMode::Off;

  std::string label() const;  // e.g. "mono=on/scp=opt"
};

/// mono on/off x scp off/feas/opt/both, mono=on first.
std::vector<BenchSetting> ablation_grid();

struct BenchRow {
  std::string instance;
  BenchSetting setting;
  std::string status;  // feasible, infeasible, limit, error
  std::string value;   // empty unless solved
  std::uint64_t nodes = 0;
  std::uint64_t scp_prunes = 0;
  std::uint64_t mono_prunes = 0;
  double millis = 0;
  std::string error;

  bool solved() const { return status == "feasible" || status == "infeasible"; }
};

struct BenchAggregate {
  std::string setting;
  std::size_t runs = 0;
  std::size_t solved = 0;
  double mean_millis = 0;  // over solved runs
};

struct BenchReport {
  std::vector<BenchRow> rows;  // instance-major, grid order within an instance
  std::vector<BenchAggregate> aggregates;

  /// instance,setting,status,value,nodes,scp_prunes,mono_prunes,millis
  std::string to_csv() const;
  std::string to_table() const;
  const BenchRow* find(const std::string& instance, const std::string& setting) const;
};

struct BenchOptions {
  std::chrono::milliseconds timeout{60000};
  std::optional<std::uint64_t> node_limit;
  unsigned jobs = 1;
  std::vector<BenchSetting> settings = ablation_grid();
};

struct BenchInput {
  std::string name;
  std::optional<QipInstance> instance;  // nullopt: load failed
  std::string load_error;
};

BenchReport run_bench(const std::vector<BenchInput>& inputs, const BenchOptions& options);

/// All *.qip files of a directory, sorted by file name. Files that fail to
/// parse become error rows.
BenchReport run_bench_dir(const std::string& dir, const BenchOptions& options);

}  // namespace qip
