#include "qip/bench.hpp"

#include "qip/errors.hpp"
#include "qip/io.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <thread>

namespace qip {

std::string BenchSetting::label() const {
  return std::string("mono=") + (mono ? "on" : "off") + "/scp=" + to_string(scp);
}

std::vector<BenchSetting> ablation_grid() {
  std::vector<BenchSetting> out;
  for (bool mono : {true, false}) {
    for (ScpMode s : {ScpMode::Off, ScpMode::Feasibility, ScpMode::Optimization, ScpMode::Both}) {
      out.push_back({mono, s});
    }
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string millis_text(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

BenchRow run_one(const BenchInput& in, const BenchSetting& setting, const BenchOptions& options) {
  BenchRow row;
  row.instance = in.name;
  row.setting = setting;
  if (!in.instance) {
    row.status = "error";
    row.error = in.load_error;
    return row;
  }
  SearchOptions so;
  so.mono = setting.mono;
  so.scp = setting.scp;
  so.time_limit = options.timeout;
  so.node_limit = options.node_limit;
  try {
    const SolveResult r = solve(*in.instance, so);
    row.status = to_string(r.status);
    if (r.status != SolveStatus::LimitReached) row.value = r.value.to_string();
    row.nodes = r.stats.nodes_visited;
    row.scp_prunes = r.stats.scp_prunes;
    row.mono_prunes = r.stats.mono_prunes;
    row.millis = std::chrono::duration<double, std::milli>(r.stats.elapsed).count();
  } catch (const std::exception& e) {
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::string BenchReport::to_csv() const {
  std::string out = "instance,setting,status,value,nodes,scp_prunes,mono_prunes,millis\n";
  for (const BenchRow& r : rows) {
    out += csv_field(r.instance) + "," + r.setting.label() + "," + r.status + "," +
           csv_field(r.value) + "," + std::to_string(r.nodes) + "," +
           std::to_string(r.scp_prunes) + "," + std::to_string(r.mono_prunes) + "," +
           millis_text(r.millis) + "\n";
  }
  return out;
}

std::string BenchReport::to_table() const {
  std::size_t w = 8;
  for (const BenchRow& r : rows) w = std::max(w, r.instance.size());
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s  %-18s  %-10s  %12s  %12s  %10s  %10s  %10s\n",
                static_cast<int>(w), "instance", "setting", "status", "value", "nodes",
                "scp_prunes", "mono_prunes", "millis");
  out += buf;
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%-*s  %-18s  %-10s  %12s  %12llu  %10llu  %10llu  %10s\n",
                  static_cast<int>(w), r.instance.c_str(), r.setting.label().c_str(),
                  r.status.c_str(), r.value.c_str(), static_cast<unsigned long long>(r.nodes),
                  static_cast<unsigned long long>(r.scp_prunes),
                  static_cast<unsigned long long>(r.mono_prunes), millis_text(r.millis).c_str());
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof buf, "%-18s  %6s  %6s  %12s\n", "setting", "runs", "solved",
                "mean_millis");
  out += buf;
  for (const BenchAggregate& a : aggregates) {
    std::snprintf(buf, sizeof buf, "%-18s  %6zu  %6zu  %12s\n", a.setting.c_str(), a.runs,
                  a.solved, millis_text(a.mean_millis).c_str());
    out += buf;
  }
  return out;
}

const BenchRow* BenchReport::find(const std::string& instance, const std::string& setting) const {
  for (const BenchRow& r : rows) {
    if (r.instance == instance && r.setting.label() == setting) return &r;
  }
  return nullptr;
}

BenchReport run_bench(const std::vector<BenchInput>& inputs, const BenchOptions& options) {
  const std::size_t ns = options.settings.size();
  const std::size_t total = inputs.size() * ns;
  BenchReport report;
  report.rows.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      report.rows[t] = run_one(inputs[t / ns], options.settings[t % ns], options);
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const BenchSetting& s : options.settings) {
    BenchAggregate a;
    a.setting = s.label();
    double sum = 0;
    for (const BenchRow& r : report.rows) {
      if (r.setting.label() != a.setting) continue;
      ++a.runs;
      if (r.solved()) {
        ++a.solved;
        sum += r.millis;
      }
    }
    a.mean_millis = a.solved ? sum / static_cast<double>(a.solved) : 0.0;
    report.aggregates.push_back(a);
  }
  return report;
}

BenchReport run_bench_dir(const std::string& dir, const BenchOptions& options) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".qip") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchInput> inputs;
  for (const auto& f : files) {
    BenchInput in;
    in.name = f.stem().string();
    try {
      in.instance = parse_qip(read_text_file(f.string()));
    } catch (const std::exception& e) {
      in.load_error = e.what();
    }
    inputs.push_back(std::move(in));
  }
  return run_bench(inputs, options);
}

}  // namespace qip
