// Copyright 2026 The besselid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BESSELID_TOOLS_CLI_HPP_
#define BESSELID_TOOLS_CLI_HPP_

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "besselid/besselid.hpp"

// Command-line driver:
//
//   besselid verify     --family general|convolution|theta|f|laguerre|prudnikov
//                       --m 2..5 --n 0..10
//   besselid numeric    --identity brychkov|k|fk --m 2..4 --n 0..8 --z 0.5,1,2
//   besselid sample     --test stability|lemma2|extension|moments --z 1,2
//                       [--n 0..4] --count 100000 --seed 7
//   besselid inequality --turan --x ... --y ... --p ... --z ...
//   besselid inequality --logconvex --nu 0:5:0.25 --z 1
//
// Integer ranges are `a..b` (inclusive), a single value, or a comma list.
// Real grids are `a:b:step` or a comma list.
//
// Rows go to stdout (or --out) as JSON lines, CSV, or text; a one-line summary
// goes to stderr. Exit codes: 0 all checks pass, 1 a check failed, 2 bad
// configuration. BESSELID_WORKERS caps the worker pool (default 1); row order
// never depends on it.

namespace besselid::cli {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv, text };

struct RunConfig {
  std::string command;
  std::string family;  // verify: identity family; numeric: identity; sample: test
  std::vector<unsigned> m_values;
  std::vector<unsigned> n_values;
  std::vector<double> z;
  std::vector<double> x, y, p, nu;
  bool turan = false;
  bool logconvex = false;
  std::size_t count = 100000;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  unsigned max_m = 5;
  unsigned max_n = 12;
  Format format = Format::json;
  std::string out_path;
};

/// One report row: {identity, params, status, metric, tolerance, seed?, witness?}.
struct Row {
  std::string identity;
  Json params = Json::object();
  bool passed = false;
  double metric = 0.0;
  double tolerance = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<Json> witness;

  Json to_json() const {
    Json j;
    j["identity"] = identity;
    j["params"] = params;
    j["status"] = passed ? "pass" : "fail";
    j["metric"] = metric;
    j["tolerance"] = tolerance;
    if (seed) j["seed"] = *seed;
    if (witness) j["witness"] = *witness;
    return j;
  }
};

// ---------------------------------------------------------------------------
// Argument syntax
// ---------------------------------------------------------------------------

inline unsigned parse_unsigned(const std::string& s) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError("not a nonnegative integer: '" + s + "'");
  return v;
}

inline double parse_real(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v))
    throw ConfigError("not a real number: '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

/// `a..b`, `a`, or `a,b,c`.
inline std::vector<unsigned> parse_int_range(const std::string& s) {
  std::vector<unsigned> out;
  if (auto dots = s.find(".."); dots != std::string::npos) {
    const unsigned lo = parse_unsigned(s.substr(0, dots));
    const unsigned hi = parse_unsigned(s.substr(dots + 2));
    if (lo > hi) throw ConfigError("empty range: '" + s + "'");
    for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (const auto& item : split(s, ',')) out.push_back(parse_unsigned(item));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

/// `a:b:step` (inclusive of b up to rounding) or `a,b,c`.
inline std::vector<double> parse_real_grid(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError("grid must be a:b:step: '" + s + "'");
    const double lo = parse_real(parts[0]);
    const double hi = parse_real(parts[1]);
    const double step = parse_real(parts[2]);
    if (!(step > 0.0) || lo > hi) throw ConfigError("empty grid: '" + s + "'");
    const auto steps = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (steps > 1000000) throw ConfigError("grid too large: '" + s + "'");
    for (long i = 0; i <= steps; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
  for (const auto& item : split(s, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

/// BESSELID_WORKERS, clamped to [1, 64]; 1 when unset or malformed.
inline unsigned worker_count() {
  const char* env = std::getenv("BESSELID_WORKERS");
  if (env == nullptr) return 1;
  try {
    const unsigned v = parse_unsigned(env);
    return std::clamp(v, 1u, 64u);
  } catch (const ConfigError&) {
    return 1;
  }
}

/// Runs tasks on up to `workers` threads; results keep task order.
inline std::vector<Row> run_tasks(const std::vector<std::function<Row()>>& tasks,
                                  unsigned workers) {
  std::vector<Row> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

inline Json witness_json(const Witness& w) {
  return Json{{"exponents", w.exponents},
              {"lhs", w.lhs.get_str()},
              {"rhs", w.rhs.get_str()}};
}

inline Row row_from(const VerificationReport& r) {
  Row row;
  row.identity = r.identity;
  if (r.m) row.params["m"] = *r.m;
  row.params["n"] = r.n;
  row.passed = r.passed;
  row.metric = static_cast<double>(r.mismatches);
  row.tolerance = 0.0;
  if (r.witness) {
    Json w = witness_json(*r.witness);
    if (r.constant) w["constant"] = r.constant->get_str();
    row.witness = w;
  }
  return row;
}

inline std::vector<std::function<Row()>> plan_verify(const RunConfig& cfg) {
  using Verifier = VerificationReport (*)(unsigned, unsigned);
  static const std::map<std::string, Verifier> families = {
      {"general", verify_general_bessel}, {"convolution", verify_convolution_form},
      {"theta", verify_theta_identity},   {"f", verify_f_multinomial},
      {"laguerre", verify_laguerre_identity}};
  std::vector<std::function<Row()>> tasks;
  if (cfg.family == "prudnikov") {
    for (unsigned n : cfg.n_values)
      tasks.emplace_back([n] { return row_from(verify_prudnikov(n)); });
    return tasks;
  }
  auto it = families.find(cfg.family);
  if (it == families.end()) throw ConfigError("unknown family '" + cfg.family + "'");
  for (unsigned m : cfg.m_values) {
    if (m < 2) throw ConfigError("m must be >= 2");
    if (m > cfg.max_m)
      throw ConfigError("m = " + std::to_string(m) + " exceeds --max-m " +
                        std::to_string(cfg.max_m));
  }
  for (unsigned n : cfg.n_values)
    if (n > cfg.max_n)
      throw ConfigError("n = " + std::to_string(n) + " exceeds --max-n " +
                        std::to_string(cfg.max_n));
  const Verifier verify = it->second;
  for (unsigned m : cfg.m_values)
    for (unsigned n : cfg.n_values)
      tasks.emplace_back([verify, m, n] { return row_from(verify(m, n)); });
  return tasks;
}

inline std::vector<std::function<Row()>> plan_numeric(const RunConfig& cfg) {
  const double tol = cfg.tolerance.value_or(1e-9);
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("--tol must be positive");
  if (cfg.z.empty()) throw ConfigError("--z is required");
  for (double z : cfg.z)
    if (!(z > 0.0)) throw ConfigError("z values must be positive");
  for (unsigned m : cfg.m_values)
    if (m < 2) throw ConfigError("m must be >= 2");
  if (cfg.family != "brychkov" && cfg.family != "k" && cfg.family != "fk")
    throw ConfigError("unknown identity '" + cfg.family + "'");

  std::vector<std::function<Row()>> tasks;
  for (unsigned m : cfg.m_values) {
    for (unsigned n : cfg.n_values) {
      if (cfg.family == "fk") {
        // The z list is the vector (z_1..z_m) when it has m entries, and is
        // otherwise cycled to length m.
        std::vector<double> zv(m);
        for (unsigned i = 0; i < m; ++i) zv[i] = cfg.z[i % cfg.z.size()];
        tasks.emplace_back([m, n, zv, tol] {
          Row row;
          row.identity = "fk";
          row.params = Json{{"m", m}, {"n", n}, {"z", zv}};
          row.metric = verify_fk_identity_numeric(m, n, zv);
          row.tolerance = tol;
          row.passed = row.metric <= tol;
          return row;
        });
        continue;
      }
      for (double z : cfg.z) {
        const std::string name = cfg.family;
        tasks.emplace_back([m, n, z, tol, name] {
          Row row;
          row.identity = name;
          row.params = Json{{"m", m}, {"n", n}, {"z", z}};
          row.metric = name == "brychkov" ? verify_brychkov_numeric(m, n, z)
                                          : verify_k_identity_numeric(m, n, z);
          row.tolerance = tol;
          row.passed = row.metric <= tol;
          return row;
        });
      }
    }
  }
  return tasks;
}

inline Row row_from(const DistributionReport& r) {
  Row row;
  row.identity = r.test;
  row.params = Json{{"z", r.z},
                    {"count", r.count},
                    {"expected_mean", r.expected_mean},
                    {"lhs_mean", r.lhs.mean},
                    {"rhs_mean", r.rhs.mean}};
  row.passed = r.passed;
  row.metric = r.statistic;
  row.tolerance = r.threshold;
  row.seed = r.seed;
  return row;
}

inline std::vector<std::function<Row()>> plan_sample(const RunConfig& cfg,
                                                     std::uint64_t seed) {
  if (cfg.count < 1000) throw ConfigError("--count must be at least 1000");
  if (cfg.z.empty()) throw ConfigError("--z is required");
  for (double z : cfg.z)
    if (!(z > 0.0)) throw ConfigError("z values must be positive");
  const std::size_t count = cfg.count;
  std::vector<std::function<Row()>> tasks;
  if (cfg.family == "stability" || cfg.family == "lemma2") {
    if (cfg.z.size() != 2) throw ConfigError("--test " + cfg.family + " needs exactly two z values");
    const double z1 = cfg.z[0], z2 = cfg.z[1];
    const bool stability = cfg.family == "stability";
    tasks.emplace_back([=] {
      return row_from(stability ? mc_verify_stability(z1, z2, count, seed)
                                : mc_verify_lemma2(z1, z2, count, seed));
    });
  } else if (cfg.family == "extension") {
    if (cfg.z.size() < 2) throw ConfigError("--test extension needs at least two z values");
    const std::vector<double> zv = cfg.z;
    tasks.emplace_back([=] { return row_from(mc_verify_extension(zv, count, seed)); });
  } else if (cfg.family == "moments") {
    for (unsigned n : cfg.n_values)
      if (n > 4) throw ConfigError("moment checks support n <= 4");
    for (double z : cfg.z) {
      for (unsigned n : cfg.n_values) {
        tasks.emplace_back([=] {
          const MomentReport r = mc_moment_check(z, n, count, seed);
          Row row;
          row.identity = "moments";
          row.params = Json{{"z", z},
                            {"n", n},
                            {"count", count},
                            {"target", r.target},
                            {"empirical", r.empirical}};
          row.passed = r.passed;
          row.metric = std::abs(r.empirical - r.target);
          row.tolerance = 3.0 * r.standard_error;
          row.seed = seed;
          return row;
        });
      }
    }
  } else {
    throw ConfigError("unknown test '" + cfg.family + "'");
  }
  return tasks;
}

inline std::vector<std::function<Row()>> plan_inequality(const RunConfig& cfg) {
  if (cfg.turan == cfg.logconvex)
    throw ConfigError("choose exactly one of --turan or --logconvex");
  if (cfg.z.empty()) throw ConfigError("--z is required");
  for (double z : cfg.z)
    if (!(z > 0.0)) throw ConfigError("z values must be positive");
  std::vector<std::function<Row()>> tasks;
  if (cfg.turan) {
    if (cfg.x.empty() || cfg.y.empty() || cfg.p.empty())
      throw ConfigError("--turan needs --x, --y and --p");
    for (double p : cfg.p) {
      if (!(p > 1.0)) throw ConfigError("p must exceed 1");
      const double q = p / (p - 1.0);
      for (double x : cfg.x)
        if (!(x / p > -0.5)) throw ConfigError("x/p must exceed -1/2");
      for (double y : cfg.y)
        if (!(y / q > -0.5)) throw ConfigError("y/q must exceed -1/2");
    }
    for (double x : cfg.x)
      for (double y : cfg.y)
        for (double p : cfg.p)
          for (double z : cfg.z)
            tasks.emplace_back([=] {
              const TuranReport r = check_turan(x, y, p, z);
              Row row;
              row.identity = "turan";
              row.params = Json{{"x", x}, {"y", y}, {"p", p}, {"q", r.q}, {"z", z}};
              row.metric = r.lhs / r.rhs;
              row.tolerance = 1.0 + 1e-9;
              row.passed = r.passed;
              return row;
            });
    return tasks;
  }
  if (cfg.nu.size() < 3) throw ConfigError("--nu needs at least three grid points");
  const std::vector<double> grid = cfg.nu;
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw ConfigError("--nu grid must be strictly increasing");
  for (double v : grid)
    if (std::abs(v) > 30.0) throw ConfigError("|nu| must be <= 30");
  for (double z : cfg.z)
    tasks.emplace_back([=] {
      const LogConvexityReport r = check_logconvexity(grid, z);
      Row row;
      row.identity = "logconvex";
      row.params = Json{{"nu_min", grid.front()},
                        {"nu_max", grid.back()},
                        {"points", grid.size()},
                        {"triples", r.triples_checked},
                        {"z", z}};
      row.metric = std::isfinite(r.min_second_difference) ? r.min_second_difference : 0.0;
      row.tolerance = -1e-9;
      row.passed = r.passed;
      return row;
    });
  return tasks;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_rows(const std::vector<Row>& rows, Format format, std::ostream& os) {
  switch (format) {
    case Format::json:
      for (const auto& r : rows) os << r.to_json().dump() << '\n';
      break;
    case Format::csv:
      os << "identity,params,status,metric,tolerance,seed,witness\n";
      for (const auto& r : rows) {
        const Json j = r.to_json();
        os << csv_escape(r.identity) << ',' << csv_escape(r.params.dump()) << ','
           << (r.passed ? "pass" : "fail") << ',' << j["metric"].dump() << ','
           << j["tolerance"].dump() << ',' << (r.seed ? std::to_string(*r.seed) : "")
           << ',' << (r.witness ? csv_escape(r.witness->dump()) : "") << '\n';
      }
      break;
    case Format::text:
      for (const auto& r : rows) {
        os << (r.passed ? "PASS " : "FAIL ") << r.identity << ' ' << r.params.dump()
           << " metric=" << Json(r.metric).dump() << " tol=" << Json(r.tolerance).dump();
        if (r.seed) os << " seed=" << *r.seed;
        if (r.witness) os << " witness=" << r.witness->dump();
        os << '\n';
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Parses argv and runs the selected command; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric verification of Bessel polynomial identities", "besselid"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string m_spec = "2";
  std::string n_spec = "0";
  std::string z_spec, x_spec, y_spec, p_spec, nu_spec;
  std::string format = "json";
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", cfg.out_path, "Write rows to this path instead of stdout");
  };

  auto* verify = app.add_subcommand("verify", "Exact polynomial identity checks");
  verify->add_option("--family", cfg.family, "general|convolution|theta|f|laguerre|prudnikov")
      ->required();
  verify->add_option("--m", m_spec, "Number of summands, e.g. 2..5");
  verify->add_option("--n", n_spec, "Total degree, e.g. 0..10");
  verify->add_option("--max-m", cfg.max_m, "Ceiling on m (default 5)");
  verify->add_option("--max-n", cfg.max_n, "Ceiling on n (default 12)");
  add_common(verify);

  auto* numeric = app.add_subcommand("numeric", "Floating-point Macdonald-function identities");
  numeric->add_option("--identity", cfg.family, "brychkov|k|fk")->required();
  numeric->add_option("--m", m_spec, "Number of summands");
  numeric->add_option("--n", n_spec, "Total order");
  numeric->add_option("--z", z_spec, "Arguments (for fk: the vector z_1..z_m)")->required();
  numeric->add_option("--tol", cfg.tolerance, "Residual tolerance (default 1e-9)");
  add_common(numeric);

  auto* sample = app.add_subcommand("sample", "Monte Carlo checks of the GIG lemmas");
  sample->add_option("--test", cfg.family, "stability|lemma2|extension|moments")->required();
  sample->add_option("--z", z_spec, "z values")->required();
  sample->add_option("--n", n_spec, "Moment orders for --test moments");
  sample->add_option("--count", cfg.count, "Samples per side (>= 1000)");
  auto* seed_opt = sample->add_option("--seed", seed_value, "RNG seed");
  add_common(sample);

  auto* inequality = app.add_subcommand("inequality", "Turan and log-convexity scans of K_nu");
  inequality->add_flag("--turan", cfg.turan, "Holder/Turan inequality grid");
  inequality->add_flag("--logconvex", cfg.logconvex, "Log-convexity in the order");
  inequality->add_option("--x", x_spec, "x values");
  inequality->add_option("--y", y_spec, "y values");
  inequality->add_option("--p", p_spec, "Holder exponents p > 1");
  inequality->add_option("--nu", nu_spec, "Order grid a:b:step or list");
  inequality->add_option("--z", z_spec, "Arguments")->required();
  add_common(inequality);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  std::vector<Row> rows;
  try {
    cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
    if (n_spec.empty()) n_spec = "0";
    cfg.m_values = parse_int_range(m_spec);
    cfg.n_values = parse_int_range(n_spec);
    if (!z_spec.empty()) cfg.z = parse_real_grid(z_spec);
    if (!x_spec.empty()) cfg.x = parse_real_grid(x_spec);
    if (!y_spec.empty()) cfg.y = parse_real_grid(y_spec);
    if (!p_spec.empty()) cfg.p = parse_real_grid(p_spec);
    if (!nu_spec.empty()) cfg.nu = parse_real_grid(nu_spec);

    std::vector<std::function<Row()>> tasks;
    if (verify->parsed()) {
      cfg.command = "verify";
      tasks = plan_verify(cfg);
    } else if (numeric->parsed()) {
      cfg.command = "numeric";
      tasks = plan_numeric(cfg);
    } else if (sample->parsed()) {
      cfg.command = "sample";
      if (seed_opt->count() > 0) {
        cfg.seed = seed_value;
      } else {
        cfg.seed = std::random_device{}();
        err << "sample: using random seed " << *cfg.seed << '\n';
      }
      if (sample->count("--n") == 0) cfg.n_values = {1};
      tasks = plan_sample(cfg, *cfg.seed);
    } else {
      cfg.command = "inequality";
      tasks = plan_inequality(cfg);
    }
    rows = run_tasks(tasks, worker_count());
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (cfg.out_path.empty()) {
    write_rows(rows, cfg.format, out);
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.out_path << '\n';
      return 2;
    }
    write_rows(rows, cfg.format, file);
  }

  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.passed ? 1 : 0;
  err << cfg.command << ": " << passed << "/" << rows.size() << " passed";
  if (cfg.seed) err << " (seed " << *cfg.seed << ")";
  err << '\n';
  for (const auto& r : rows)
    if (!r.passed)
      err << "  failed: " << r.identity << ' ' << r.params.dump() << '\n';
  return passed == rows.size() ? 0 : 1;
}

}  // namespace besselid::cli

#endif  // BESSELID_TOOLS_CLI_HPP_
