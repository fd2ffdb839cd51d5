#include "dunkl/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dunkl/estimates.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/suites.hpp"

#ifndef DUNKLPOT_DEFAULT_BASELINES
#define DUNKLPOT_DEFAULT_BASELINES ""
#endif

namespace dunkl {
namespace {

/// Raised for failures that should map to the numeric exit code, carrying the offending point.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const Vector& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += format_value(v[i]);
  }
  return s;
}

std::string point_text(const Vector& v) { return "(" + join(v, ',') + ")"; }

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidParams("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string pick_format(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw InvalidParams("format must be csv or json");
  return f;
}

bool is_dyson(KernelKind kind) {
  return kind == KernelKind::NewtonDyson || kind == KernelKind::GreenDyson || kind == KernelKind::PoissonDyson;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const Params p = make_params(cfg.d, cfg.k);
  const KernelKind kind = parse_kernel_kind(cfg.kernel);
  const std::string format = pick_format(cfg, "csv");
  if (cfg.basis != "adapted" && cfg.basis != "a1") throw InvalidParams("basis must be adapted or a1");
  const bool a1_input = cfg.basis == "a1";
  if ((a1_input || is_dyson(kind)) && cfg.d != 2) throw InvalidParams("the A_1 presentation needs d = 2");

  std::vector<Vector> xs = parse_point_list(cfg.x);
  std::vector<Vector> ys = parse_point_list(cfg.y);
  if (xs.empty() || ys.empty()) throw InvalidParams("eval needs --x and --y");
  if (xs.size() != ys.size() && xs.size() != 1 && ys.size() != 1) {
    throw InvalidParams("--x and --y must list the same number of points, or one of them a single point");
  }
  for (const auto* list : {&xs, &ys}) {
    for (const Vector& v : *list) {
      if (static_cast<int>(v.size()) != cfg.d) {
        throw InvalidParams("point " + point_text(v) + " does not have d = " + std::to_string(cfg.d) + " coordinates");
      }
    }
  }

  const std::size_t rows = std::max(xs.size(), ys.size());
  std::vector<double> values(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const Vector& x = xs[xs.size() == 1 ? 0 : i];
    const Vector& y = ys[ys.size() == 1 ? 0 : i];
    const std::string where = "at x=" + point_text(x) + " y=" + point_text(y);
    try {
      if (is_dyson(kind)) {
        const Vector xa = a1_input ? x : to_a1_basis(x);
        const Vector ya = a1_input ? y : to_a1_basis(y);
        values[i] = evaluate(kind, p, xa, ya, cfg.tol).value();
      } else {
        const Vector xa = a1_input ? from_a1_basis(x) : x;
        const Vector ya = a1_input ? from_a1_basis(y) : y;
        values[i] = evaluate(kind, p, xa, ya, cfg.tol).value();
      }
    } catch (const ToleranceNotReached& e) {
      throw NumericFailure(std::string(e.what()) + " " + where);
    } catch (const SlowConvergence& e) {
      throw NumericFailure(std::string(e.what()) + " " + where);
    } catch (const NonFinite& e) {
      throw NumericFailure(std::string(e.what()) + " " + where);
    } catch (const Error& e) {
      throw InvalidParams(std::string(e.what()) + " " + where);
    }
    if (std::isnan(values[i])) throw NumericFailure("kernel value is not a number " + where);
  }

  const std::string name(to_string(kind));
  if (format == "csv") {
    out << "kernel,d,k,x,y,value\n";
    for (std::size_t i = 0; i < rows; ++i) {
      out << name << ',' << cfg.d << ',' << format_value(cfg.k) << ',' << join(xs[xs.size() == 1 ? 0 : i], ';')
          << ',' << join(ys[ys.size() == 1 ? 0 : i], ';') << ',' << format_value(values[i]) << '\n';
    }
  } else {
    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows; ++i) {
      nlohmann::ordered_json r;
      r["kernel"] = name;
      r["d"] = cfg.d;
      r["k"] = cfg.k;
      r["x"] = std::vector<double>(xs[xs.size() == 1 ? 0 : i].begin(), xs[xs.size() == 1 ? 0 : i].end());
      r["y"] = std::vector<double>(ys[ys.size() == 1 ? 0 : i].begin(), ys[ys.size() == 1 ? 0 : i].end());
      if (std::isfinite(values[i])) {
        r["value"] = values[i];
      } else {
        r["value"] = "inf";
      }
      rows_json.push_back(std::move(r));
    }
    out << rows_json.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.theorem.empty()) throw InvalidParams("scan needs --theorem");
  const Theorem t = parse_theorem(cfg.theorem);
  const Params p = make_params(cfg.d, cfg.k);
  const int n = cfg.n < 0 ? 10000 : cfg.n;
  if (n <= 0) throw InvalidParams("scan needs a positive sample count");
  const std::string format = pick_format(cfg, "csv");

  ScanReport r;
  try {
    r = scan_theorem(t, p, n, cfg.seed, cfg.tol);
  } catch (const InvalidParams&) {
    throw;
  } catch (const Error& e) {
    throw NumericFailure(e.what());
  }

  if (format == "csv") {
    out << scan_csv_header() << '\n' << to_csv_row(r) << '\n';
  } else {
    nlohmann::ordered_json j;
    j["theorem"] = r.theorem;
    j["d"] = r.d;
    j["k"] = r.k;
    j["n_samples"] = r.n_samples;
    j["seed"] = r.seed;
    j["ratio_min"] = r.ratio_min;
    j["ratio_max"] = r.ratio_max;
    j["argmin_x"] = std::vector<double>(r.argmin_x.begin(), r.argmin_x.end());
    j["argmin_y"] = std::vector<double>(r.argmin_y.begin(), r.argmin_y.end());
    j["argmax_x"] = std::vector<double>(r.argmax_x.begin(), r.argmax_x.end());
    j["argmax_y"] = std::vector<double>(r.argmax_y.begin(), r.argmax_y.end());
    out << j.dump(2) << '\n';
  }

  auto worst = [&] {
    return "band [" + format_value(r.ratio_min) + ", " + format_value(r.ratio_max) + "]; min at x=" +
           point_text(r.argmin_x) + " y=" + point_text(r.argmin_y) + "; max at x=" + point_text(r.argmax_x) +
           " y=" + point_text(r.argmax_y);
  };
  if (!r.finite()) {
    err << "scan " << r.theorem << ": ratio band not finite, " << worst() << '\n';
    return kExitBand;
  }
  const std::string path = cfg.baseline.empty() ? std::string(DUNKLPOT_DEFAULT_BASELINES) : cfg.baseline;
  std::vector<ScanReport> baselines;
  if (!path.empty() && std::filesystem::exists(path)) baselines = read_scan_reports(path);
  const BaselineCheck b = compare_to_baseline(r, baselines);
  if (!b.found) {
    err << "scan " << r.theorem << ": no stored baseline for d=" << r.d << " k=" << format_value(r.k)
        << " n=" << r.n_samples << " seed=" << r.seed << "; band is finite\n";
    return kExitOk;
  }
  if (!b.within) {
    err << "scan " << r.theorem << ": band left the stored [" << format_value(b.baseline_min) << ", "
        << format_value(b.baseline_max) << "] by more than 10%, " << worst() << '\n';
    return kExitBand;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.suite.empty()) throw InvalidParams("verify needs --suite");
  const std::string format = pick_format(cfg, "json");
  std::vector<Suite> suites;
  if (cfg.suite == "all") {
    suites = all_suites();
  } else {
    suites.push_back(parse_suite(cfg.suite));
  }
  const Params p = make_params(cfg.d, cfg.k);
  SuiteOptions opts;
  opts.n = std::max(cfg.n, 0);
  opts.seed = cfg.seed;
  opts.tol = cfg.tol;

  bool all_passed = true;
  std::vector<SuiteReport> reports;
  for (Suite s : suites) {
    reports.push_back(run_suite(s, p, opts));
    const SuiteReport& r = reports.back();
    if (!r.passed()) {
      all_passed = false;
      for (const SuiteCheck& c : r.checks) {
        if (c.passed()) continue;
        err << r.suite << ": " << c.name << " failed " << c.failures << " of " << c.count << ", max residual "
            << format_value(c.max_residual) << " (tolerance " << format_value(c.tolerance) << "), worst "
            << c.worst << '\n';
      }
    }
  }

  if (format == "json") {
    if (reports.size() == 1) {
      out << to_json(reports.front()) << '\n';
    } else {
      out << "[\n";
      for (std::size_t i = 0; i < reports.size(); ++i) out << to_json(reports[i]) << (i + 1 < reports.size() ? ",\n" : "\n");
      out << "]\n";
    }
  } else {
    out << "suite,d,k,check,count,failures,max_residual,tolerance,passed\n";
    for (const SuiteReport& r : reports) {
      for (const SuiteCheck& c : r.checks) {
        out << r.suite << ',' << r.d << ',' << format_value(r.k) << ",\"" << c.name << "\"," << c.count << ','
            << c.failures << ',' << format_value(c.max_residual) << ',' << format_value(c.tolerance) << ','
            << (c.passed() ? "true" : "false") << '\n';
      }
    }
  }
  return all_passed ? kExitOk : kExitVerify;
}

}  // namespace

std::vector<Vector> parse_point_list(const std::string& text) {
  std::vector<Vector> out;
  std::stringstream points(text);
  std::string item;
  while (std::getline(points, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> coords;
    std::stringstream cs(item);
    std::string c;
    while (std::getline(cs, c, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        throw InvalidParams("malformed coordinate '" + c + "' in point list '" + text + "'");
      }
      if (c.find_first_not_of(" \t", used) != std::string::npos) {
        throw InvalidParams("malformed coordinate '" + c + "' in point list '" + text + "'");
      }
      coords.push_back(v);
    }
    out.emplace_back(std::move(coords));
  }
  return out;
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command != "eval" && cfg.command != "scan" && cfg.command != "verify") {
      throw InvalidParams("command must be eval, scan or verify");
    }
    if (!(cfg.tol > 0.0) || !(cfg.tol < 1.0)) throw InvalidParams("tolerance must lie in (0, 1)");
    Output sink(cfg.out, out);
    if (cfg.command == "eval") return cmd_eval(cfg, sink.get());
    if (cfg.command == "scan") return cmd_scan(cfg, sink.get(), err);
    return cmd_verify(cfg, sink.get(), err);
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const InvalidParams& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Kernels, estimate scans and verification suites for the rank-one Dunkl Laplacian", "dunklpot"};
  std::string positional;
  app.add_option("--command", cfg.command, "eval, scan or verify");
  app.add_option("command_name", positional, "command given positionally");
  app.add_option("--d", cfg.d, "dimension");
  app.add_option("--k", cfg.k, "multiplicity");
  app.add_option("--kernel", cfg.kernel, "kernel for eval (newton, green, poisson, with -w or -dyson)");
  app.add_option("--theorem", cfg.theorem, "estimate to scan");
  app.add_option("--suite", cfg.suite, "verification suite, or all");
  app.add_option("--x", cfg.x, "points x, ';' between points and ',' between coordinates");
  app.add_option("--y", cfg.y, "points y");
  app.add_option("--n", cfg.n, "sample count");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--tol", cfg.tol, "relative quadrature tolerance");
  app.add_option("--out", cfg.out, "output file");
  app.add_option("--format", cfg.format, "csv or json");
  app.add_option("--basis", cfg.basis, "adapted or a1");
  app.add_option("--baseline", cfg.baseline, "scan baseline file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  }
  if (cfg.command.empty()) cfg.command = positional;
  if (!positional.empty() && positional != cfg.command) {
    err << "invalid configuration: conflicting commands '" << positional << "' and '" << cfg.command << "'\n";
    return kExitConfig;
  }
  return run(cfg, out, err);
}

}  // namespace dunkl
