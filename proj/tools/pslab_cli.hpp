#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pslab/pslab.hpp"

namespace pslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// A command-line usage problem detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `start:stop:step` (stop included when aligned) or a single size.
inline std::vector<std::size_t> parse_grid(const std::string& text) {
  const auto parts = [&] {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) out.push_back(item);
    return out;
  }();
  auto value = [&](const std::string& s) {
    const auto v = parse_number<std::size_t>(s);
    if (!v) throw UsageError("bad --n-grid '" + text + "'");
    return *v;
  };
  if (parts.size() == 1) return {value(parts[0])};
  if (parts.size() != 3) throw UsageError("--n-grid expects start:stop:step");
  const std::size_t start = value(parts[0]), stop = value(parts[1]), step = value(parts[2]);
  if (step == 0 || stop < start) throw UsageError("--n-grid needs step > 0 and stop >= start");
  std::vector<std::size_t> grid;
  for (std::size_t n = start; n <= stop; n += step) grid.push_back(n);
  return grid;
}

namespace detail {

// Writes to the file at `path`, or to `fallback` when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }
  [[nodiscard]] bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

inline Table read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Table::parse(in);
}

inline std::vector<double> column(const Table& t, const std::string& name) {
  try {
    return t.numeric(name);
  } catch (const std::out_of_range&) {
    throw UsageError("missing column '" + name + "'");
  }
}

inline void print_fit(std::ostream& out, const stats::RegressionFit& fit) {
  for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
    out << "  " << fit.labels[j] << ": " << format_double(fit.coefficients[j]) << '\n';
  }
  out << "R^2: " << format_double(fit.r_squared) << '\n'
      << "adjusted R^2: " << format_double(fit.adj_r_squared) << '\n';
}

inline void write_anova_csv(std::ostream& out, const stats::AnovaTable& t) {
  auto cell = [](double v) -> std::string {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return "inf";
    return format_double(v);
  };
  out << "source,df,seq_ss,adj_ss,adj_ms,f,p\n";
  for (const auto& r : t.rows) {
    out << r.source << ',' << r.df << ',' << cell(r.seq_ss) << ',' << cell(r.adj_ss) << ',' << cell(r.ms) << ','
        << cell(r.f) << ',' << cell(r.p) << '\n';
  }
}

}  // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition Sort complexity lab", "pslab"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path;
  auto* seed_opt = app.add_option("--seed", seed, "Base seed");
  auto* out_opt = app.add_option("--out", out_path, "Output path");
  app.add_option("--config", config_path, "key=value settings file");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate one input array as CSV");
  std::string gen_dist;
  std::size_t gen_n = 0;
  std::int64_t gen_m = 1;
  double gen_p = 0.5;
  gen->add_option("--dist", gen_dist, "uniform|normal|cauchy|binomial|sorted|reversed|allequal")->required();
  gen->add_option("--n", gen_n, "Array size")->required();
  auto* gen_m_opt = gen->add_option("--m", gen_m, "Binomial trials")->check(CLI::PositiveNumber);
  gen->add_option("--p", gen_p, "Binomial success probability")->check(CLI::Range(0.0, 1.0));

  // bench
  auto* bench = app.add_subcommand("bench", "Timed, instrumented runs over a size grid");
  std::string bench_alg, bench_dist = "cauchy", bench_grid;
  std::int64_t bench_m = 1;
  double bench_p = 0.5;
  std::size_t bench_reps = 0, bench_readings = 0;
  bool no_warmup = false;
  bench->add_option("--alg", bench_alg, "partition|quick|heap")->required();
  bench->add_option("--dist", bench_dist, "Input distribution");
  auto* bench_m_opt = bench->add_option("--m", bench_m, "Binomial trials")->check(CLI::PositiveNumber);
  bench->add_option("--p", bench_p, "Binomial success probability")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--n-grid", bench_grid, "start:stop:step")->required();
  auto* reps_opt = bench->add_option("--reps", bench_reps, "Replicates per n")->check(CLI::PositiveNumber);
  auto* readings_opt =
      bench->add_option("--readings", bench_readings, "Timed readings per record")->check(CLI::PositiveNumber);
  bench->add_flag("--no-warmup", no_warmup, "Skip the discarded warmup trial");

  // fit
  auto* fit = app.add_subcommand("fit", "Regression fits on CSV columns");
  std::string fit_model, fit_in, fit_x, fit_y, fit_plot;
  double fit_eps = 0.0;
  fit->add_option("--model", fit_model, "nlogn | poly:<d> | select:<dmax>")->required();
  fit->add_option("--in", fit_in, "Input CSV")->required();
  fit->add_option("--x", fit_x, "Regressor column")->required();
  fit->add_option("--y", fit_y, "Response column")->required();
  auto* eps_opt = fit->add_option("--eps", fit_eps, "Degree-selection threshold");
  fit->add_option("--plot-out", fit_plot, "Write x,y,yhat CSV here");

  // anova
  auto* anova = app.add_subcommand("anova", "Balanced three-factor ANOVA");
  std::string anova_in, anova_factors = "n,m,p", anova_response = "elapsed_s", anova_csv;
  anova->add_option("--in", anova_in, "Input CSV")->required();
  anova->add_option("--factors", anova_factors, "Three factor columns, comma separated");
  anova->add_option("--response", anova_response, "Response column");
  anova->add_option("--csv-out", anova_csv, "Also write the table as CSV here");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Check published tables or run a fresh factorial");
  std::string target;
  repro->add_option("target", target, "table1|table3|table4|table5|fresh-factorial")
      ->required()
      ->check(CLI::IsMember({"table1", "table3", "table4", "table5", "fresh-factorial"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) load_config(config_path, cfg);
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (out_opt->count() > 0) cfg.out = out_path;

    if (gen->parsed()) {
      const auto spec = make_distribution(gen_dist, gen_m, gen_p);
      if (!spec) throw UsageError("unknown distribution '" + gen_dist + "'");
      if (gen_dist == "binomial" && gen_m_opt->count() == 0) throw UsageError("binomial needs --m");
      Rng rng(cfg.seed);
      const auto keys = generate_array(*spec, gen_n, rng);
      detail::Sink sink(cfg.out, out);
      auto& os = sink.stream();
      os << "value\n";
      std::visit(
          [&](const auto& v) {
            for (const auto k : v) {
              if constexpr (std::is_floating_point_v<std::decay_t<decltype(k)>>) os << format_double(k) << '\n';
              else os << k << '\n';
            }
          },
          keys);
      return os ? kExitOk : kExitFail;
    }

    if (bench->parsed()) {
      const auto alg = parse_algorithm(bench_alg);
      if (!alg) throw UsageError("unknown algorithm '" + bench_alg + "'");
      const auto spec = make_distribution(bench_dist, bench_m, bench_p);
      if (!spec) throw UsageError("unknown distribution '" + bench_dist + "'");
      if (bench_dist == "binomial" && bench_m_opt->count() == 0) throw UsageError("binomial needs --m");
      GridPlan plan;
      plan.algorithm = *alg;
      plan.spec = *spec;
      plan.n_values = parse_grid(bench_grid);
      plan.replicates = reps_opt->count() > 0 ? bench_reps : cfg.grid_reps;
      plan.readings = readings_opt->count() > 0 ? bench_readings : cfg.readings;
      plan.base_seed = cfg.seed;
      plan.warmup = !no_warmup;
      const auto result = run_grid(plan);

      // Trials go to --out when given and the summary to stdout; otherwise
      // the trial CSV takes stdout and the summary moves to stderr.
      detail::Sink sink(cfg.out, out);
      write_csv(sink.stream(), result.records);
      if (!sink.stream()) throw std::runtime_error("write failed");
      std::ostream& summary = sink.to_file() ? out : err;
      char line[200];
      std::snprintf(line, sizeof line, "%8s %5s %12s %12s %16s %14s %14s\n", "n", "reps", "mean_s", "median_s",
                    "mean_cmp", "mean_swaps", "mean_moves");
      summary << line;
      std::vector<double> ns, times, cmps;
      for (const auto& row : result.summary) {
        std::snprintf(line, sizeof line, "%8zu %5zu %12.5f %12.5f %16.1f %14.1f %14.1f\n", row.n, row.replicates,
                      row.mean_elapsed_s, row.median_elapsed_s, row.mean_comparisons, row.mean_swaps,
                      row.mean_moves);
        summary << line;
        ns.push_back(static_cast<double>(row.n));
        times.push_back(row.mean_elapsed_s);
        cmps.push_back(row.mean_comparisons);
      }
      if (ns.size() >= 3 && ns.front() >= 2.0) {
        const auto tf = stats::fit_nlogn(ns, times);
        const auto cf = stats::fit_nlogn(ns, cmps);
        summary << "n log2 n fit: R^2(time) = " << format_double(tf.r_squared)
                << ", R^2(comparisons) = " << format_double(cf.r_squared) << '\n';
      }
      return kExitOk;
    }

    if (fit->parsed()) {
      const auto table = detail::read_table(fit_in);
      const auto x = detail::column(table, fit_x);
      const auto y = detail::column(table, fit_y);
      const double eps = eps_opt->count() > 0 ? fit_eps : cfg.epsilon;
      auto degree_of = [&](const std::string& prefix) {
        const auto d = parse_number<int>(std::string_view(fit_model).substr(prefix.size()));
        if (!d) throw UsageError("bad --model '" + fit_model + "'");
        return *d;
      };

      stats::RegressionFit result;
      if (fit_model == "nlogn") {
        result = stats::fit_nlogn(x, y);
        out << "model: y = b0 + b1 * n log2 n\n";
      } else if (fit_model.rfind("poly:", 0) == 0) {
        const int d = degree_of("poly:");
        result = stats::fit_poly(x, y, d);
        out << "model: polynomial of degree " << d << " (ascending powers)\n";
      } else if (fit_model.rfind("select:", 0) == 0) {
        const auto sel = stats::select_degree(x, y, degree_of("select:"), eps);
        out << "degree  R^2          adjusted R^2\n";
        for (const auto& r : sel.report) {
          char line[96];
          std::snprintf(line, sizeof line, "%6d  %.10f  %.10f\n", r.degree, r.r_squared, r.adj_r_squared);
          out << line;
        }
        out << "chosen degree: " << sel.chosen << '\n';
        result = stats::fit_poly(x, y, sel.chosen);
      } else {
        throw UsageError("unknown --model '" + fit_model + "'");
      }
      detail::print_fit(out, result);
      if (!fit_plot.empty()) {
        std::ofstream plot(fit_plot, std::ios::binary);
        if (!plot) throw std::runtime_error("cannot open " + fit_plot + " for writing");
        plot << "x,y,yhat\n";
        for (std::size_t i = 0; i < x.size(); ++i) {
          plot << format_double(x[i]) << ',' << format_double(y[i]) << ',' << format_double(result.fitted[i]) << '\n';
        }
      }
      return kExitOk;
    }

    if (anova->parsed()) {
      const auto names = split_fields(anova_factors);
      if (names.size() != 3) throw UsageError("--factors needs exactly three columns");
      const auto table = detail::read_table(anova_in);
      const auto a = detail::column(table, std::string(names[0]));
      const auto b = detail::column(table, std::string(names[1]));
      const auto c = detail::column(table, std::string(names[2]));
      const auto y = detail::column(table, anova_response);
      std::vector<double> la, lb, lc;
      const auto obs = stats::observations_from_columns(a, b, c, y);
      (void)stats::level_indices(a, &la);
      (void)stats::level_indices(b, &lb);
      (void)stats::level_indices(c, &lc);
      try {
        const auto result =
            stats::anova_3factor(obs, {std::string(names[0]), std::string(names[1]), std::string(names[2])});
        out << "General Linear Model: " << anova_response << " versus " << names[0] << ", " << names[1] << ", "
            << names[2] << "\n\n";
        stats::print_anova(out, result);
        if (!anova_csv.empty()) {
          std::ofstream csv(anova_csv, std::ios::binary);
          if (!csv) throw std::runtime_error("cannot open " + anova_csv + " for writing");
          detail::write_anova_csv(csv, result);
        }
      } catch (const stats::UnbalancedDesignError& e) {
        err << "error: " << e.what() << "\ncell counts (" << names[0] << ", " << names[1] << ", " << names[2]
            << "): count\n";
        for (const auto& cell : e.cells()) {
          err << "  (" << format_double(la[cell.a]) << ", " << format_double(lb[cell.b]) << ", "
              << format_double(lc[cell.c]) << "): " << cell.count << '\n';
        }
        return kExitFail;
      }
      return kExitOk;
    }

    if (repro->parsed()) {
      ReproReport report;
      if (target == "table1") report = reproduce_table1();
      else if (target == "table3") {
        report = reproduce_table3();
        stats::print_anova(out, table2_anova(3));
        out << '\n';
      } else if (target == "table4") report = reproduce_table4();
      else if (target == "table5") report = reproduce_table5();
      else {
        FactorialPlan plan;
        plan.n_levels = cfg.n_levels;
        plan.m_levels = cfg.m_levels;
        plan.p_levels = cfg.p_levels;
        plan.replicates = cfg.factorial_reps;
        plan.readings = cfg.readings;
        plan.base_seed = cfg.seed;
        stats::AnovaTable table;
        report = reproduce_fresh_factorial(plan, &table);
        stats::print_anova(out, table);
        out << '\n';
      }
      print_report(out, report);
      return report.pass() ? kExitOk : kExitFail;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace pslab::cli
