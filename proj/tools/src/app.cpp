#include "pgdus/tools/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "pgdus/dataset.hpp"
#include "pgdus/distribution.hpp"
#include "pgdus/error.hpp"
#include "pgdus/estimation.hpp"
#include "pgdus/model_select.hpp"
#include "pgdus/tools/render.hpp"

namespace pgdus::tools {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string model = "pgduse";
  std::vector<std::string> models;
  std::string data = "lawless";
  std::vector<double> params;
  std::string fn = "pdf";
  std::vector<double> at;
  std::size_t n = 0;
  std::uint64_t seed = FitOptions{}.seed;
  std::string format = "table";
  std::string out;
  std::size_t grid_points = 512;
  double grid_quantile = 0.999;
  std::string pvalue_method = "asymptotic";
  std::size_t starts = FitOptions{}.starts;
  double grad_tol = FitOptions{}.grad_tol;
  bool parallel = false;
};

FitOptions fit_options(const RunConfig& c) {
  FitOptions o;
  o.starts = c.starts;
  o.grad_tol = c.grad_tol;
  o.seed = c.seed;
  o.parallel = c.parallel;
  return o;
}

std::vector<ModelKind> model_list(const RunConfig& c) {
  if (c.models.empty()) return {kAllModels.begin(), kAllModels.end()};
  std::vector<ModelKind> kinds;
  for (const auto& name : c.models) kinds.push_back(parse_model_kind(name));
  return kinds;
}

ParamVector explicit_params(const RunConfig& c) {
  if (c.params.empty()) throw Error(Errc::ArityMismatch, "--params is required for this command");
  return validate_params(parse_model_kind(c.model), c.params);
}

// Writes either to --out or to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_fit(const RunConfig& c, std::ostream& out) {
  const Dataset data = load_dataset(c.data);
  const PValueMethod method = parse_pvalue_method(c.pvalue_method);
  const Format format = parse_format(c.format);
  const ModelKind kind = parse_model_kind(c.model);

  const FitResult fit = fit_mle(kind, data, fit_options(c));
  const std::size_t k = arity(kind);
  const double d = ks_statistic(data, fit.params);
  const FitReport report{fit,
                         data.size(),
                         aic(fit.log_likelihood, k),
                         bic(fit.log_likelihood, k, data.size()),
                         d,
                         ks_pvalue(d, data.size(), method),
                         method};
  Sink sink(c.out, out);
  render(sink.stream(), report, format);
  return fit.converged ? kOk : kNotConverged;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  const Dataset data = load_dataset(c.data);
  const Format format = parse_format(c.format);
  const CompareOptions opts{fit_options(c), parse_pvalue_method(c.pvalue_method)};
  const auto kinds = model_list(c);
  const ComparisonTable table = compare(data, kinds, opts);
  Sink sink(c.out, out);
  render(sink.stream(), table, format);
  return table.all_converged() ? kOk : kNotConverged;
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const Format format = parse_format(c.format);
  const ParamVector p = explicit_params(c);

  std::function<double(double)> fn;
  if (c.fn == "pdf") fn = [&](double x) { return pdf(p, x); };
  else if (c.fn == "cdf") fn = [&](double x) { return cdf(p, x); };
  else if (c.fn == "survival") fn = [&](double x) { return survival(p, x); };
  else if (c.fn == "hazard") fn = [&](double x) { return hazard(p, x); };
  else if (c.fn == "quantile") fn = [&](double q) { return quantile(p, q); };
  else {
    throw Error(Errc::UnknownName, "unknown function '" + c.fn +
                                       "' (expected pdf, cdf, survival, hazard or quantile)");
  }

  std::vector<EvalRow> rows;
  bool any_error = false;
  for (double x : c.at) {
    try {
      rows.push_back({x, fn(x), {}, {}});
    } catch (const Error& e) {
      rows.push_back({x, NAN, std::string(to_string(e.code())), e.what()});
      any_error = true;
    }
  }
  Sink sink(c.out, out);
  render(sink.stream(), c.fn, rows, format);
  return any_error ? kFailure : kOk;
}

int cmd_sample(const RunConfig& c, std::ostream& out) {
  const ParamVector p = explicit_params(c);
  Sink sink(c.out, out);
  for (double v : sample(p, c.n, c.seed)) sink.stream() << full_number(v) << '\n';
  return kOk;
}

void write_grid(const fs::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& columns) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  for (std::size_t j = 0; j < header.size(); ++j) f << (j ? "," : "") << header[j];
  f << '\n';
  for (std::size_t i = 0; i < columns.front().size(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) f << (j ? "," : "") << full_number(columns[j][i]);
    f << '\n';
  }
  if (!f) throw Error(Errc::IoError, "write failed for '" + path.string() + "'");
}

int cmd_plotdata(const RunConfig& c, std::ostream& out) {
  if (c.grid_points < 2) throw Error(Errc::DomainError, "--grid-points must be at least 2");
  if (!(c.grid_quantile > 0.0 && c.grid_quantile < 1.0)) {
    throw Error(Errc::DomainError, "--grid-quantile must lie in (0, 1)");
  }
  const Dataset data = load_dataset(c.data);

  // Explicit parameters describe a single model; otherwise fit every model
  // and take the best by AIC as the grid reference.
  std::vector<ParamVector> models;
  bool converged = true;
  if (!c.params.empty()) {
    models.push_back(explicit_params(c));
  } else {
    const CompareOptions opts{fit_options(c), parse_pvalue_method(c.pvalue_method)};
    const ComparisonTable table = compare(data, model_list(c), opts);
    for (const auto& row : table.rows) models.push_back(row.params);
    converged = table.all_converged();
  }

  const double upper = std::max(quantile(models.front(), c.grid_quantile), data.max());
  std::vector<double> xs(c.grid_points);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = upper * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
  }
  auto tabulate = [&](auto&& f, const ParamVector& p) {
    std::vector<double> col(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) col[i] = f(p, xs[i]);
    return col;
  };

  std::vector<std::string> header{"x"};
  std::vector<std::vector<double>> density{xs}, hazards{xs}, overlay{xs};
  const EcdfView empirical(data);
  std::vector<double> ecdf_col(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ecdf_col[i] = empirical(xs[i]);
  overlay.push_back(ecdf_col);

  for (const auto& p : models) {
    header.emplace_back(to_string(p.kind()));
    density.push_back(tabulate([](const ParamVector& q, double x) { return pdf(q, x); }, p));
    hazards.push_back(tabulate([](const ParamVector& q, double x) { return hazard(q, x); }, p));
    overlay.push_back(tabulate([](const ParamVector& q, double x) { return cdf(q, x); }, p));
  }

  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create directory '" + dir.string() + "': " + ec.message());

  std::vector<std::string> overlay_header = header;
  overlay_header.insert(overlay_header.begin() + 1, "ecdf");
  write_grid(dir / "density.csv", header, density);
  write_grid(dir / "hazard.csv", header, hazards);
  write_grid(dir / "ecdf.csv", overlay_header, overlay);
  out << "wrote " << (dir / "density.csv").string() << ", " << (dir / "hazard.csv").string()
      << ", " << (dir / "ecdf.csv").string() << " (" << xs.size() << " rows, x in [0, "
      << short_number(upper) << "])\n";
  return converged ? kOk : kNotConverged;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Fit, compare and evaluate PGDUSE-family lifetime models", "pgdus"};
  app.require_subcommand(1, 1);

  auto add_data = [&](CLI::App* s) {
    s->add_option("--data", c.data, "Dataset file, or the builtin name 'lawless'")
        ->capture_default_str();
  };
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", c.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
  };
  auto add_fit_flags = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "Seed for multi-start jitter")->capture_default_str();
    s->add_option("--starts", c.starts, "Optimizer starts")->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--grad-tol", c.grad_tol, "Convergence tolerance on the scaled score")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_flag("--parallel", c.parallel, "Run optimizer starts concurrently");
    s->add_option("--pvalue-method", c.pvalue_method, "KS p-value: asymptotic, exact or auto")
        ->check(CLI::IsMember({"asymptotic", "exact", "auto"}))
        ->capture_default_str();
  };
  auto add_out = [&](CLI::App* s, const std::string& what) { s->add_option("--out", c.out, what); };
  auto add_params = [&](CLI::App* s) {
    s->add_option("--params", c.params, "Comma-separated parameters in model order")
        ->delimiter(',');
  };

  auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit of one model");
  fit->add_option("--model", c.model, "pgduse, gduse, duse, kme or ed")->capture_default_str();
  add_data(fit);
  add_format(fit);
  add_fit_flags(fit);
  add_out(fit, "Write the report to this file");

  auto* cmp = app.add_subcommand("compare", "Fit several models and rank them by AIC");
  cmp->add_option("--models", c.models, "Models to compare (default: all five)")->delimiter(',');
  add_data(cmp);
  add_format(cmp);
  add_fit_flags(cmp);
  add_out(cmp, "Write the table to this file");

  auto* ev = app.add_subcommand("eval", "Evaluate a distribution function at given points");
  ev->add_option("--model", c.model, "Model name")->capture_default_str();
  add_params(ev);
  ev->add_option("--fn", c.fn, "pdf, cdf, survival, hazard or quantile")->capture_default_str();
  ev->add_option("--at", c.at, "Comma-separated evaluation points")->delimiter(',')->required();
  add_format(ev);
  add_out(ev, "Write the values to this file");

  auto* smp = app.add_subcommand("sample", "Draw a seeded random sample, one value per line");
  smp->add_option("--model", c.model, "Model name")->capture_default_str();
  add_params(smp);
  smp->add_option("--n", c.n, "Sample size")->required();
  smp->add_option("--seed", c.seed, "Generator seed")->capture_default_str();
  add_out(smp, "Write the sample to this file");

  auto* plot = app.add_subcommand("plotdata", "Write density, hazard and ecdf grids as csv");
  plot->add_option("--model", c.model, "Model for explicit --params")->capture_default_str();
  plot->add_option("--models", c.models, "Models to fit (default: all five)")->delimiter(',');
  add_params(plot);
  add_data(plot);
  add_fit_flags(plot);
  plot->add_option("--grid-points", c.grid_points, "Rows per grid")->capture_default_str();
  plot->add_option("--grid-quantile", c.grid_quantile,
                   "Upper grid end as a quantile of the best model")
      ->capture_default_str();
  add_out(plot, "Output directory (default: current directory)");

  std::vector<const char*> argv{"pgdus"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (fit->parsed()) return cmd_fit(c, out);
    if (cmp->parsed()) return cmd_compare(c, out);
    if (ev->parsed()) return cmd_eval(c, out);
    if (smp->parsed()) return cmd_sample(c, out);
    if (plot->parsed()) return cmd_plotdata(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace pgdus::tools
