#include "pgdus/tools/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "pgdus/error.hpp"

namespace pgdus::tools {

namespace {

using nlohmann::json;

json number_json(double v) {
  // json has no inf/nan; null keeps the document valid
  return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string params_text(const ParamVector& p, bool full) {
  const auto names = param_names(p.kind());
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += std::string(names[i]) + "=" + (full ? full_number(p[i]) : short_number(p[i]));
  }
  return s;
}

// Left-aligned first column, right-aligned numbers.
void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  }
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::size_t pad = width[j] - row[j].size();
      if (j == 0) {
        line += row[j] + std::string(pad, ' ');
      } else {
        line += "  " + std::string(pad, ' ') + row[j];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
}

std::string param_cell(const ParamVector& p, std::size_t i) {
  return i < p.size() ? full_number(p[i]) : std::string();
}

std::string param_name_cell(const ParamVector& p, std::size_t i) {
  return i < p.size() ? std::string(param_names(p.kind())[i]) : std::string();
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "table") return Format::Table;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error(Errc::UnknownName, "unknown format '" + name + "' (expected table, csv or json)");
}

std::string short_number(double v) {
  std::ostringstream os;
  os << std::setprecision(7) << v;
  return os.str();
}

std::string full_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json params_json(const ParamVector& p) {
  json j = json::object();
  const auto names = param_names(p.kind());
  for (std::size_t i = 0; i < p.size(); ++i) j[std::string(names[i])] = p[i];
  return j;
}

void render(std::ostream& os, const FitReport& r, Format f) {
  const std::string model(to_string(r.fit.kind));
  switch (f) {
    case Format::Json: {
      json j = {{"model", model},
                {"params", params_json(r.fit.params)},
                {"log_likelihood", number_json(r.fit.log_likelihood)},
                {"aic", number_json(r.aic)},
                {"bic", number_json(r.bic)},
                {"ks_d", number_json(r.ks_d)},
                {"p_value", number_json(r.p_value)},
                {"converged", r.fit.converged},
                {"iterations", r.fit.iterations},
                {"grad_norm", number_json(r.fit.grad_norm)},
                {"start_used", r.fit.start_used},
                {"n", r.n},
                {"pvalue_method", std::string(to_string(r.pvalue_method))}};
      os << j.dump(2) << '\n';
      return;
    }
    case Format::Csv: {
      os << "model,param1_name,param1,param2_name,param2,log_likelihood,aic,bic,ks_d,p_value,"
            "converged,iterations,grad_norm\n";
      const auto& p = r.fit.params;
      os << model << ',' << param_name_cell(p, 0) << ',' << param_cell(p, 0) << ','
         << param_name_cell(p, 1) << ',' << param_cell(p, 1) << ','
         << full_number(r.fit.log_likelihood) << ',' << full_number(r.aic) << ','
         << full_number(r.bic) << ',' << full_number(r.ks_d) << ',' << full_number(r.p_value)
         << ',' << (r.fit.converged ? "true" : "false") << ',' << r.fit.iterations << ','
         << full_number(r.fit.grad_norm) << '\n';
      return;
    }
    case Format::Table: {
      std::vector<std::vector<std::string>> cells = {{"model", model}};
      const auto names = param_names(r.fit.kind);
      for (std::size_t i = 0; i < r.fit.params.size(); ++i) {
        cells.push_back({std::string(names[i]), short_number(r.fit.params[i])});
      }
      cells.push_back({"log_likelihood", short_number(r.fit.log_likelihood)});
      cells.push_back({"aic", short_number(r.aic)});
      cells.push_back({"bic", short_number(r.bic)});
      cells.push_back({"ks_d", short_number(r.ks_d)});
      cells.push_back({"p_value", short_number(r.p_value)});
      cells.push_back({"converged", r.fit.converged ? "yes" : "no"});
      cells.push_back({"iterations", std::to_string(r.fit.iterations)});
      cells.push_back({"grad_norm", short_number(r.fit.grad_norm)});
      cells.push_back({"n", std::to_string(r.n)});
      print_table(os, cells);
      return;
    }
  }
}

void render(std::ostream& os, const ComparisonTable& t, Format f) {
  switch (f) {
    case Format::Json: {
      json rows = json::array();
      for (const auto& r : t.rows) {
        rows.push_back({{"model", std::string(to_string(r.kind))},
                        {"params", params_json(r.params)},
                        {"log_likelihood", number_json(r.log_likelihood)},
                        {"aic", number_json(r.aic)},
                        {"bic", number_json(r.bic)},
                        {"ks_d", number_json(r.ks_d)},
                        {"p_value", number_json(r.p_value)},
                        {"param_count", r.param_count},
                        {"converged", r.converged},
                        {"grad_norm", number_json(r.grad_norm)}});
      }
      json j = {{"n", t.n},
                {"pvalue_method", std::string(to_string(t.pvalue_method))},
                {"rows", rows},
                {"notes", t.notes}};
      os << j.dump(2) << '\n';
      return;
    }
    case Format::Csv: {
      os << "rank,model,param1_name,param1,param2_name,param2,log_likelihood,aic,bic,ks_d,"
            "p_value,param_count,converged\n";
      std::size_t rank = 1;
      for (const auto& r : t.rows) {
        os << rank++ << ',' << to_string(r.kind) << ',' << param_name_cell(r.params, 0) << ','
           << param_cell(r.params, 0) << ',' << param_name_cell(r.params, 1) << ','
           << param_cell(r.params, 1) << ',' << full_number(r.log_likelihood) << ','
           << full_number(r.aic) << ',' << full_number(r.bic) << ',' << full_number(r.ks_d)
           << ',' << full_number(r.p_value) << ',' << r.param_count << ','
           << (r.converged ? "true" : "false") << '\n';
      }
      for (const auto& note : t.notes) os << "# " << note << '\n';
      return;
    }
    case Format::Table: {
      std::vector<std::vector<std::string>> cells = {
          {"model", "estimates", "logL", "AIC", "BIC", "KS", "p-value", "converged"}};
      for (const auto& r : t.rows) {
        cells.push_back({std::string(to_string(r.kind)), params_text(r.params, false),
                         short_number(r.log_likelihood), short_number(r.aic), short_number(r.bic),
                         short_number(r.ks_d), short_number(r.p_value),
                         r.converged ? "yes" : "no"});
      }
      print_table(os, cells);
      os << "\nn = " << t.n << ", KS p-values: " << to_string(t.pvalue_method)
         << ", rows ranked by AIC\n";
      if (!t.notes.empty()) {
        os << "\nNotes:\n";
        for (std::size_t i = 0; i < t.notes.size(); ++i) {
          os << "  [" << i + 1 << "] " << t.notes[i] << '\n';
        }
      }
      return;
    }
  }
}

void render(std::ostream& os, const std::string& fn, const std::vector<EvalRow>& rows, Format f) {
  switch (f) {
    case Format::Json: {
      json arr = json::array();
      for (const auto& r : rows) {
        json j = {{"x", number_json(r.x)}};
        if (r.error.empty()) {
          j["value"] = number_json(r.value);
        } else {
          j["error"] = r.error;
          j["message"] = r.message;
        }
        arr.push_back(j);
      }
      os << json{{"fn", fn}, {"values", arr}}.dump(2) << '\n';
      return;
    }
    case Format::Csv: {
      os << "x," << fn << ",error\n";
      for (const auto& r : rows) {
        os << full_number(r.x) << ',' << (r.error.empty() ? full_number(r.value) : "") << ','
           << r.error << '\n';
      }
      return;
    }
    case Format::Table: {
      std::vector<std::vector<std::string>> cells = {{"x", fn}};
      for (const auto& r : rows) {
        cells.push_back({short_number(r.x), r.error.empty() ? short_number(r.value) : r.error});
      }
      print_table(os, cells);
      return;
    }
  }
}

}  // namespace pgdus::tools
