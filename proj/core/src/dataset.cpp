#include "pgdus/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <system_error>

#include "pgdus/error.hpp"
#include "pgdus/reference_data.hpp"

namespace pgdus {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": cannot parse '" +
                                      std::string(token) + "' as a number");
  }
  return value;
}

}  // namespace

Dataset::Dataset(std::vector<double> observations)
    : observations_(std::move(observations)), sorted_(observations_) {
  std::sort(sorted_.begin(), sorted_.end());
  sum_ = std::accumulate(observations_.begin(), observations_.end(), 0.0);
}

Dataset Dataset::from_values(std::vector<double> observations) {
  if (observations.empty()) throw Error(Errc::EmptyDataset, "dataset has no observations");
  for (std::size_t i = 0; i < observations.size(); ++i) {
    if (!std::isfinite(observations[i]) || observations[i] <= 0.0) {
      throw Error(Errc::NonPositiveObservation,
                  "observation " + std::to_string(i + 1) + " is " +
                      std::to_string(observations[i]) + "; failure times must be positive");
    }
  }
  return Dataset(std::move(observations));
}

Dataset parse_dataset(std::string_view text) {
  std::vector<double> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::string_view rest = line;
    bool last = false;
    while (!last) {
      const auto comma = rest.find(',');
      last = comma == std::string_view::npos;
      const std::string_view token = trim(rest.substr(0, comma));
      rest = last ? std::string_view{} : rest.substr(comma + 1);
      if (token.empty() && last) break;  // trailing comma
      const double v = parse_number(token, line_no);
      if (!std::isfinite(v) || v <= 0.0) {
        throw Error(Errc::NonPositiveObservation,
                    "line " + std::to_string(line_no) + ": observation " + std::string(token) +
                        " is not a positive failure time");
      }
      values.push_back(v);
    }
  }
  if (values.empty()) throw Error(Errc::EmptyDataset, "dataset has no observations");
  return Dataset::from_values(std::move(values));
}

Dataset load_dataset(std::string_view source) {
  if (source == "lawless") return lawless_bearings();
  std::ifstream in{std::string(source)};
  if (!in) {
    throw Error(Errc::IoError, "cannot open dataset '" + std::string(source) +
                                   "' (not a file and not a builtin; builtins: lawless)");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dataset(buffer.str());
}

}  // namespace pgdus
