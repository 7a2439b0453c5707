#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace pgdus {

/// A complete (uncensored) sample of strictly positive failure times.
class Dataset {
 public:
  /// Throws Error(EmptyDataset) or Error(NonPositiveObservation).
  static Dataset from_values(std::vector<double> observations);

  std::span<const double> observations() const noexcept { return observations_; }
  /// Nondecreasing copy of the observations.
  std::span<const double> sorted() const noexcept { return sorted_; }

  std::size_t size() const noexcept { return observations_.size(); }
  /// Accumulated in observation order.
  double sum() const noexcept { return sum_; }
  double mean() const noexcept { return sum_ / static_cast<double>(size()); }
  double min() const noexcept { return sorted_.front(); }
  double max() const noexcept { return sorted_.back(); }

 private:
  explicit Dataset(std::vector<double> observations);

  std::vector<double> observations_;
  std::vector<double> sorted_;
  double sum_ = 0.0;
};

/// Parses one number per line or comma-separated values. Blank lines and
/// lines whose first non-blank character is '#' are skipped. Errors name
/// the 1-based line: ParseError, NonPositiveObservation, EmptyDataset.
Dataset parse_dataset(std::string_view text);

/// `source` is either a builtin name ("lawless") or a file path.
Dataset load_dataset(std::string_view source);

}  // namespace pgdus
