#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgdus {

enum class Errc {
  NonPositiveParameter,
  ArityMismatch,
  DomainError,
  SeriesDivergence,
  QuadFailure,
  LogOfZero,
  ParseError,
  NonPositiveObservation,
  EmptyDataset,
  IoError,
  UnknownName,
  NonConvergence,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc codes so
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pgdus
