#include "pgdus/error.hpp"

namespace pgdus {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPositiveParameter: return "NonPositiveParameter";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DomainError: return "DomainError";
    case Errc::SeriesDivergence: return "SeriesDivergence";
    case Errc::QuadFailure: return "QuadFailure";
    case Errc::LogOfZero: return "LogOfZero";
    case Errc::ParseError: return "ParseError";
    case Errc::NonPositiveObservation: return "NonPositiveObservation";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::IoError: return "IoError";
    case Errc::UnknownName: return "UnknownName";
    case Errc::NonConvergence: return "NonConvergence";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace pgdus
