#include "pgdus/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "pgdus/error.hpp"

namespace pgdus {

namespace {

constexpr std::array<std::string_view, 2> kPgduseNames = {"lambda", "theta"};
constexpr std::array<std::string_view, 2> kGduseNames = {"alpha", "beta"};
constexpr std::array<std::string_view, 1> kDuseNames = {"a"};
constexpr std::array<std::string_view, 1> kThetaNames = {"theta"};

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void require_kind(const ParamVector& p, bool ok, std::string_view wanted) {
  if (!ok) {
    throw Error(Errc::ArityMismatch, std::string(to_string(p.kind())) +
                                         " parameters cannot be viewed as " +
                                         std::string(wanted));
  }
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::PGDUSE: return "PGDUSE";
    case ModelKind::GDUSE: return "GDUSE";
    case ModelKind::DUSE: return "DUSE";
    case ModelKind::KME: return "KME";
    case ModelKind::ED: return "ED";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  const std::string lower = lowercase(name);
  for (ModelKind kind : kAllModels) {
    if (lower == lowercase(to_string(kind))) return kind;
  }
  throw Error(Errc::UnknownName, "unknown model '" + std::string(name) +
                                     "' (expected pgduse, gduse, duse, kme or ed)");
}

std::size_t arity(ModelKind kind) noexcept {
  return (kind == ModelKind::PGDUSE || kind == ModelKind::GDUSE) ? 2 : 1;
}

std::span<const std::string_view> param_names(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::PGDUSE: return kPgduseNames;
    case ModelKind::GDUSE: return kGduseNames;
    case ModelKind::DUSE: return kDuseNames;
    case ModelKind::KME:
    case ModelKind::ED: return kThetaNames;
  }
  return {};
}

ParamVector validate_params(ModelKind kind, std::span<const double> raw) {
  if (raw.size() != arity(kind)) {
    throw Error(Errc::ArityMismatch, std::string(to_string(kind)) + " takes " +
                                         std::to_string(arity(kind)) + " parameter(s), got " +
                                         std::to_string(raw.size()));
  }
  std::array<double, 2> values{0.0, 0.0};
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i]) || raw[i] <= 0.0) {
      throw Error(Errc::NonPositiveParameter,
                  std::string(to_string(kind)) + " parameter '" +
                      std::string(param_names(kind)[i]) +
                      "' must be positive and finite, got " + std::to_string(raw[i]));
    }
    values[i] = raw[i];
  }
  return ParamVector(kind, values);
}

PgduseParams ParamVector::as_pgduse() const {
  require_kind(*this, kind_ == ModelKind::PGDUSE || kind_ == ModelKind::DUSE, "PGDUSE");
  if (kind_ == ModelKind::DUSE) return {values_[0], 1.0};
  return {values_[0], values_[1]};
}

GduseParams ParamVector::as_gduse() const {
  require_kind(*this, kind_ == ModelKind::GDUSE, "GDUSE");
  return {values_[0], values_[1]};
}

ScalarParam ParamVector::as_scalar() const {
  require_kind(*this, arity(kind_) == 1, "a single rate");
  return {values_[0]};
}

ParamVector make_params(const PgduseParams& p) {
  const std::array<double, 2> raw{p.lambda, p.theta};
  return validate_params(ModelKind::PGDUSE, raw);
}

ParamVector make_params(const GduseParams& p) {
  const std::array<double, 2> raw{p.alpha, p.beta};
  return validate_params(ModelKind::GDUSE, raw);
}

ParamVector make_params(ModelKind kind, const ScalarParam& p) {
  const std::array<double, 1> raw{p.value};
  return validate_params(kind, raw);
}

PgduseParams checked(const PgduseParams& p) {
  make_params(p);
  return p;
}

}  // namespace pgdus
