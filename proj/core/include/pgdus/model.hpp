#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace pgdus {

/// The five lifetime families compared on failure-time data. All use an
/// exponential baseline F(x) = 1 - exp(-rate * x).
enum class ModelKind {
  PGDUSE,  // power generalized DUS exponential, (lambda, theta)
  GDUSE,   // generalized DUS exponential, (alpha, beta)
  DUSE,    // DUS exponential, (a)
  KME,     // KM-transformed exponential, (theta)
  ED,      // exponential, (theta)
};

inline constexpr std::array<ModelKind, 5> kAllModels = {
    ModelKind::PGDUSE, ModelKind::GDUSE, ModelKind::DUSE, ModelKind::KME, ModelKind::ED};

std::string_view to_string(ModelKind kind) noexcept;

/// Case-insensitive; throws Error(UnknownName).
ModelKind parse_model_kind(std::string_view name);

std::size_t arity(ModelKind kind) noexcept;

/// Parameter names in storage order, e.g. {"lambda", "theta"} for PGDUSE.
std::span<const std::string_view> param_names(ModelKind kind) noexcept;

struct PgduseParams {
  double lambda;  // rate
  double theta;   // shape
};

struct GduseParams {
  double alpha;  // shape
  double beta;   // rate
};

struct ScalarParam {
  double value;  // rate
};

/// A validated, immutable parameter vector tagged with its model. The only
/// ways to obtain one go through validation, so every instance satisfies
/// the positivity and arity invariants.
class ParamVector {
 public:
  ModelKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return arity(kind_); }
  std::span<const double> values() const noexcept { return {values_.data(), size()}; }
  double operator[](std::size_t i) const { return values_.at(i); }

  /// PGDUSE, or DUSE viewed as PGDUSE with theta = 1.
  PgduseParams as_pgduse() const;
  GduseParams as_gduse() const;
  /// DUSE, KME and ED.
  ScalarParam as_scalar() const;

  friend ParamVector validate_params(ModelKind kind, std::span<const double> raw);

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  ParamVector(ModelKind kind, std::array<double, 2> values) : kind_(kind), values_(values) {}

  ModelKind kind_;
  std::array<double, 2> values_;
};

/// Throws Error(ArityMismatch) or Error(NonPositiveParameter).
ParamVector validate_params(ModelKind kind, std::span<const double> raw);

ParamVector make_params(const PgduseParams& p);
ParamVector make_params(const GduseParams& p);
ParamVector make_params(ModelKind kind, const ScalarParam& p);

/// Throws Error(NonPositiveParameter) unless lambda and theta are positive and finite.
PgduseParams checked(const PgduseParams& p);

}  // namespace pgdus
