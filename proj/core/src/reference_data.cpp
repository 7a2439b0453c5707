#include "pgdus/reference_data.hpp"

#include <vector>

#include "pgdus/error.hpp"

namespace pgdus {

namespace {

constexpr std::array<double, 23> kLawless = {
    17.88, 28.92, 33.00,  41.52,  42.12,  45.60,  48.80,  51.84,  51.96,  54.12,  55.56,  67.80,
    68.64, 68.64, 68.88,  84.12,  93.12,  98.64,  105.12, 105.84, 127.92, 128.04, 173.40};

constexpr std::array<PublishedFit, 5> kPublished = {{
    {ModelKind::PGDUSE, {0.03362141, 3.80657627}, -113.003, 230.006, 232.277, 0.11025, 0.9425},
    {ModelKind::GDUSE, {4.73914452, 0.03553247}, -113.0466, 230.0931, 232.3641, 0.11793, 0.9064},
    {ModelKind::DUSE, {0.01824005, 0.0}, -127.4622, 256.9244, 261.1954, 0.2774, 0.05804},
    {ModelKind::KME, {0.009544456, 0.0}, -123.1065, 248.2129, 252.4839, 0.31102, 0.02337},
    {ModelKind::ED, {0.01384327, 0.0}, -121.4393, 244.8786, 246.0141, 0.30673, 0.02639},
}};

}  // namespace

std::span<const double> lawless_values() noexcept { return kLawless; }

Dataset lawless_bearings() {
  return Dataset::from_values(std::vector<double>(kLawless.begin(), kLawless.end()));
}

std::span<const PublishedFit> published_lawless_fits() noexcept { return kPublished; }

const PublishedFit& published_lawless_fit(ModelKind kind) {
  for (const auto& row : kPublished) {
    if (row.kind == kind) return row;
  }
  throw Error(Errc::UnknownName, "no published row for model");
}

}  // namespace pgdus
