#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rwrs/limit.hpp"
#include "rwrs/process.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

inline constexpr int kCsvSchemaVersion = 1;

/// Written as the first CSV line:
/// `# rwrs-lab csv v1 kind=<kind> seed=<seed> config=<compact json>`.
struct CsvMeta {
  std::string kind;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
};

std::string csv_header(const CsvMeta& meta);

/// %.17g, which round-trips every double.
std::string format_double(double v);

void write_profile_csv(std::ostream& out, const LocalTimeProfile& profile, const CsvMeta& meta);  // site,count
void write_alpha_csv(std::ostream& out, const AlphaTable& table, const CsvMeta& meta);            // lag,alpha
void write_scenery_csv(std::ostream& out, const SceneryWindow& window, const CsvMeta& meta);      // site,value
void write_batch_csv(std::ostream& out, const RwrsBatch& batch, const CsvMeta& meta);
void write_delta_csv(std::ostream& out, const DeltaBatch& batch, const CsvMeta& meta);
void write_field_csv(std::ostream& out, const LocalTimeField& field, const CsvMeta& meta);

/// Mean, variance and quantiles (5, 25, 50, 75, 95 %) of a sample.
nlohmann::json sample_summary(std::span<const double> xs);

/// One sample_summary of the normalized sums per grid time.
nlohmann::json batch_summary(const RwrsBatch& batch);
nlohmann::json delta_summary(const DeltaBatch& batch);

/// Creates parent directories; throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace rwrs
