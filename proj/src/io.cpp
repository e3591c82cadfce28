#include "rwrs/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rwrs/stats.hpp"

namespace rwrs {

std::string csv_header(const CsvMeta& meta) {
  std::ostringstream s;
  s << "# rwrs-lab csv v" << kCsvSchemaVersion << " kind=" << meta.kind << " seed=" << meta.seed
    << " config=" << meta.config.dump() << "\n";
  return s.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_profile_csv(std::ostream& out, const LocalTimeProfile& profile, const CsvMeta& meta) {
  out << csv_header(meta) << "site,count\n";
  for (Site i = profile.left(); !profile.empty() && i <= profile.right(); ++i) out << i << "," << profile.at(i) << "\n";
}

void write_alpha_csv(std::ostream& out, const AlphaTable& table, const CsvMeta& meta) {
  out << csv_header(meta) << "lag,alpha\n";
  for (Site lag = table.min_lag(); !table.values().empty() && lag <= table.max_lag(); ++lag)
    out << lag << "," << table.at(lag) << "\n";
}

void write_scenery_csv(std::ostream& out, const SceneryWindow& window, const CsvMeta& meta) {
  out << csv_header(meta) << "site,value\n";
  for (Site i = window.left; i <= window.right; ++i) out << i << "," << format_double(window.at(i)) << "\n";
}

void write_batch_csv(std::ostream& out, const RwrsBatch& batch, const CsvMeta& meta) {
  out << csv_header(meta) << "replicate,t,raw,normalized\n";
  for (std::size_t r = 0; r < batch.replicates; ++r)
    for (std::size_t j = 0; j < batch.times.size(); ++j)
      out << r << "," << format_double(batch.times[j]) << "," << format_double(batch.raw_at(r, j)) << ","
          << format_double(batch.normalized_at(r, j)) << "\n";
}

void write_delta_csv(std::ostream& out, const DeltaBatch& batch, const CsvMeta& meta) {
  out << csv_header(meta) << "replicate,t,delta,squared_integral\n";
  for (std::size_t r = 0; r < batch.replicates; ++r)
    for (std::size_t j = 0; j < batch.times.size(); ++j)
      out << r << "," << format_double(batch.times[j]) << "," << format_double(batch.at(r, j)) << ","
          << format_double(batch.squared_integral[r * batch.times.size() + j]) << "\n";
}

void write_field_csv(std::ostream& out, const LocalTimeField& field, const CsvMeta& meta) {
  out << csv_header(meta) << "t,x,local_time\n";
  for (std::size_t j = 0; j < field.times.size(); ++j)
    for (std::size_t b = 0; b < field.bins(); ++b)
      out << format_double(field.times[j]) << "," << format_double(field.edge(b)) << ","
          << format_double(field.values[j][b]) << "\n";
}

nlohmann::json sample_summary(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  nlohmann::json q = nlohmann::json::object();
  const std::pair<const char*, double> levels[] = {{"q05", 0.05}, {"q25", 0.25}, {"q50", 0.5}, {"q75", 0.75}, {"q95", 0.95}};
  for (const auto& [key, p] : levels) q[key] = stats::quantile(v, p);
  return {{"count", xs.size()},
          {"mean", stats::mean(xs)},
          {"variance", xs.size() > 1 ? stats::variance(xs) : 0.0},
          {"quantiles", q}};
}

nlohmann::json batch_summary(const RwrsBatch& batch) {
  nlohmann::json per_t = nlohmann::json::array();
  for (std::size_t j = 0; j < batch.times.size(); ++j) {
    auto s = sample_summary(batch.normalized_column(j));
    s["t"] = batch.times[j];
    s["index"] = batch.indices[j];
    per_t.push_back(std::move(s));
  }
  return {{"n", batch.n}, {"replicates", batch.replicates}, {"normalization", "n^{-3/4}"}, {"per_t", per_t}};
}

nlohmann::json delta_summary(const DeltaBatch& batch) {
  nlohmann::json per_t = nlohmann::json::array();
  for (std::size_t j = 0; j < batch.times.size(); ++j) {
    auto s = sample_summary(batch.column(j));
    s["t"] = batch.times[j];
    s["mean_squared_integral"] = stats::mean(batch.squared_integral_column(j));
    per_t.push_back(std::move(s));
  }
  return {{"replicates", batch.replicates}, {"seed", batch.seed}, {"per_t", per_t}};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace rwrs
