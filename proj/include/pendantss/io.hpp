#ifndef PENDANTSS_IO_HPP
#define PENDANTSS_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pendantss/metrics.hpp"
#include "pendantss/signal_model.hpp"
#include "pendantss/solver.hpp"
#include "pendantss/tuning.hpp"

namespace pendantss {

using json = nlohmann::json;

void to_json(json& j, const DatasetSpec& spec);
void from_json(const json& j, DatasetSpec& spec);
void to_json(json& j, const FilterSpec& spec);
void from_json(const json& j, FilterSpec& spec);
void to_json(json& j, const SpoqParams& params);
void from_json(const json& j, SpoqParams& params);
void to_json(json& j, const SolverConfig& config);
void from_json(const json& j, SolverConfig& config);
void to_json(json& j, const BoxSet& box);
void from_json(const json& j, BoxSet& box);
void to_json(json& j, const GridSpec& grid);
void from_json(const json& j, GridSpec& grid);
void to_json(json& j, const MetricsReport& report);
void from_json(const json& j, MetricsReport& report);
void to_json(json& j, const IterationDiagnostics& diag);
void from_json(const json& j, IterationDiagnostics& diag);
void to_json(json& j, const SolveResult& result);
void from_json(const json& j, SolveResult& result);

// Dataset document: {spec, spikes, kernel, trend, noise_sigma, observation}.
json dataset_to_json(const DatasetSpec& spec, const GroundTruth& truth,
                     const Signal& observation);
void dataset_from_json(const json& j, DatasetSpec& spec, GroundTruth& truth,
                       Signal& observation);

json load_json(const std::filesystem::path& path);

// Writes to a temp file in the same directory, then renames into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

// Full round-trip precision decimal formatting for delimited text outputs.
std::string format_double(double value);

}  // namespace pendantss

#endif
