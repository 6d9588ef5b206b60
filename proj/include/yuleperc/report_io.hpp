#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "yuleperc/analytics.hpp"
#include "yuleperc/stats.hpp"

namespace yuleperc {

// Provenance block embedded in every output file; enough to rerun the
// command and reproduce the statistic columns byte for byte.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::string version;
    std::uint64_t master_seed = 0;
    std::string timestamp; // ISO 8601 UTC; varies run to run by design
    std::vector<std::string> outputs;
};

std::string iso8601_utc_now();

// Shortest text that round-trips the double, identical across runs.
std::string format_double(double v);

nlohmann::json to_json(const RunManifest& manifest);
nlohmann::json to_json(const Prediction& prediction);

// {"manifest": ..., "prediction": ...}
nlohmann::json prediction_document(const Prediction& prediction,
                                   const RunManifest& manifest);

// {"manifest": ..., "config": ..., "results": ...}; per-replicate
// values stay out of the JSON, the replicates CSV is their channel.
nlohmann::json report_document(const McReport& report,
                               const RunManifest& manifest);

// CSV files: one '#'-prefixed manifest line, then an RFC-4180 body
// (header row, CRLF line endings, minimal quoting).
std::string prediction_csv(const Prediction& prediction,
                           const RunManifest& manifest);
std::string replicates_csv(const McReport& report,
                           const RunManifest& manifest);

struct SweepRow {
    std::uint64_t n = 0;
    double p = 0.0;
    std::uint64_t threshold = 0;
    double intensity = 0.0;
    double mean = 0.0;
    double tv_poisson = 0.0;
};

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const RunManifest& manifest);

void write_text_file(const std::string& path, const std::string& content);

} // namespace yuleperc
