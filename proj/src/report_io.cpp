#include "yuleperc/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace yuleperc {

namespace {

using nlohmann::json;

const char* sampler_name(SamplerKind kind) {
    return kind == SamplerKind::JumpChain ? "chain" : "rrt";
}

// Quote a CSV field only when RFC 4180 requires it.
std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos)
        return raw;
    std::string out = "\"";
    for (const char c : raw) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string manifest_preamble(const RunManifest& manifest) {
    return "# manifest: " + to_json(manifest).dump() + "\r\n";
}

} // namespace

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    // Shortest of the round-tripping precisions, so identical inputs
    // serialize identically and nothing is lost on read-back.
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v)
            return buf;
    }
    return buf;
}

nlohmann::json to_json(const RunManifest& manifest) {
    json params = json::array();
    for (const auto& [flag, value] : manifest.parameters)
        params.push_back({{"flag", flag}, {"value", value}});
    return json{{"command", manifest.command},
                {"parameters", params},
                {"version", manifest.version},
                {"master_seed", manifest.master_seed},
                {"timestamp", manifest.timestamp},
                {"outputs", manifest.outputs}};
}

nlohmann::json to_json(const Prediction& prediction) {
    json out{{"regime", prediction.regime},
             {"n", prediction.n},
             {"p", prediction.p},
             {"lambda", prediction.lambda},
             {"threshold", prediction.threshold},
             {"intensity", prediction.intensity},
             {"main_term", prediction.main_term},
             {"k", prediction.k},
             {"sigma1", prediction.sigma1},
             {"sigma3", prediction.sigma3},
             {"sandwich", {{"lower", prediction.sandwich.lower},
                           {"upper", prediction.sandwich.upper}}},
             {"sigma2_omitted", prediction.sigma2_omitted}};
    if (prediction.y) {
        out["y"] = *prediction.y;
        out["y_floor"] = std::floor(*prediction.y);
    }
    if (prediction.b)
        out["b"] = *prediction.b;
    return out;
}

nlohmann::json prediction_document(const Prediction& prediction,
                                   const RunManifest& manifest) {
    return json{{"manifest", to_json(manifest)},
                {"prediction", to_json(prediction)}};
}

nlohmann::json report_document(const McReport& report,
                               const RunManifest& manifest) {
    json config{{"n", report.config.n},
                {"p", report.config.p},
                {"statistic", statistic_name(report.config.statistic)},
                {"replicates", report.config.replicates},
                {"master_seed", report.config.master_seed},
                {"threads_requested", report.config.threads},
                {"sampler", sampler_name(report.config.sampler)}};
    json empirical;
    if (!report.empirical.support.empty())
        empirical = json{{"support", report.empirical.support},
                         {"prob", report.empirical.prob}};
    json results{{"threads_used", report.threads_used},
                 {"mean", report.mean},
                 {"variance", report.variance},
                 {"std_error", report.std_error},
                 {"empirical", empirical},
                 {"distances", json(report.distances)}};
    return json{{"manifest", to_json(manifest)},
                {"config", config},
                {"results", results}};
}

std::string prediction_csv(const Prediction& prediction,
                           const RunManifest& manifest) {
    std::string out = manifest_preamble(manifest);
    out += "regime,n,p,lambda,threshold,intensity,main_term,k,sigma1,sigma3,"
           "sandwich_lower,sandwich_upper,sigma2_omitted,y,b\r\n";
    out += csv_field(prediction.regime);
    out += "," + std::to_string(prediction.n);
    out += "," + format_double(prediction.p);
    out += "," + format_double(prediction.lambda);
    out += "," + std::to_string(prediction.threshold);
    out += "," + format_double(prediction.intensity);
    out += "," + format_double(prediction.main_term);
    out += "," + std::to_string(prediction.k);
    out += "," + format_double(prediction.sigma1);
    out += "," + format_double(prediction.sigma3);
    out += "," + format_double(prediction.sandwich.lower);
    out += "," + format_double(prediction.sandwich.upper);
    out += prediction.sigma2_omitted ? ",true" : ",false";
    out += "," + (prediction.y ? format_double(*prediction.y) : std::string());
    out += "," + (prediction.b ? format_double(*prediction.b) : std::string());
    out += "\r\n";
    return out;
}

std::string replicates_csv(const McReport& report,
                           const RunManifest& manifest) {
    std::string out = manifest_preamble(manifest);
    out += "replicate,statistic_value\r\n";
    for (std::size_t r = 0; r < report.values.size(); ++r) {
        out += std::to_string(r);
        out += "," + format_double(report.values[r]);
        out += "\r\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const RunManifest& manifest) {
    std::string out = manifest_preamble(manifest);
    out += "n,p,threshold,intensity,empirical_mean,tv_poisson\r\n";
    for (const SweepRow& row : rows) {
        out += std::to_string(row.n);
        out += "," + format_double(row.p);
        out += "," + std::to_string(row.threshold);
        out += "," + format_double(row.intensity);
        out += "," + format_double(row.mean);
        out += "," + format_double(row.tv_poisson);
        out += "\r\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open " + path + " for writing");
    file << content;
    if (!file)
        throw std::runtime_error("write to " + path + " failed");
}

} // namespace yuleperc
