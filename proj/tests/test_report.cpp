#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "yuleperc/analytics.hpp"
#include "yuleperc/report_io.hpp"
#include "yuleperc/stats.hpp"

using nlohmann::json;
using namespace yuleperc;

namespace {

// Validator for the subset of JSON Schema the published schema uses:
// $ref into definitions, oneOf, type, enum, minimum, required,
// properties, additionalProperties-as-schema, items.
bool validates(const json& root, const json& schema, const json& value);

bool type_matches(const std::string& type, const json& value) {
    if (type == "object")
        return value.is_object();
    if (type == "array")
        return value.is_array();
    if (type == "string")
        return value.is_string();
    if (type == "boolean")
        return value.is_boolean();
    if (type == "null")
        return value.is_null();
    if (type == "integer")
        return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number")
        return value.is_number();
    return false;
}

bool validates(const json& root, const json& schema, const json& value) {
    if (schema.contains("$ref")) {
        const std::string ref = schema.at("$ref").get<std::string>();
        const std::string prefix = "#/definitions/";
        if (ref.rfind(prefix, 0) != 0)
            return false;
        const json& defs = root.at("definitions");
        const auto it = defs.find(ref.substr(prefix.size()));
        return it != defs.end() && validates(root, *it, value);
    }
    if (schema.contains("oneOf")) {
        int hits = 0;
        for (const json& sub : schema.at("oneOf"))
            hits += validates(root, sub, value) ? 1 : 0;
        if (hits != 1)
            return false;
    }
    if (schema.contains("type") &&
        !type_matches(schema.at("type").get<std::string>(), value))
        return false;
    if (schema.contains("enum")) {
        bool found = false;
        for (const json& allowed : schema.at("enum"))
            found = found || allowed == value;
        if (!found)
            return false;
    }
    if (schema.contains("minimum") && value.is_number() &&
        !(value.get<double>() >= schema.at("minimum").get<double>()))
        return false;
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const json& key : schema.at("required"))
                if (!value.contains(key.get<std::string>()))
                    return false;
        const json props = schema.value("properties", json::object());
        for (const auto& [key, sub] : props.items())
            if (value.contains(key) && !validates(root, sub, value.at(key)))
                return false;
        if (schema.contains("additionalProperties") &&
            schema.at("additionalProperties").is_object())
            for (const auto& [key, member] : value.items())
                if (!props.contains(key) &&
                    !validates(root, schema.at("additionalProperties"),
                               member))
                    return false;
    }
    if (value.is_array() && schema.contains("items"))
        for (const json& member : value)
            if (!validates(root, schema.at("items"), member))
                return false;
    return true;
}

json load_schema() {
    std::ifstream in(SCHEMA_PATH);
    if (!in.good())
        throw std::runtime_error("schema file missing: " SCHEMA_PATH);
    return json::parse(in);
}

RunManifest sample_manifest(const std::string& command) {
    RunManifest manifest;
    manifest.command = command;
    manifest.parameters = {{"n", "30"}, {"p", "0.3"}};
    manifest.version = "0.0.test";
    manifest.master_seed = 7;
    manifest.timestamp = "2000-01-01T00:00:00Z";
    manifest.outputs = {"out.json"};
    return manifest;
}

McReport small_report(unsigned threads) {
    McConfig config;
    config.n = 40;
    config.p = 0.25;
    config.statistic = StatCountEqual{1};
    config.replicates = 300;
    config.master_seed = 5;
    config.threads = threads;
    config.references.poisson_lambda = 7.0;
    return run_mc(config);
}

} // namespace

TEST_CASE("format_double round-trips and stays short") {
    for (const double v : {0.1, 2.0, 1.0 / 3.0, 0.3, -17.25, 1e-300,
                           1.7976931348623157e308, 5e-324, 0.0}) {
        const std::string text = format_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("timestamp is ISO 8601 UTC") {
    const std::string now = iso8601_utc_now();
    REQUIRE(now.size() == 20);
    CHECK(now[4] == '-');
    CHECK(now[10] == 'T');
    CHECK(now[13] == ':');
    CHECK(now.back() == 'Z');
}

TEST_CASE("prediction document validates against the published schema") {
    const json schema = load_schema();
    const Prediction pred = predict(BoundedRegime{2, 1.0}, 1000000);
    const json doc = prediction_document(pred, sample_manifest("predict"));
    CHECK(validates(schema, schema, doc));

    const Prediction crit = predict(CriticalRegime{1.0}, 1000000, 1.0, 0.25);
    CHECK(validates(schema, schema,
                    prediction_document(crit, sample_manifest("predict"))));
}

TEST_CASE("simulation report validates, with and without empirical pmf") {
    const json schema = load_schema();
    const json doc =
        report_document(small_report(1), sample_manifest("simulate"));
    CHECK(validates(schema, schema, doc));

    McConfig config;
    config.n = 60;
    config.statistic = StatTauRescaled{};
    config.replicates = 100;
    config.references.ks_exp1 = true;
    const json tau_doc =
        report_document(run_mc(config), sample_manifest("simulate"));
    CHECK(tau_doc.at("results").at("empirical").is_null());
    CHECK(validates(schema, schema, tau_doc));
}

TEST_CASE("schema rejects missing and mistyped fields") {
    const json schema = load_schema();
    json doc = report_document(small_report(1), sample_manifest("simulate"));
    REQUIRE(validates(schema, schema, doc));

    json missing = doc;
    missing.at("results").erase("mean");
    CHECK_FALSE(validates(schema, schema, missing));

    json mistyped = doc;
    mistyped.at("config").at("n") = "forty";
    CHECK_FALSE(validates(schema, schema, mistyped));

    json bad_enum = doc;
    bad_enum.at("config").at("sampler") = "bogus";
    CHECK_FALSE(validates(schema, schema, bad_enum));
}

TEST_CASE("replicate csv is byte-identical across thread counts") {
    const McReport one = small_report(1);
    const McReport three = small_report(3);
    REQUIRE(one.values == three.values);

    const RunManifest manifest = sample_manifest("simulate");
    const std::string csv_one = replicates_csv(one, manifest);
    const std::string csv_three = replicates_csv(three, manifest);
    CHECK(csv_one == csv_three);

    CHECK(csv_one.rfind("# manifest: {", 0) == 0);
    const auto header_at = csv_one.find("\r\n") + 2;
    CHECK(csv_one.find("replicate,statistic_value\r\n") == header_at);
}

TEST_CASE("sweep csv layout") {
    const std::vector<SweepRow> rows{{1000, 0.03, 2, 2.0, 1.9, 0.04},
                                     {10000, 0.01, 2, 2.0, 1.95, 0.02}};
    const std::string csv = sweep_csv(rows, sample_manifest("sweep"));
    CHECK(csv.find("n,p,threshold,intensity,empirical_mean,tv_poisson\r\n") !=
          std::string::npos);
    CHECK(csv.find("1000,0.03,2,2,1.9,0.04\r\n") != std::string::npos);
    CHECK(csv.find("10000,0.01,2,2,1.95,0.02\r\n") != std::string::npos);
}
