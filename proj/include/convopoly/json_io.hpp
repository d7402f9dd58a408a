#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "convopoly/common.hpp"
#include "convopoly/oracle.hpp"
#include "convopoly/rational.hpp"

namespace convopoly {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// One serialized corner: integer correlation counts over a shared
// denominator (the generating cycle's length), plus the cycle itself.
struct CornerEntry {
    std::vector<long long> num;
    long long den = 1;
    std::vector<int> cycle;
};

struct CornersDoc {
    int d = 0;
    ConvKind kind = ConvKind::diff;
    std::vector<CornerEntry> corners;
};

inline std::vector<Rational> entry_coords(const CornerEntry& entry) {
    std::vector<Rational> coords;
    coords.reserve(entry.num.size());
    for (long long v : entry.num) coords.emplace_back(BigInt(v), BigInt(entry.den));
    return coords;
}

inline Json rationals_to_json(const std::vector<Rational>& values) {
    Json arr = Json::array();
    for (const auto& r : values) arr.push_back(format_rational(r));
    return arr;
}

inline Json corners_doc_to_json(const CornersDoc& doc) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["d"] = doc.d;
    j["kind"] = to_string(doc.kind);
    Json corners = Json::array();
    for (const auto& entry : doc.corners) {
        Json e;
        e["num"] = entry.num;
        e["den"] = entry.den;
        e["cycle"] = entry.cycle;
        corners.push_back(std::move(e));
    }
    j["corners"] = std::move(corners);
    return j;
}

inline Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON document");
    return j;
}

inline CornersDoc parse_corners_doc(const Json& j) {
    try {
        if (!j.is_object()) throw InputError("corners document must be a JSON object");
        if (j.value("schema_version", -1) != kSchemaVersion) {
            throw InputError("unsupported or missing schema_version");
        }
        CornersDoc doc;
        doc.d = j.at("d").get<int>();
        doc.kind = parse_conv_kind(j.at("kind").get<std::string>());
        if (doc.d < 1) throw InputError("corners document: d must be >= 1");
        for (const auto& e : j.at("corners")) {
            CornerEntry entry;
            entry.num = e.at("num").get<std::vector<long long>>();
            entry.den = e.at("den").get<long long>();
            if (e.contains("cycle")) entry.cycle = e.at("cycle").get<std::vector<int>>();
            if (entry.den < 1) throw InputError("corners document: den must be >= 1");
            if (entry.num.size() != static_cast<std::size_t>(doc.d)) {
                throw InputError("corners document: num length does not match d");
            }
            doc.corners.push_back(std::move(entry));
        }
        if (doc.corners.empty()) throw InputError("corners document: no corners");
        return doc;
    } catch (const InputError&) {
        throw;
    } catch (const Json::exception& ex) {
        throw InputError(std::string("corners document: ") + ex.what());
    }
}

// Convex weights keyed by cycle index: {"0": "1/2", "5": "1/2"}. Unlisted
// indices get weight zero.
inline std::vector<Rational> parse_lambda_file(const Json& j, std::size_t cycle_count) {
    if (!j.is_object()) throw InputError("lambda document must be a JSON object");
    std::vector<Rational> lambdas(cycle_count, Rational(0));
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "schema_version") continue;
        std::size_t index = 0;
        try {
            index = static_cast<std::size_t>(std::stoull(it.key()));
        } catch (const std::exception&) {
            throw InputError("lambda document: key is not a cycle index: " + it.key());
        }
        if (index >= cycle_count) {
            throw InputError("lambda document: cycle index " + it.key() + " out of range (have " +
                             std::to_string(cycle_count) + " cycles)");
        }
        if (!it.value().is_string()) {
            throw InputError("lambda document: weight must be a \"p/q\" string");
        }
        lambdas[index] = parse_rational(it.value().get<std::string>());
        if (lambdas[index] < 0) throw InputError("lambda document: negative weight");
    }
    Rational total(0);
    for (const auto& l : lambdas) total += l;
    if (total != 1) throw InputError("lambda document: weights must sum to 1");
    return lambdas;
}

inline std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

} // namespace convopoly
