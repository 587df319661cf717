#pragma once

#include <string>

#include "json.hpp"
#include "orbimf/catalog.hpp"

namespace orbimf {

inline constexpr const char* kReportSchema = "orbimf.report/1";

struct VerifyOptions {
    std::size_t spair_cap = 50000;
    long precision = 128;  // starting bits for interval certificates
    unsigned seed = 0;
};

// Runs grading, squaring, constraint derivation and comparison, quantum
// dimensions, family verification and non-vanishing for one entry.
nlohmann::json verify_entry(const EntryData& data, const Catalog& cat, const VerifyOptions& opt);

// Human rendering of the same JSON object.
std::string render_text(const nlohmann::json& report);

// One-line summary row per entry for --all.
std::string render_summary(const std::vector<nlohmann::json>& reports);

}  // namespace orbimf
