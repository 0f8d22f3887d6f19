#pragma once

// Step-count constants and the sweep that fixes them.
//
//   c    detection:  T = ceil(c sqrt(HT_eff))
//   c2   finding:    T = ceil(c2 sqrt(HT+)) on a torus,
//                    T = ceil(c2 D sqrt(max(1, ln D))) on a D-sided block
//   c3   cost bound: c3 min{sqrt(H max(1, ln H)), sqrt(N ln N)}
//
// File format: "key = value" lines; '#' starts a comment.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

#include <nlohmann/json.hpp>

namespace qwalk {

struct Calibration {
    double c = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    /// FNV-1a (64 bit, hex) of the canonical "key = value" lines.
    std::string hash() const;
    /// Canonical key/value text without comments.
    std::string canonical() const;
};

nlohmann::json to_json(const Calibration& k);

/// $QWALK_CONSTANTS if set, else config/calibration.conf.
std::filesystem::path default_calibration_path();

Calibration load_calibration(const std::filesystem::path& path);
/// Parses the file format above. Unknown keys, missing keys and non-positive
/// values are errors.
Calibration parse_calibration(const std::string& text);

struct CalibrationRecord {
    Calibration constants;
    /// Per-constant sweep summary written as comments.
    nlohmann::json provenance;
};

/// Runs the calibration sweep. `progress` receives one line per stage.
CalibrationRecord calibrate(const std::function<void(const std::string&)>& progress = {});

/// File contents for a record: provenance comments followed by the constants.
std::string format_calibration(const CalibrationRecord& record);

}  // namespace qwalk
