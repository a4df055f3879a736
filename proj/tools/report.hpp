#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "exclusia/process.hpp"

namespace exclusia::cli {

using Json = nlohmann::json;  // std::map backed, so keys come out sorted

inline constexpr int kSchemaVersion = 1;

// Serialize with sorted keys, two-space indent and %.17g floats. Non-finite
// numbers become null.
std::string dump(const Json& j);

Json to_json(const ObservableReport& r);
Json to_json(const ProcessParams& p);

// site,density,density_stderr rows
std::string profile_csv(const ObservableReport& r);

// Writes text to path, or to stdout when path is empty or "-". A relative
// path is placed under $EXCLUSIA_OUTPUT_DIR when that is set.
void write_output(const std::string& path, const std::string& text);

}  // namespace exclusia::cli
