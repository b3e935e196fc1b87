#pragma once

namespace coneindex {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kReportSchemaVersion = "1";

} // namespace coneindex
