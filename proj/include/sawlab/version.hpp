#pragma once

namespace sawlab {

// Stamped into cache entries; bump on any change that affects emitted counts.
inline constexpr const char* kEngineVersion = "sawlab-0.1.0";

}  // namespace sawlab
