#pragma once

#define GLOBEPROBE_VERSION_MAJOR 0
#define GLOBEPROBE_VERSION_MINOR 1
#define GLOBEPROBE_VERSION_PATCH 0

namespace globeprobe {

inline constexpr const char* version_string() { return "0.1.0"; }

}  // namespace globeprobe
