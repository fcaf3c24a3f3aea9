#pragma once

#include <stdexcept>
#include <string>

namespace zmlim {

/// Mass-normalization violation: a field that must be mean-zero is not.
struct NonZeroMeanError : std::runtime_error {
  explicit NonZeroMeanError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Pointwise density 1 + eps*sigma dropped below the configured floor.
struct DensityFloorError : std::runtime_error {
  explicit DensityFloorError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Pointwise temperature dropped below the configured floor.
struct TemperatureFloorError : std::runtime_error {
  explicit TemperatureFloorError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid or inconsistent run configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zmlim
