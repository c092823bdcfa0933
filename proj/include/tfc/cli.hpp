#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfc/trap.hpp"

namespace tfc::cli {

/// Fully resolved configuration.  Flags override config-file keys.
struct RunConfig {
  std::string command;
  std::string trap_kind = "harmonic";
  double aniso = 1.0;
  double bump_a = 0.5;
  double bump_b = 2.0;
  std::string table;  // CSV with columns r,W
  std::vector<double> eps;
  std::optional<int> n;
  std::optional<double> rmax;
  std::optional<double> box;
  double p = 2.0;
  double xmin = -30.0;
  double xmax = 15.0;
  std::string out = "out";
  int jobs = 1;
  std::optional<double> tol;

  /// Canonical key=value text of everything that affects outputs (not out or jobs).
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
};

/// Raw key=value pairs; '#' starts a comment.  Throws ConfigError on a malformed line.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Validates and converts raw keys; unknown keys throw ConfigError naming the key.
RunConfig resolve(const std::string& command, const std::map<std::string, std::string>& raw);

trap::Trap make_trap(const RunConfig& cfg);

/// Entry point; returns 0 on success, 1 on solver failure, 2 on configuration error.
int run(int argc, const char* const* argv);

}  // namespace tfc::cli
