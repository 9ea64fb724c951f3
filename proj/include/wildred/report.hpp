#ifndef WILDRED_REPORT_HPP
#define WILDRED_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wildred/orbitflat.hpp"

namespace wildred {

inline constexpr const char* kToolVersion = "wildred 0.1.0";

struct CliOptions {
    std::size_t grade_bound = 3;
    std::size_t samples = 20;
    std::uint64_t seed = 0;
    std::optional<std::vector<Rat>> epsilons;
};

struct ParsedConfig {
    std::string algebra_type;
    std::size_t rank = 0;
    CliOptions options;
    WildConfig wild;
};

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& text, const std::string& field);

/// Parses a config document; throws validation_error naming the offending
/// field on malformed input.
ParsedConfig parse_config(const nlohmann::json& doc);

/// Canonical re-serialization; parse_config(config_echo(c)) reproduces c.
nlohmann::json config_echo(const ParsedConfig& cfg);

/// Dispatches one of classify/flatness/stability/verma/unfold/rank/full and
/// returns the full report document (echo, sections, version, seed).
nlohmann::json run_command(const std::string& command, const ParsedConfig& cfg,
                           std::size_t threads);

}  // namespace wildred

#endif
