#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace autolog {

/// "YYYY-MM-DD HH:MM:SS" or "YYYY-MM-DDTHH:MM:SS", optional trailing 'Z',
/// interpreted as UTC. Returns nullopt on any other shape.
std::optional<std::int64_t> parse_iso_utc(const std::string& text);

/// Plain base-10 integer (step index). Returns nullopt otherwise.
std::optional<std::int64_t> parse_step_index(const std::string& text);

}  // namespace autolog
