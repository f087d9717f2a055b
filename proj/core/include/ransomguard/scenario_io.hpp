#pragma once

#include <string>
#include <string_view>

#include "ransomguard/model.hpp"

namespace ransomguard {

// Parses scenario JSON text. Syntax and shape problems raise
// MalformedScenario; semantic ones raise InvariantViolation.
Scenario parse_scenario(std::string_view text);

// Canonical JSON text (sorted keys, two-space indent). parse_scenario of
// the result yields a Scenario equal to the input.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace ransomguard
