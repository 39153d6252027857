#pragma once

#include <iosfwd>

#include <json.hpp>

#include "contagion/synthgen.hpp"

namespace contagion {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit status: 0 success, 1 validation or input error, 2 usage error.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// JSON mirror of CalibrationProfile; currency ranges are [lo, hi] in euros.
// Unknown keys are rejected with std::invalid_argument.
nlohmann::json profile_to_json(const CalibrationProfile& profile);
CalibrationProfile profile_from_json(const nlohmann::json& j, CalibrationProfile base = {});

}  // namespace contagion
