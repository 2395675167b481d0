#pragma once

#include <string>

#include "sos/classifier.hpp"
#include "sos/criticals.hpp"
#include "sos/solvers.hpp"

#include <json.hpp>

namespace sos {

// Machine-readable views of the report types. nlohmann::json keeps object
// keys sorted, so dump() of these is byte-stable and round-trips exactly.
nlohmann::json to_json(const SolutionReport& report);
nlohmann::json to_json(const CriticalSet& cs);
nlohmann::json to_json(const RegimeReport& report);

// Fixed-width numeric formatting: 17 significant digits for machine output,
// 6 for human-facing text. NaN prints as "nan".
std::string format_machine(double v);
std::string format_human(double v);

} // namespace sos
