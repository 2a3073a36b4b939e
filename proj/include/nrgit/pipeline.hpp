#pragma once

#include "nrgit/blowup.hpp"
#include "nrgit/instance.hpp"
#include "nrgit/strata.hpp"

namespace nrgit {

/// Reports are JSON with sorted keys; see the README for the frozen field
/// layout. Every report carries an "ok" flag: true when the checked
/// conditions hold / a quotient description was produced.
nlohmann::json check_report(const Instance& inst);
nlohmann::json stratify_report(const Instance& inst);
nlohmann::json quotient_report(const Instance& inst);
nlohmann::json blowup_report(const Instance& inst);
nlohmann::json pipeline_report(const Instance& inst);

/// 0 when the report's "ok" flag is true, 1 otherwise.
int report_exit_code(const nlohmann::json& report);

} // namespace nrgit
