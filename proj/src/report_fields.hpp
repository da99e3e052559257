#pragma once

#include "json.hpp"
#include "spotpath/assemble.hpp"

namespace spotpath::io::detail {

/// Report values under the fixed column names, for the row of `method`.
nlohmann::ordered_json report_row(const assemble::MissionReport& report, model::CoverageMethod method);

}  // namespace spotpath::io::detail

namespace spotpath::io::detail {

const char* name(model::TspInit v);
const char* name(model::Refinement v);
const char* name(model::CoverageMethod v);
const char* name(model::ExitTransition v);
const char* name(model::AvoidanceMethod v);

}  // namespace spotpath::io::detail
