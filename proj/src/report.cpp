#include <charconv>

#include "report_fields.hpp"
#include "spotpath/io.hpp"

namespace spotpath::io {
namespace detail {

const char* name(model::TspInit v) { return v == model::TspInit::kNearestNeighbour ? "nn" : "denn"; }

const char* name(model::Refinement v) {
  switch (v) {
    case model::Refinement::kRandomSwap:
      return "h1";
    case model::Refinement::kRemoveReinsert:
      return "h2";
    case model::Refinement::kAdjacentFlip:
      return "h3";
    case model::Refinement::kUncross:
      return "h4";
  }
  return "?";
}

const char* name(model::CoverageMethod v) { return v == model::CoverageMethod::kClassic ? "classic" : "optimised"; }
const char* name(model::ExitTransition v) { return v == model::ExitTransition::kStraight ? "straight" : "headland"; }
const char* name(model::AvoidanceMethod v) { return v == model::AvoidanceMethod::kTangent ? "tangent" : "contour"; }

nlohmann::ordered_json report_row(const assemble::MissionReport& r, model::CoverageMethod method) {
  const model::PlannerConfig& c = r.config;
  const bool classic = method == model::CoverageMethod::kClassic;
  std::string refine;
  for (model::Refinement h : c.tsp_refine) refine += (refine.empty() ? "" : "+") + std::string(name(h));
  std::string per_classic, per_optim;
  for (const assemble::PatchReport& p : r.patches) {
    if (!p.covered) continue;
    char buf[64];
    auto add = [&](std::string& s, double v) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), v);
      s += (s.empty() ? "" : ";") + p.id + "=" + std::string(buf, res.ptr);
    };
    add(per_classic, p.classic);
    add(per_optim, p.optimised);
  }
  // The configured method's total comes from the tagged path itself.
  const bool configured = method == c.coverage_method;
  const double total = configured ? r.total_length : (classic ? r.total_classic : r.total_optimised);
  const double share = configured ? r.coverage_share
                                  : (classic ? r.coverage_share_classic : r.coverage_share_optimised);

  nlohmann::ordered_json row;
  row["config"] = std::string(name(c.tsp_init)) + "/" + (refine.empty() ? "none" : refine) + "/" + name(method);
  row["tsp_init"] = name(c.tsp_init);
  row["tsp_refine"] = refine;
  row["coverage_method"] = name(method);
  row["exit_transition"] = name(c.exit_transition);
  row["avoidance"] = name(c.avoidance);
  row["width_m"] = c.operating_width;
  row["time_limit_s"] = c.time_limit;
  row["move_budget"] = c.move_budget ? static_cast<double>(*c.move_budget) : 0.0;
  row["seed"] = static_cast<double>(c.rng_seed);
  row["runtime_tsp_s"] = r.tsp_runtime;
  row["tsp_iterations"] = static_cast<double>(r.tsp_iterations);
  row["L_tsp_m"] = r.tsp_length;
  row["L_transit_m"] = r.transit_length;
  row["sum_L_classic_m"] = r.sum_classic;
  row["sum_L_optim_m"] = r.sum_optimised;
  row["savings_m"] = r.savings_m;
  row["savings_pct"] = r.savings_pct;
  row["L_total_classic_m"] = r.total_classic;
  row["L_total_optim_m"] = r.total_optimised;
  row["coverage_share_classic"] = r.coverage_share_classic;
  row["coverage_share_optim"] = r.coverage_share_optimised;
  row["L_total_m"] = total;
  row["coverage_share"] = share;
  row["N_patches_all"] = static_cast<double>(r.patches_all);
  row["N_patches_covg"] = static_cast<double>(r.patches_covered);
  row["L_i_classic_m"] = per_classic;
  row["L_i_optim_m"] = per_optim;
  row["runtime_total_s"] = r.runtime;
  return row;
}

}  // namespace detail

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> out;
    const auto row = detail::report_row({}, model::CoverageMethod::kOptimised);
    for (const auto& [key, value] : row.items()) {
      out.push_back(key);
    }
    return out;
  }();
  return columns;
}

std::string report_csv(const assemble::MissionReport& report, bool compare) {
  std::vector<model::CoverageMethod> methods{report.config.coverage_method};
  if (compare) methods = {model::CoverageMethod::kClassic, model::CoverageMethod::kOptimised};
  std::string out;
  for (const std::string& col : report_columns()) out += (out.empty() ? "" : ",") + col;
  out += "\n";
  for (model::CoverageMethod m : methods) {
    std::string line;
    bool first = true;
    const auto row = detail::report_row(report, m);
    for (const auto& [key, value] : row.items()) {
      if (!first) line += ",";
      first = false;
      if (value.is_string()) {
        const std::string s = value.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
          line += s;
        } else {
          line += "\"";
          for (char ch : s) line += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          line += "\"";
        }
      } else {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), value.get<double>());
        line.append(buf, res.ptr);
      }
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace spotpath::io
