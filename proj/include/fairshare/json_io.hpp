#pragma once

#include <json.hpp>

#include <string>

#include "fairshare/graph.hpp"
#include "fairshare/model.hpp"
#include "fairshare/solver.hpp"

namespace fairshare::io {

using nlohmann::json;

/// Accepts a JSON integer, a decimal or "p/q" string, or a JSON float (converted from its
/// shortest round-trip decimal form).
Rational rational_from_json(const json& value);
json rational_to_json(const Rational& value);

/// {"agents": [...], "objects": [...], "valuations": [[...]...]}; labels are optional.
Instance instance_from_json(const json& doc);
json instance_to_json(const Instance& inst);

/// {"shares": [[...]...]}; other keys are ignored.
Allocation allocation_from_json(const json& doc);

/// {"shares", "utilities", "num_sharings", "num_shared_objects"}.
json allocation_to_json(const Instance& inst, const Allocation& alloc);

/// Allocation JSON plus "certificate" and "graphs_examined".
json solve_result_to_json(const Instance& inst, const SolveResult& result);

/// Alternating agent/object labels along the cycle, closed by repeating the first label.
json cycle_to_json(const Instance& inst, const Cycle& cycle);

json check_report_to_json(const Instance& inst, const CheckReport& report);

/// Adds an "approximate" member with floating-point renderings of shares and utilities.
void add_decimal_approximations(json& doc);

json read_json_file(const std::string& path);
void write_json(const json& doc, const std::string& path);  // "-" or "" means stdout

}  // namespace fairshare::io
