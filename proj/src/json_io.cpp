#include "fairshare/json_io.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace fairshare::io {

Rational rational_from_json(const json& value) {
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Rational(mpz_class(std::to_string(value.get<std::uint64_t>())))
                                      : Rational(mpz_class(std::to_string(value.get<std::int64_t>())));
  }
  if (value.is_number_float()) {
    const std::string text = value.dump();
    if (text.find_first_of("eE") != std::string::npos) {
      throw std::invalid_argument("exponent notation is not supported: " + text + " (use a \"p/q\" string)");
    }
    return parse_rational(text);
  }
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw std::invalid_argument("expected a number or a rational string, got " + value.dump());
}

json rational_to_json(const Rational& value) { return format_rational(value); }

namespace {

RationalMatrix matrix_from_json(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument(std::string(what) + " must be a nonempty array of rows");
  const std::size_t cols = rows.front().is_array() ? rows.front().size() : 0;
  RationalMatrix matrix(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != cols) {
      throw std::invalid_argument(std::string(what) + ": row " + std::to_string(r + 1) + " has the wrong length");
    }
    for (std::size_t c = 0; c < cols; ++c) matrix(r, c) = rational_from_json(rows[r][c]);
  }
  return matrix;
}

std::vector<std::string> labels_from_json(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  std::vector<std::string> labels;
  for (const auto& item : doc.at(key)) labels.push_back(item.get<std::string>());
  return labels;
}

json matrix_to_json(const RationalMatrix& matrix) {
  json rows = json::array();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < matrix.cols(); ++c) row.push_back(rational_to_json(matrix(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json rationals_to_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

}  // namespace

Instance instance_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("valuations")) throw std::invalid_argument("instance JSON needs \"valuations\"");
  return Instance(matrix_from_json(doc.at("valuations"), "valuations"), labels_from_json(doc, "agents"),
                  labels_from_json(doc, "objects"));
}

json instance_to_json(const Instance& inst) {
  return json{{"agents", inst.agent_labels()},
              {"objects", inst.object_labels()},
              {"valuations", matrix_to_json(inst.values())}};
}

Allocation allocation_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("shares")) throw std::invalid_argument("allocation JSON needs \"shares\"");
  return Allocation(matrix_from_json(doc.at("shares"), "shares"));
}

json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  const SharingStats stats = sharing_stats(inst, alloc);
  return json{{"shares", matrix_to_json(alloc.shares())},
              {"utilities", rationals_to_json(utilities(inst, alloc))},
              {"num_sharings", stats.num_sharings},
              {"num_shared_objects", stats.num_shared_objects}};
}

json solve_result_to_json(const Instance& inst, const SolveResult& result) {
  json doc = allocation_to_json(inst, result.allocation);
  doc["certificate"] = rationals_to_json(result.certificate.lambda);
  doc["graphs_examined"] = result.graphs_examined;
  return doc;
}

json cycle_to_json(const Instance& inst, const Cycle& cycle) {
  json labels = json::array();
  auto label = [&](std::size_t node) {
    return node < inst.agents() ? inst.agent_labels()[node] : inst.object_labels()[node - inst.agents()];
  };
  for (std::size_t node : cycle.nodes) labels.push_back(label(node));
  if (!cycle.nodes.empty()) labels.push_back(label(cycle.nodes.front()));
  return json{{"nodes", labels}, {"product", rational_to_json(cycle.product)}};
}

json check_report_to_json(const Instance& inst, const CheckReport& report) {
  json doc{{"fair", report.fair},
           {"fpo", report.fpo},
           {"nonmalicious", report.nonmalicious},
           {"utilities", rationals_to_json(report.utilities)},
           {"num_sharings", report.stats.num_sharings},
           {"num_shared_objects", report.stats.num_shared_objects},
           {"shared_value", rational_to_json(report.stats.shared_value)}};
  if (report.certificate) doc["certificate"] = rationals_to_json(report.certificate->lambda);
  if (report.violating_cycle) doc["violating_cycle"] = cycle_to_json(inst, *report.violating_cycle);
  return doc;
}

void add_decimal_approximations(json& doc) {
  json approx = json::object();
  auto convert = [](const json& v) { return approximate(rational_from_json(v)); };
  for (const char* key : {"utilities", "certificate"}) {
    if (!doc.contains(key)) continue;
    json values = json::array();
    for (const auto& v : doc[key]) values.push_back(convert(v));
    approx[key] = std::move(values);
  }
  if (doc.contains("shares")) {
    json rows = json::array();
    for (const auto& row : doc["shares"]) {
      json out = json::array();
      for (const auto& v : row) out.push_back(convert(v));
      rows.push_back(std::move(out));
    }
    approx["shares"] = std::move(rows);
  }
  if (doc.contains("shared_value")) approx["shared_value"] = convert(doc["shared_value"]);
  doc["approximate"] = std::move(approx);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json(const json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace fairshare::io
