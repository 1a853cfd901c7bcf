// Copyright 2026 The ucit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ucit/suite_io.hpp"

#include <cstdint>
#include <sstream>

#include "json.hpp"

namespace ucit {

namespace {

using Json = nlohmann::ordered_json;

Json test_to_json(const TestCase& test) {
  Json out;
  if (const auto* row = std::get_if<RowTest>(&test)) {
    out["kind"] = "row";
    Json values = Json::object();
    for (const auto& [factor, value] : row->values) values[factor] = value;
    out["values"] = std::move(values);
  } else if (const auto* seq = std::get_if<EventSeqTest>(&test)) {
    out["kind"] = "sequence";
    out["events"] = seq->events;
  } else {
    const auto& path = std::get<FsmPathTest>(test);
    out["kind"] = "path";
    out["states"] = path.states;
    out["transitions"] = path.transitions;
    Json values = Json::object();
    for (const auto& [factor, value] : path.values) values[factor] = value;
    out["values"] = std::move(values);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> values_from_json(const Json& values) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [factor, value] : values.items())
    out.emplace_back(factor, value.get<std::string>());
  return out;
}

TestCase test_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "row") {
    RowTest t;
    t.values = values_from_json(j.at("values"));
    return t;
  }
  if (kind == "sequence") {
    EventSeqTest t;
    t.events = j.at("events").get<std::vector<std::string>>();
    return t;
  }
  if (kind == "path") {
    FsmPathTest t;
    t.states = j.at("states").get<std::vector<std::string>>();
    t.transitions = j.at("transitions").get<std::vector<std::string>>();
    t.values = values_from_json(j.at("values"));
    return t;
  }
  throw Error("unknown test kind '" + kind + "' in suite");
}

std::string parse_csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") != std::string::npos)
    throw Error("CSV cells may not contain commas, quotes, or newlines");
  return cell;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string model_hash_hex(const ModelDocument& doc) {
  const std::string text = print_model(doc);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::string suite_to_json(const UcitObject& object) {
  Json out;
  Json meta;
  meta["model_hash"] = object.metadata.model_hash;
  meta["criterion"] = object.metadata.criterion;
  meta["policy"] = {{"order", to_string(object.metadata.policy.order)},
                    {"seed", object.metadata.policy.seed}};
  meta["requirement_count"] = object.metadata.requirement_count;
  meta["test_count"] = object.metadata.test_count;
  out["metadata"] = std::move(meta);
  out["subsets"] = object.subsets;
  Json tests = Json::array();
  for (const TestCase& t : object.tests) tests.push_back(test_to_json(t));
  out["tests"] = std::move(tests);
  return out.dump(2) + "\n";
}

UcitObject suite_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    UcitObject object;
    const Json& meta = j.at("metadata");
    object.metadata.model_hash = meta.at("model_hash").get<std::string>();
    object.metadata.criterion = meta.at("criterion").get<std::string>();
    const auto order = meta.at("policy").at("order").get<std::string>();
    if (order == "as-enumerated") {
      object.metadata.policy.order = RequirementOrder::AsEnumerated;
    } else if (order == "shuffled") {
      object.metadata.policy.order = RequirementOrder::Shuffled;
    } else {
      throw Error("unknown requirement order '" + order + "' in suite");
    }
    object.metadata.policy.seed = meta.at("policy").at("seed").get<std::uint64_t>();
    object.metadata.requirement_count = meta.at("requirement_count").get<std::int64_t>();
    object.metadata.test_count = meta.at("test_count").get<std::int64_t>();
    object.subsets = j.at("subsets").get<std::vector<std::vector<int>>>();
    for (const Json& t : j.at("tests")) object.tests.push_back(test_from_json(t));
    return object;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed suite JSON: ") + e.what());
  }
}

std::string suite_to_csv(const UcitObject& object, const SpaceEncoding& enc) {
  const CoveringArrayModel& model = enc.ca();
  std::ostringstream out;
  for (std::size_t f = 0; f < model.factors.size(); ++f) {
    if (f > 0) out << ',';
    out << parse_csv_cell(model.factors[f].name);
  }
  out << '\n';
  for (const TestCase& test : object.tests) {
    const auto* row = std::get_if<RowTest>(&test);
    if (row == nullptr) throw Error("only row tests have a CSV form");
    if (row->values.size() != model.factors.size())
      throw Error("row width does not match the model's factor count");
    for (std::size_t f = 0; f < model.factors.size(); ++f) {
      if (row->values[f].first != model.factors[f].name)
        throw Error("row factor order does not match the model");
      if (f > 0) out << ',';
      out << parse_csv_cell(row->values[f].second);
    }
    out << '\n';
  }
  return out.str();
}

UcitObject suite_from_csv(const std::string& text, const SpaceEncoding& enc) {
  const CoveringArrayModel& model = enc.ca();
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("CSV suite is missing its header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_csv_row(line);
  if (header.size() != model.factors.size())
    throw Error("CSV header has " + std::to_string(header.size()) + " columns, model has " +
                std::to_string(model.factors.size()) + " factors");
  for (std::size_t f = 0; f < header.size(); ++f)
    if (header[f] != model.factors[f].name)
      throw Error("CSV column '" + header[f] + "' does not match factor '" +
                  model.factors[f].name + "'");

  UcitObject object;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_row(line);
    if (cells.size() != header.size())
      throw Error("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                  std::to_string(header.size()));
    RowTest row;
    for (std::size_t f = 0; f < cells.size(); ++f) row.values.emplace_back(header[f], cells[f]);
    object.tests.emplace_back(std::move(row));
  }
  object.metadata.test_count = static_cast<std::int64_t>(object.tests.size());
  return object;
}

std::string report_to_json(const CoverageReport& report) {
  Json out;
  out["total"] = report.total;
  out["covered"] = report.covered;
  out["invalid_tests"] = report.invalid_tests;
  out["full_coverage"] = report.full_coverage();
  out["covering_tests"] = report.covering_tests;
  Json valid = Json::array();
  for (const bool v : report.test_valid) valid.push_back(v);
  out["test_valid"] = std::move(valid);
  out["test_errors"] = report.test_errors;
  return out.dump(2) + "\n";
}

}  // namespace ucit
