// Copyright 2026 The Authors.
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

#ifndef MQO_IO_JSON_HPP_
#define MQO_IO_JSON_HPP_

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mqo/error.hpp"
#include "mqo/expense.hpp"
#include "mqo/forest.hpp"
#include "mqo/instance.hpp"
#include "mqo/report.hpp"

namespace mqo::io {

using Json = nlohmann::ordered_json;

/// An instance file: the problem plus an optional generator record.
struct InstanceFile {
  CspInstance instance;
  std::optional<Json> provenance;
};

namespace detail {

[[noreturn]] inline void malformed(const std::string& where,
                                   const std::string& what) {
  throw MalformedInputError(where + ": " + what);
}

inline const Json& field(const Json& obj, const std::string& where,
                         const char* key) {
  if (!obj.is_object()) malformed(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where, std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const Json& v, const std::string& where) {
  if (!v.is_number()) malformed(where, "expected a number");
  return v.get<double>();
}

inline NodeId index(const Json& v, const std::string& where) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xfffffffeULL)
    malformed(where, "expected a non-negative integer id");
  return static_cast<NodeId>(v.get<std::uint64_t>());
}

inline std::string text(const Json& v, const std::string& where) {
  if (!v.is_string()) malformed(where, "expected a string");
  return v.get<std::string>();
}

inline bool flag(const Json& v, const std::string& where) {
  if (!v.is_boolean()) malformed(where, "expected true or false");
  return v.get<bool>();
}

}  // namespace detail

inline ExpenseModel parse_expense(const Json& j, const std::string& where) {
  ExpenseModel m;
  if (!j.is_object()) detail::malformed(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string w = where + "." + it.key();
    if (it.key() == "kind") m.kind = parse_expense_kind(detail::text(*it, w));
    else if (it.key() == "delta") m.delta = detail::number(*it, w);
    else if (it.key() == "rho") m.rho = detail::number(*it, w);
    else detail::malformed(w, "unknown field");
  }
  return m;
}

inline Json expense_json(const ExpenseModel& m) {
  Json j;
  j["kind"] = to_string(m.kind);
  if (m.kind == ExpenseKind::kMaintenance) j["delta"] = m.delta;
  if (m.kind == ExpenseKind::kSharedStorage) j["rho"] = m.rho;
  return j;
}

/// Parses an instance document. Errors name the offending location, e.g.
/// "op_nodes[2].inputs[0]".
inline InstanceFile parse_instance(const Json& doc) {
  if (!doc.is_object()) detail::malformed("$", "expected an object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "eq_nodes" && it.key() != "op_nodes" &&
        it.key() != "roots" && it.key() != "config" && it.key() != "provenance")
      detail::malformed(it.key(), "unknown field");
  ForestBuilder b;
  const Json& eqs = detail::field(doc, "$", "eq_nodes");
  if (!eqs.is_array()) detail::malformed("eq_nodes", "expected an array");
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const std::string w = "eq_nodes[" + std::to_string(i) + "]";
    const Json& e = eqs[i];
    if (detail::index(detail::field(e, w, "id"), w + ".id") != i)
      detail::malformed(w + ".id", "expected " + std::to_string(i));
    const bool cand = e.contains("candidate")
                          ? detail::flag(e["candidate"], w + ".candidate")
                          : false;
    b.add_eq(e.contains("label") ? detail::text(e["label"], w + ".label")
                                 : "e" + std::to_string(i),
             detail::number(detail::field(e, w, "size"), w + ".size"), cand);
  }
  const Json& ops = detail::field(doc, "$", "op_nodes");
  if (!ops.is_array()) detail::malformed("op_nodes", "expected an array");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string w = "op_nodes[" + std::to_string(i) + "]";
    const Json& o = ops[i];
    if (detail::index(detail::field(o, w, "id"), w + ".id") != i)
      detail::malformed(w + ".id", "expected " + std::to_string(i));
    const Json& ins = detail::field(o, w, "inputs");
    if (!ins.is_array()) detail::malformed(w + ".inputs", "expected an array");
    std::vector<NodeId> inputs;
    for (std::size_t k = 0; k < ins.size(); ++k) {
      const std::string wk = w + ".inputs[" + std::to_string(k) + "]";
      inputs.push_back(detail::index(ins[k], wk));
      if (inputs.back() >= b.eq_count()) detail::malformed(wk, "no such eq-node");
    }
    const NodeId out = detail::index(detail::field(o, w, "output"), w + ".output");
    if (out >= b.eq_count()) detail::malformed(w + ".output", "no such eq-node");
    b.add_op(o.contains("label") ? detail::text(o["label"], w + ".label")
                                 : "o" + std::to_string(i),
             detail::number(detail::field(o, w, "cost"), w + ".cost"),
             std::move(inputs), out);
  }
  const Json& roots = detail::field(doc, "$", "roots");
  if (!roots.is_array()) detail::malformed("roots", "expected an array");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const std::string w = "roots[" + std::to_string(i) + "]";
    const NodeId eq = detail::index(detail::field(roots[i], w, "eq"), w + ".eq");
    if (eq >= b.eq_count()) detail::malformed(w + ".eq", "no such eq-node");
    const double weight = roots[i].contains("weight")
                              ? detail::number(roots[i]["weight"], w + ".weight")
                              : 1.0;
    b.add_root(eq, weight);
  }

  ExpenseModel model;
  Budget budget;
  if (doc.contains("config")) {
    const Json& c = doc["config"];
    if (!c.is_object()) detail::malformed("config", "expected an object");
    for (auto it = c.begin(); it != c.end(); ++it) {
      const std::string w = "config." + it.key();
      if (it.key() == "expense") model = parse_expense(*it, w);
      else if (it.key() == "budget") budget.limit = detail::number(*it, w);
      else if (it.key() == "penalty_r") budget.penalty_r = detail::number(*it, w);
      else detail::malformed(w, "unknown field");
    }
    if (!(budget.limit >= 0.0))
      detail::malformed("config.budget", "must be >= 0");
  }
  InstanceFile f{CspInstance(std::move(b).build(), model, budget), std::nullopt};
  if (doc.contains("provenance")) f.provenance = doc["provenance"];
  return f;
}

inline InstanceFile parse_instance_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInputError(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(doc);
}

inline InstanceFile read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgumentError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance_text(ss.str());
  } catch (const MalformedInputError& e) {
    throw MalformedInputError(path + ": " + e.what());
  }
}

inline Json instance_json(const CspInstance& inst,
                          const std::optional<Json>& provenance = {}) {
  const auto& f = inst.forest();
  Json doc;
  Json eqs = Json::array();
  for (const EqNode& e : f.eq_nodes())
    eqs.push_back({{"id", e.id}, {"label", e.label}, {"size", e.size},
                   {"candidate", e.candidate}});
  Json ops = Json::array();
  for (const OpNode& o : f.op_nodes())
    ops.push_back({{"id", o.id}, {"label", o.label}, {"cost", o.cost},
                   {"inputs", o.inputs}, {"output", o.output}});
  Json roots = Json::array();
  for (const Root& r : f.roots())
    roots.push_back({{"eq", r.eq}, {"weight", r.weight}});
  doc["eq_nodes"] = std::move(eqs);
  doc["op_nodes"] = std::move(ops);
  doc["roots"] = std::move(roots);
  Json config;
  config["expense"] = expense_json(inst.expense_model());
  if (std::isfinite(inst.budget().limit)) config["budget"] = inst.budget().limit;
  if (inst.budget().penalty_r) config["penalty_r"] = *inst.budget().penalty_r;
  doc["config"] = std::move(config);
  if (provenance) doc["provenance"] = *provenance;
  return doc;
}

/// Canonical text: two-space indentation and a trailing newline.
inline std::string instance_text(const CspInstance& inst,
                                 const std::optional<Json>& provenance = {}) {
  return instance_json(inst, provenance).dump(2) + "\n";
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgumentError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgumentError("failed writing '" + path + "'");
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline Json report_json(const CspInstance& inst, const AlgorithmReport& r,
                        bool with_elapsed = true) {
  Json j;
  j["algo"] = r.algo;
  j["seed"] = r.seed;
  j["selection"] = r.selection;
  Json labels = Json::array();
  for (NodeId id : r.selection) labels.push_back(inst.forest().eq(id).label);
  j["selection_labels"] = std::move(labels);
  j["benefit"] = r.benefit;
  j["expense"] = r.expense;
  j["feasible"] = r.feasible;
  j["iterations"] = r.iterations;
  Json counters = Json::object();
  for (const auto& [k, v] : r.counters) counters[k] = v;
  j["counters"] = std::move(counters);
  Json trace = Json::array();
  for (const TracePoint& t : r.trace) trace.push_back({t.benefit, t.expense});
  j["trace"] = std::move(trace);
  if (with_elapsed) j["elapsed_ns"] = r.elapsed_ns;
  return j;
}

inline const char* kReportCsvHeader =
    "algo,seed,benefit,expense,feasible,iterations,elapsed_ns,selection";

inline std::string report_csv_row(const CspInstance& inst,
                                  const AlgorithmReport& r) {
  std::string sel;
  for (NodeId id : r.selection) {
    if (!sel.empty()) sel += ';';
    sel += inst.forest().eq(id).label;
  }
  std::string quoted = "\"";
  for (char c : sel) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return r.algo + "," + std::to_string(r.seed) + "," + format_number(r.benefit) +
         "," + format_number(r.expense) + "," + (r.feasible ? "1" : "0") + "," +
         std::to_string(r.iterations) + "," + std::to_string(r.elapsed_ns) +
         "," + quoted;
}

}  // namespace mqo::io

#endif  // MQO_IO_JSON_HPP_
