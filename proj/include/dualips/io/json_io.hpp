// JSON loading for monoids ({"label","size","op_table","neutral"}),
// duality witnesses ({"S","R","T","psi"}, monoid fields either built-in
// labels or inline objects) and process specifications
// ({"process","dim","lengths","rates"}), plus run manifests.
#pragma once

#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dualips/builtins.hpp"
#include "dualips/family.hpp"
#include "dualips/sim.hpp"

namespace dualips {

using Json = nlohmann::json;

inline Json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  Json j;
  f >> j;
  return j;
}

inline FiniteMonoid monoid_from_json(const Json& j) {
  std::vector<std::vector<int>> table = j.at("op_table").get<std::vector<std::vector<int>>>();
  if (j.contains("size") && j.at("size").get<std::size_t>() != table.size())
    throw std::runtime_error("monoid JSON: size does not match op_table");
  auto res = validate_monoid(table, j.at("neutral").get<int>(), j.value("label", std::string()));
  if (!res) throw std::runtime_error("monoid JSON: " + res.error().message());
  return std::move(res).value();
}

// Owns any inline monoids so witness pointers stay valid.
struct LoadedWitness {
  std::vector<std::unique_ptr<FiniteMonoid>> owned;
  Result<DualityWitness, DualityFailure> result =
      Result<DualityWitness, DualityFailure>::fail({0, "not loaded"});
};

inline LoadedWitness witness_from_json(const Json& j) {
  LoadedWitness lw;
  auto resolve = [&](const Json& field) -> const FiniteMonoid* {
    if (field.is_string()) {
      const FiniteMonoid* m = find_builtin_monoid(field.get<std::string>());
      if (!m) throw std::runtime_error("witness JSON: unknown built-in monoid " +
                                       field.get<std::string>());
      return m;
    }
    lw.owned.push_back(std::make_unique<FiniteMonoid>(monoid_from_json(field)));
    return lw.owned.back().get();
  };
  const FiniteMonoid* S = resolve(j.at("S"));
  const FiniteMonoid* R = resolve(j.at("R"));
  const FiniteMonoid* T = resolve(j.at("T"));
  std::vector<std::vector<int>> table = j.at("psi").get<std::vector<std::vector<int>>>();
  if (table.size() != S->size()) throw std::runtime_error("witness JSON: psi row count != |S|");
  std::vector<Elem> psi;
  for (const auto& row : table) {
    if (row.size() != R->size()) throw std::runtime_error("witness JSON: psi column count != |R|");
    for (int v : row) {
      if (v < 0 || std::size_t(v) >= T->size())
        throw std::runtime_error("witness JSON: psi entry out of range");
      psi.push_back(Elem(v));
    }
  }
  lw.result = verify_duality(*S, *R, *T, psi, j.value("label", std::string()));
  return lw;
}

struct ProcessSpec {
  ProcessKind kind = ProcessKind::CP;
  std::vector<int> lengths;
  ProcessParams params;
};

inline ProcessSpec process_from_json(const Json& j) {
  ProcessSpec spec;
  std::string p = j.at("process").get<std::string>();
  if (p == "cp")
    spec.kind = ProcessKind::CP;
  else if (p == "ccp")
    spec.kind = ProcessKind::CCP;
  else if (p == "2cp")
    spec.kind = ProcessKind::TwoCP;
  else
    throw std::runtime_error("process JSON: unknown process " + p);

  if (j.contains("lengths"))
    spec.lengths = j.at("lengths").get<std::vector<int>>();
  if (j.contains("dim")) {
    std::size_t d = j.at("dim").get<std::size_t>();
    if (spec.lengths.size() == 1 && d > 1) spec.lengths.assign(d, spec.lengths[0]);
    if (spec.lengths.size() != d) throw std::runtime_error("process JSON: dim/lengths mismatch");
  }
  const Json& r = j.at("rates");
  spec.params.lambda = r.value("lambda", 0.0);
  spec.params.delta = r.value("delta", 0.0);
  spec.params.lambda_or = r.value("lambda_or", 0.0);
  spec.params.delta_or = r.value("delta_or", 0.0);
  spec.params.lambda_xor = r.value("lambda_xor", 0.0);
  spec.params.delta_xor = r.value("delta_xor", 0.0);
  spec.params.check();
  return spec;
}

inline std::string make_manifest(const std::string& command, const Json& effective_config,
                                 std::uint64_t seed, bool evidence_only = false) {
  Json m;
  m["command"] = command;
  m["config"] = effective_config;
  m["seed"] = seed;
  m["version"] = "0.1.0";
  if (evidence_only) m["evidence_only"] = true;
  return m.dump(2) + "\n";
}

}  // namespace dualips
