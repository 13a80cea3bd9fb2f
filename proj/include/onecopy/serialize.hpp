#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "onecopy/circuit.hpp"
#include "onecopy/markov.hpp"
#include "onecopy/observable.hpp"
#include "onecopy/simulator.hpp"

namespace onecopy {

// Wire formats, exact field names:
//   circuit     {"n": 4, "layers": [[{"qubits": [0,1], "matrix": [[re,im] x 16]} ...] ...]}
//   channel     {"kraus": [[[re,im] x 16] ...]}
//   observable  {"basis": "ZZZZ", "terms": [{"support": [0], "coeff": 0.25} ...]}
//   process     {"alphabets": [2,2], "layers": [[{"coords": [0,1], "matrix": [[...] ...]} ...] ...]}
//   functional  {"alphabets": [2,2], "terms": [{"support": [0], "coeff": 1.0, "table": [...]} ...]}
// Gate matrices are row major; [re, im] pairs encode complex entries.

nlohmann::json circuit_to_json(const LayeredCircuit& c);
LayeredCircuit circuit_from_json(const nlohmann::json& j);

nlohmann::json channel_to_json(const TwoQubitChannel& ch);
TwoQubitChannel channel_from_json(const nlohmann::json& j);

nlohmann::json observable_to_json(const Observable& o);
Observable observable_from_json(const nlohmann::json& j, bool renormalize = false);

nlohmann::json process_to_json(const markov::MarkovProcess& m);
markov::MarkovProcess process_from_json(const nlohmann::json& j);

nlohmann::json functional_to_json(const markov::LinearFunctional& f);
markov::LinearFunctional functional_from_json(const nlohmann::json& j);

// Throws IoError on a missing file or malformed JSON; parse errors carry
// the 1-based line number.
nlohmann::json load_json_file(const std::string& path);

LayeredCircuit load_circuit(const std::string& path);
TwoQubitChannel load_channel(const std::string& path);
Observable load_observable(const std::string& path, bool renormalize = false);
markov::MarkovProcess load_process(const std::string& path);
markov::LinearFunctional load_functional(const std::string& path);

// FNV-1a over the raw file bytes, as 16 hex digits.
std::string file_hash_hex(const std::string& path);
std::string hex64(std::uint64_t v);

// One row per shot with header q0,...,q{n-1} and values +1/-1, plus a
// sidecar at path + ".json" recording {seed, backend, basis}.
void write_shots_csv(const std::string& path, const std::vector<Shot>& shots,
                     const std::string& backend);
std::vector<Shot> read_shots_csv(const std::string& path);

// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

}  // namespace onecopy
