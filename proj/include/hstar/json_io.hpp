#pragma once

#include <nlohmann/json.hpp>

#include "hstar/clark.hpp"
#include "hstar/grivaux.hpp"
#include "hstar/truncation.hpp"

namespace hstar {

using nlohmann::json;

json complex_to_json(std::complex<double> z);
std::complex<double> complex_from_json(const json& j);

// {"arcs": [{"start": float, "length": float}...], "depth": int, "tag": string}
// plus a "generations" array so node sampling survives a round trip.
json to_json(const CarlesonSet& set);
CarlesonSet carleson_set_from_json(const json& j);

json to_json(const EntropyResult& r);
json to_json(const MarginReport& r);
json to_json(const NodeFamily& f);

// {"N": int, "p": float, "floor": float, "modulus": [...], "phase": [...],
//  "phi0": [re, im]}; stored samples round-trip bit-exactly.
json to_json(const OuterFunction& f);
OuterFunction outer_from_json(const json& j);

// {"nodes": [angle...], "coeffs": [[re, im]...]}
json to_json(const KernelCoefficients& f);

// row-major complex entries [[re, im]...]
json to_json(const GramMatrix& g);

json to_json(const EvalBoundReport& r);
json to_json(const Lemma2Report& r);
json to_json(const SpectrumReport& r);
json to_json(const ContinuityTable& t);
std::string continuity_csv(const ContinuityTable& t);  // "n,m,chordal_gap,kernel_gap"
json to_json(const EigenvectorReport& r);
json to_json(const CompletenessReport& r);
json to_json(const EpsilonReport& r);
json to_json(const OrbitReport& r);  // carries "heuristic": true

// {"alpha": [re, im], "atoms": [{"tau": [re, im], "mass": float}...],
//  "normalization": "paper-1-over-pi"}
json to_json(const ClarkMeasure& m);
json to_json(const HerglotzReport& r);
json to_json(const ClarkFamilyReport& r);

}  // namespace hstar
