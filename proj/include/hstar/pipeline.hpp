#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hstar/json_io.hpp"

namespace hstar {

/// Everything the end-to-end run depends on; echoed into every report so
/// each number is traceable to its parameters.
struct PipelineConfig {
  double ratio = 1.0 / 3.0;
  int depth = 8;
  double exponent = 2.0;      // p in w = d^p
  int grid_size = 1 << 16;    // N
  int generation = 5;         // node generation for the main run
  int count_cap = 1024;
  double alpha_arg = 0.0;     // free unimodular phase of U, in radians
  std::vector<double> epsilons = {0.1};
  long orbit_steps = 2000;
  std::uint64_t seed = 1;
};

json to_json(const PipelineConfig& c);
PipelineConfig pipeline_config_from_json(const json& j);

struct StageResult {
  std::string name;
  bool passed = false;
  bool heuristic = false;
  json report;
};

struct PipelineResult {
  std::vector<StageResult> stages;
  bool all_passed = false;    // heuristic stages excluded
  int suggested_exit = 0;     // 0 ok, 3 stage failure, 4 ill-conditioned Gram
  std::string failed_stage;
  json summary;
};

/// set -> weight -> Gram -> truncation -> subspaces -> lemma2 -> unitary ->
/// spectrum -> eigenvector/completeness/continuity checks -> orbit. When
/// out_dir is nonempty, one JSON file per stage plus summary.json and
/// continuity.csv are written there.
PipelineResult run_pipeline(const PipelineConfig& config, const std::string& out_dir);

}  // namespace hstar
