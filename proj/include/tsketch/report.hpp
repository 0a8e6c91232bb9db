#pragma once

// JSON records emitted by the bench harness.
//   stats:  {mode, estimator, config{d,D,p,c,seed}, trials, mean, variance,
//            std_error, target, bound, pass}
//   gram:   {mode, estimator, config{...}, n, frobenius_rel_error,
//            max_abs_entry_error, threshold, pass}
// A bound that does not apply is written as null.

#include <string_view>

#include "json.hpp"
#include "tsketch/eval.hpp"
#include "tsketch/tensor_sketch.hpp"

namespace tsketch {

nlohmann::json config_to_json(const SketchConfig& config);

nlohmann::json stats_to_json(std::string_view mode, EstimatorKind kind,
                             const SketchConfig& config,
                             const EstimateStats& stats, bool pass);

nlohmann::json gram_to_json(EstimatorKind kind, const SketchConfig& config,
                            const GramErrorReport& report, double threshold,
                            bool pass);

}  // namespace tsketch
