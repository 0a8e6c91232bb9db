#include "tsketch/report.hpp"

#include <cmath>
#include <string>

namespace tsketch {

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json config_to_json(const SketchConfig& config) {
  return {{"d", config.input_dim},
          {"D", config.feature_dim},
          {"p", config.degree},
          {"c", config.offset},
          {"seed", config.seed}};
}

nlohmann::json stats_to_json(std::string_view mode, EstimatorKind kind,
                             const SketchConfig& config,
                             const EstimateStats& stats, bool pass) {
  return {{"mode", std::string(mode)},
          {"estimator", std::string(to_string(kind))},
          {"config", config_to_json(config)},
          {"trials", stats.trials},
          {"mean", stats.mean},
          {"variance", stats.variance},
          {"std_error", stats.std_error},
          {"target", stats.target},
          {"bound", number_or_null(stats.bound)},
          {"pass", pass}};
}

nlohmann::json gram_to_json(EstimatorKind kind, const SketchConfig& config,
                            const GramErrorReport& report, double threshold,
                            bool pass) {
  return {{"mode", "gram-error"},
          {"estimator", std::string(to_string(kind))},
          {"config", config_to_json(config)},
          {"n", report.n},
          {"frobenius_rel_error", number_or_null(report.frobenius_rel_error)},
          {"max_abs_entry_error", report.max_abs_entry_error},
          {"threshold", threshold},
          {"pass", pass}};
}

}  // namespace tsketch
