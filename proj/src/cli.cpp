#include "tsketch/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsketch/baselines.hpp"
#include "tsketch/dataset.hpp"
#include "tsketch/errors.hpp"
#include "tsketch/eval.hpp"
#include "tsketch/report.hpp"
#include "tsketch/tensor_sketch.hpp"

namespace tsketch {

namespace {

struct TransformOptions {
  std::string input;
  std::string format = "libsvm";
  std::string output;
  unsigned degree = 0;
  std::size_t dim_out = 0;
  double offset = 0.0;
  std::uint64_t seed = 0;
  std::string estimator = "tensor";
  std::optional<std::size_t> dim_in;
  bool binary = false;
  bool label_first = false;
  bool serial = false;
};

struct BenchOptions {
  std::string mode;
  std::string estimator = "tensor";
  // Unset dimensions take per-mode defaults.
  std::optional<std::size_t> input_dim;
  std::optional<std::size_t> dim_out;
  unsigned degree = 2;
  double offset = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 100000;
  std::string input;
  std::string format = "libsvm";
  bool label_first = false;
  std::size_t n = 100;
  double z = 3.0;
  double slack = 1.05;
  double threshold = 0.65;
  std::vector<std::size_t> dims{256, 1024, 4096};
  std::size_t reps = 5;
  double max_ratio = 8.0;
  std::string output = "-";
};

Dataset load_dataset(const std::string& path, const std::string& format,
                     bool label_first, std::optional<std::size_t> dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file '" + path + "'");
  if (format == "libsvm") return parse_libsvm(in, dim);
  if (format == "csv") return parse_csv_dense(in, label_first, dim);
  throw ParameterError("unknown format '" + format + "' (expected libsvm or csv)");
}

// Writes through `write` to `path`, or to `out` when path is "-".
template <typename F>
void emit(const std::string& path, std::ostream& out, bool binary, F&& write) {
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + path + "'");
  write(file);
  file.flush();
  if (!file) throw IoError("failed writing output file '" + path + "'");
}

int run_transform(const TransformOptions& opt, std::ostream& out) {
  const EstimatorKind kind = parse_estimator_kind(opt.estimator);
  if (kind == EstimatorKind::ams) {
    throw ParameterError("transform: the ams estimator has no feature map");
  }
  const Dataset data = load_dataset(opt.input, opt.format, opt.label_first, opt.dim_in);
  const SketchConfig config{std::max<std::size_t>(data.dim, 1), opt.dim_out,
                            opt.degree, opt.offset, opt.seed};
  FeatureMatrix features;
  if (kind == EstimatorKind::tensor) {
    const TensorSketchMap map(config);
    features = opt.serial ? map.apply_batch_serial(data.vectors)
                          : map.apply_batch(data.vectors);
  } else {
    const MaclaurinMap map(config, opt.offset > 0.0 ? MaclaurinMode::inhomogeneous
                                                    : MaclaurinMode::homogeneous);
    features = opt.serial ? map.apply_batch_serial(data.vectors)
                          : map.apply_batch(data.vectors);
  }
  emit(opt.output, out, opt.binary, [&](std::ostream& os) {
    if (opt.binary) {
      write_feature_binary(os, features);
    } else {
      write_feature_csv(os, features);
    }
  });
  return kExitOk;
}

int run_bias_variance(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  const EstimatorKind kind = parse_estimator_kind(opt.estimator);
  std::vector<InputVector> pair;
  std::size_t d = opt.input_dim.value_or(6);
  if (!opt.input.empty()) {
    Dataset data = load_dataset(opt.input, opt.format, opt.label_first, std::nullopt);
    if (data.size() < 2) throw ParameterError("bias-variance: input needs at least two rows");
    d = data.dim;
    pair = {data.vectors[0], data.vectors[1]};
  } else {
    pair = gaussian_dataset(2, d, opt.seed, true);
  }
  const SketchConfig config{d, opt.dim_out.value_or(16), opt.degree, opt.offset, opt.seed};
  const EstimateStats stats = run_trials(kind, pair[0], pair[1], config, opt.trials, opt.seed);
  const bool unbiased = stats.unbiased_within(opt.z);
  const bool bounded = stats.variance_within_bound(opt.slack);
  emit(opt.output, out, false, [&](std::ostream& os) {
    os << stats_to_json("bias-variance", kind, config, stats, unbiased && bounded).dump(2)
       << '\n';
  });
  std::ostringstream why;
  why << std::setprecision(17);
  if (!unbiased) {
    why << "violated: |mean - target| = |" << stats.mean << " - " << stats.target
        << "| > " << opt.z << " * std_error = " << opt.z * stats.std_error << '\n';
  }
  if (!bounded) {
    why << "violated: variance = " << stats.variance << " > " << opt.slack
        << " * bound = " << opt.slack * stats.bound << '\n';
  }
  err << why.str();
  return unbiased && bounded ? kExitOk : kExitBoundViolation;
}

int run_gram(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  const EstimatorKind kind = parse_estimator_kind(opt.estimator);
  std::vector<InputVector> data;
  std::size_t d = opt.input_dim.value_or(16);
  if (!opt.input.empty()) {
    Dataset ds = load_dataset(opt.input, opt.format, opt.label_first, std::nullopt);
    d = std::max<std::size_t>(ds.dim, 1);
    data = std::move(ds.vectors);
  } else {
    data = gaussian_dataset(opt.n, d, opt.seed, true);
  }
  const SketchConfig config{d, opt.dim_out.value_or(1024), opt.degree, opt.offset, opt.seed};
  const GramErrorReport report = gram_error(data, config, kind);
  const bool pass = report.frobenius_rel_error <= opt.threshold;
  emit(opt.output, out, false, [&](std::ostream& os) {
    os << gram_to_json(kind, config, report, opt.threshold, pass).dump(2) << '\n';
  });
  if (!pass) {
    err << std::setprecision(17) << "violated: frobenius_rel_error = "
        << report.frobenius_rel_error << " > threshold = " << opt.threshold << '\n';
  }
  return pass ? kExitOk : kExitBoundViolation;
}

int run_timing(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  TimingOptions t;
  t.input_dim = opt.input_dim.value_or(1024);
  t.vectors = opt.n;
  t.feature_dims = opt.dims;
  t.degree = opt.degree;
  t.offset = opt.offset;
  t.seed = opt.seed;
  t.repetitions = opt.reps;
  for (std::size_t D : t.feature_dims) {
    SketchConfig{t.input_dim, D, t.degree, t.offset, t.seed}.validate();
  }
  const auto rows = timing_profile(t);
  emit(opt.output, out, false, [&](std::ostream& os) {
    os << "D,median_seconds_per_vector,min_seconds_per_vector\n";
    os << std::setprecision(9);
    for (const auto& r : rows) {
      os << r.feature_dim << ',' << r.median_seconds_per_vector << ','
         << r.min_seconds_per_vector << '\n';
    }
  });
  const bool pass = timing_profile_ok(rows, opt.max_ratio);
  if (!pass) {
    err << "violated: per-vector time must be non-decreasing in D and time(4D)/time(D) < "
        << opt.max_ratio << '\n';
  }
  return pass ? kExitOk : kExitBoundViolation;
}

int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.mode == "bias-variance") return run_bias_variance(opt, out, err);
  if (opt.mode == "gram-error") return run_gram(opt, out, err);
  if (opt.mode == "timing") return run_timing(opt, out, err);
  throw ParameterError("unknown bench mode '" + opt.mode + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tensor Sketch random features for polynomial kernels", "tsketch"};
  app.require_subcommand(1);

  TransformOptions t;
  auto* transform = app.add_subcommand("transform", "Map a dataset to D random features");
  transform->add_option("--input", t.input, "Dataset path")->required();
  transform->add_option("--format", t.format, "libsvm or csv")
      ->check(CLI::IsMember({"libsvm", "csv"}));
  transform->add_option("--output", t.output, "Feature matrix path ('-' for stdout)")
      ->required();
  transform->add_option("--degree", t.degree, "Polynomial degree p")->required();
  transform->add_option("--dim-out", t.dim_out, "Feature dimension D")->required();
  transform->add_option("--offset", t.offset, "Kernel offset c >= 0");
  transform->add_option("--seed", t.seed, "Seed of all randomness")->required();
  transform->add_option("--estimator", t.estimator, "tensor or maclaurin");
  transform->add_option("--dim-in", t.dim_in, "Force the input dimension d");
  transform->add_flag("--binary", t.binary, "Write the little-endian binary matrix");
  transform->add_flag("--label-first", t.label_first, "CSV rows start with a label");
  transform->add_flag("--serial", t.serial, "Single-threaded reference path");

  BenchOptions b;
  auto* bench = app.add_subcommand("bench", "Statistical and timing checks");
  bench->add_option("--mode", b.mode, "bias-variance, gram-error or timing")
      ->required()
      ->check(CLI::IsMember({"bias-variance", "gram-error", "timing"}));
  bench->add_option("--estimator", b.estimator, "tensor, ams or maclaurin");
  bench->add_option("--input-dim", b.input_dim, "d for generated data (6, 16 or 1024 by mode)");
  bench->add_option("--dim-out", b.dim_out, "Feature dimension D (16 or 1024 by mode)");
  bench->add_option("--degree", b.degree, "Polynomial degree p");
  bench->add_option("--offset", b.offset, "Kernel offset c >= 0");
  bench->add_option("--seed", b.seed, "Master seed")->required();
  bench->add_option("--trials", b.trials, "Independent maps (bias-variance)");
  bench->add_option("--input", b.input, "Dataset instead of generated vectors");
  bench->add_option("--format", b.format, "libsvm or csv")
      ->check(CLI::IsMember({"libsvm", "csv"}));
  bench->add_flag("--label-first", b.label_first, "CSV rows start with a label");
  bench->add_option("--n", b.n, "Generated vectors (gram-error, timing)");
  bench->add_option("--z", b.z, "Standard errors allowed for the bias check");
  bench->add_option("--slack", b.slack, "Multiplicative slack on the variance bound");
  bench->add_option("--threshold", b.threshold, "Maximum relative Frobenius error");
  bench->add_option("--dims", b.dims, "Feature dimensions for timing")->delimiter(',');
  bench->add_option("--reps", b.reps, "Timing repetitions (>= 5)");
  bench->add_option("--max-ratio", b.max_ratio, "Maximum time(4D)/time(D)");
  bench->add_option("--output", b.output, "Report path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (transform->parsed()) return run_transform(t, out);
    return run_bench(b, out, err);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace tsketch
