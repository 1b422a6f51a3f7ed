// bipres: presentations, Betti numbers, and Hilbert functions of
// 2-parameter persistence modules given as FI-Rep files or built from point
// clouds / distance matrices via a density-Rips bifiltration.
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 validation, 5 internal
// inconsistency.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bipres/bifiltration.hpp"
#include "bipres/bigraded_reduction.hpp"
#include "bipres/errors.hpp"
#include "bipres/firep_io.hpp"
#include "bipres/oracle.hpp"
#include "bipres/presentation.hpp"

namespace {

using namespace bipres;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitValidation = 4;
constexpr int kExitInternal = 5;

struct InputOptions {
  std::string firep_path;
  std::string points_path;
  std::string dist_path;
  std::int64_t annulus_n = 0;
  std::uint64_t seed = 1;
  std::uint32_t p = 2;
  int degree = 0;
  double radius = 0.0;
  double percentile = 0.0;
  bool no_self_density = false;
  double max_diameter = 0.0;  // 0 = no cutoff
};

struct CommonOptions {
  std::string output_path;  // empty = stdout
  std::string format = "text";
  int threads = 1;
  std::string backend = "sorted";
};

void add_input_flags(CLI::App* cmd, InputOptions& in, bool firep_ok) {
  if (firep_ok) cmd->add_option("--firep", in.firep_path, "FI-Rep document to read");
  cmd->add_option("--points", in.points_path, "point cloud file (rows of coordinates)");
  cmd->add_option("--dist", in.dist_path, "square distance matrix file");
  cmd->add_option("--annulus", in.annulus_n, "sample a noisy annulus cloud of this size");
  cmd->add_option("--seed", in.seed, "seed for --annulus")->capture_default_str();
  cmd->add_option("-p,--field", in.p, "field characteristic (prime below 2^16)")
      ->capture_default_str();
  cmd->add_option("--degree", in.degree, "homology degree (0 or 1)")
      ->check(CLI::Range(0, 1))
      ->capture_default_str();
  cmd->add_option("--radius", in.radius, "density radius");
  cmd->add_option("--percentile", in.percentile,
                  "density radius as a percentile (0, 1) of nonzero distances");
  cmd->add_flag("--no-self-density", in.no_self_density,
                "do not count a point towards its own density");
  cmd->add_option("--max-diameter", in.max_diameter,
                  "drop simplices with diameter above this cutoff");
}

void add_common_flags(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("-o,--output", common.output_path, "output file (default: stdout)");
  cmd->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", common.threads,
                  "threads for minimization and Betti extraction (0 = all cores)")
      ->capture_default_str();
  cmd->add_option("--column-backend", common.backend, "reduction column container")
      ->check(CLI::IsMember({"sorted", "lazy-heap"}))
      ->capture_default_str();
}

OutputFormat parse_format(const std::string& f) {
  return f == "json" ? OutputFormat::json : OutputFormat::text;
}

ColumnBackend parse_backend(const std::string& b) {
  return b == "lazy-heap" ? ColumnBackend::lazy_heap : ColumnBackend::sorted_list;
}

void emit(const CommonOptions& common, const std::string& text) {
  if (common.output_path.empty())
    std::fwrite(text.data(), 1, text.size(), stdout);
  else
    write_file(common.output_path, text);
}

DistanceMatrix load_distances(const InputOptions& in) {
  if (!in.dist_path.empty()) return read_distance_matrix_file(in.dist_path);
  PointCloud cloud;
  if (!in.points_path.empty())
    cloud = read_point_cloud_file(in.points_path);
  else if (in.annulus_n > 0)
    cloud = annulus_sample(in.annulus_n, in.seed);
  else
    throw ValidationError("no input given: use --firep, --points, --dist, or --annulus");
  return euclidean_distances(cloud);
}

FIRep load_firep(const InputOptions& in) {
  if (!in.firep_path.empty()) return read_firep_file(in.firep_path);
  DistanceMatrix dist = load_distances(in);

  DensityRipsOptions rips;
  if (in.radius > 0.0 && in.percentile > 0.0)
    throw ValidationError("give exactly one of --radius and --percentile");
  if (in.percentile > 0.0)
    rips.density_radius = percentile_radius(dist, in.percentile);
  else if (in.radius > 0.0)
    rips.density_radius = in.radius;
  else
    throw ValidationError("distance input needs --radius or --percentile");
  rips.include_self = !in.no_self_density;
  if (in.max_diameter > 0.0) rips.max_diameter = in.max_diameter;
  rips.max_dim = in.degree + 1;

  DensityRipsComplex complex = build_density_rips(dist, rips);
  return build_firep(complex, in.degree, PrimeField(in.p));
}

int cmd_presentation(const InputOptions& in, const CommonOptions& common, bool semi) {
  FIRep fr = load_firep(in);
  PipelineOptions opts;
  opts.minimal = !semi;
  opts.threads = common.threads;
  opts.sweep.backend = parse_backend(common.backend);
  PipelineResult result = run_pipeline(fr, opts);
  std::fprintf(stderr, "semi-minimal presentation: %.3f s\nminimization: %.3f s\n",
               result.semi_minimal_seconds, result.minimize_seconds);
  canonicalize(result.presentation);
  emit(common, serialize_presentation(result.presentation, parse_format(common.format)));
  return 0;
}

int cmd_betti(const InputOptions& in, const CommonOptions& common, bool include_hilbert,
              bool oracle_check) {
  FIRep fr = load_firep(in);
  PipelineOptions opts;
  opts.minimal = false;
  opts.betti = true;
  opts.threads = common.threads;
  opts.sweep.backend = parse_backend(common.backend);
  PipelineResult result = run_pipeline(fr, opts);

  OutputFormat format = parse_format(common.format);
  std::string out;
  if (oracle_check) {
    std::vector<Grade> grid = oracle_default_grid(fr);
    BettiTable reference = oracle_betti(fr, grid);
    HilbertFunction reference_hilbert = oracle_hilbert(fr, grid);
    bool betti_match = reference == *result.betti;
    bool hilbert_match = true;
    for (const Grade& g : grid)
      if (reference_hilbert.at(g) != result.hilbert->at(g)) hilbert_match = false;
    out += (betti_match && hilbert_match) ? "MATCH\n" : "MISMATCH\n";
    out += "computed:\n";
    out += serialize_betti(*result.betti, format);
    out += "oracle:\n";
    out += serialize_betti(reference, format);
    emit(common, out);
    return (betti_match && hilbert_match) ? 0 : kExitInternal;
  }

  if (include_hilbert && format == OutputFormat::json) {
    nlohmann::json doc = nlohmann::json::parse(serialize_betti(*result.betti, format));
    doc["hilbert"] = nlohmann::json::parse(serialize_hilbert(*result.hilbert, format));
    out = doc.dump(2) + "\n";
  } else {
    out = serialize_betti(*result.betti, format);
    if (include_hilbert) out += serialize_hilbert(*result.hilbert, format);
  }
  emit(common, out);
  return 0;
}

int cmd_hilbert(const InputOptions& in, const CommonOptions& common) {
  FIRep fr = load_firep(in);
  SweepOptions sweep;
  sweep.backend = parse_backend(common.backend);
  HilbertFunction hf = hilbert_function(fr, sweep);
  emit(common, serialize_hilbert(hf, parse_format(common.format)));
  return 0;
}

int cmd_firep(const InputOptions& in, const CommonOptions& common,
              const std::string& save_points) {
  if (!save_points.empty() && in.annulus_n > 0)
    write_file(save_points, serialize_point_cloud(annulus_sample(in.annulus_n, in.seed)));
  FIRep fr = load_firep(in);
  emit(common, serialize_firep(fr));
  return 0;
}

int cmd_oracle_check(const InputOptions& in, const CommonOptions& common) {
  return cmd_betti(in, common, false, true);
}

int cmd_bench(const std::vector<std::int64_t>& sizes, const InputOptions& in,
              const CommonOptions& common) {
  using clock = std::chrono::steady_clock;
  std::printf("n\tb\tc\tfirep_s\tsemi_s\tmin_s\tbetti_s\ttotal_s\n");
  for (std::int64_t n : sizes) {
    auto t0 = clock::now();
    InputOptions gen = in;
    gen.annulus_n = n;
    FIRep fr = load_firep(gen);
    double firep_s = std::chrono::duration<double>(clock::now() - t0).count();

    PipelineOptions opts;
    opts.minimal = true;
    opts.betti = true;
    opts.threads = common.threads;
    opts.sweep.backend = parse_backend(common.backend);
    auto t1 = clock::now();
    PipelineResult result = run_pipeline(fr, opts);
    double total = std::chrono::duration<double>(clock::now() - t1).count();
    double betti_s = total - result.semi_minimal_seconds - result.minimize_seconds;
    std::printf("%lld\t%lld\t%lld\t%.3f\t%.3f\t%.3f\t%.3f\t%.3f\n",
                static_cast<long long>(n), static_cast<long long>(fr.d1.num_cols()),
                static_cast<long long>(fr.d2.num_cols()), firep_s,
                result.semi_minimal_seconds, result.minimize_seconds, betti_s, total);
    std::fflush(stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-parameter persistence presentations and bigraded Betti numbers"};
  app.require_subcommand(1);

  InputOptions in;
  CommonOptions common;
  bool semi_minimal = false, minimal = false;
  bool include_hilbert = false, oracle_check_flag = false;
  std::string save_points;
  std::vector<std::int64_t> bench_sizes{25, 50, 100, 200};

  CLI::App* pres = app.add_subcommand("presentation", "compute a (semi-)minimal presentation");
  add_input_flags(pres, in, true);
  add_common_flags(pres, common);
  pres->add_flag("--minimal", minimal, "fully minimize the presentation (default)");
  pres->add_flag("--semi-minimal", semi_minimal, "stop at the semi-minimal presentation");

  CLI::App* betti = app.add_subcommand("betti", "compute the bigraded Betti numbers");
  add_input_flags(betti, in, true);
  add_common_flags(betti, common);
  betti->add_flag("--include-hilbert", include_hilbert, "also print the Hilbert function");
  betti->add_flag("--oracle-check", oracle_check_flag,
                  "verify against the dense pointwise oracle (small inputs)");

  CLI::App* hilbert = app.add_subcommand("hilbert", "compute the Hilbert function");
  add_input_flags(hilbert, in, true);
  add_common_flags(hilbert, common);

  CLI::App* firep = app.add_subcommand("firep", "build an FI-Rep from points or distances");
  add_input_flags(firep, in, false);
  add_common_flags(firep, common);
  firep->add_option("--save-points", save_points, "also write the sampled point cloud");

  CLI::App* oracle_cmd = app.add_subcommand("oracle-check",
                                            "compare the pipeline against the dense oracle");
  add_input_flags(oracle_cmd, in, true);
  add_common_flags(oracle_cmd, common);

  CLI::App* bench = app.add_subcommand("bench", "time the pipeline on annulus clouds");
  add_input_flags(bench, in, false);
  add_common_flags(bench, common);
  bench->add_option("--sizes", bench_sizes, "cloud sizes to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (pres->parsed()) {
      if (semi_minimal && minimal)
        throw ValidationError("--minimal and --semi-minimal are mutually exclusive");
      return cmd_presentation(in, common, semi_minimal);
    }
    if (betti->parsed()) return cmd_betti(in, common, include_hilbert, oracle_check_flag);
    if (hilbert->parsed()) return cmd_hilbert(in, common);
    if (firep->parsed()) return cmd_firep(in, common, save_points);
    if (oracle_cmd->parsed()) return cmd_oracle_check(in, common);
    if (bench->parsed()) {
      if (bench_sizes.empty()) throw ValidationError("--sizes must not be empty");
      if (in.radius <= 0.0 && in.percentile <= 0.0) in.radius = 1.0;
      if (bench->count("--degree") == 0) in.degree = 1;
      return cmd_bench(bench_sizes, in, common);
    }
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const InternalError& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternal;
  }
}
