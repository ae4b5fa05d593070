// Copyright 2026 The vview Authors
// SPDX-License-Identifier: Apache-2.0

#include "vview/cli.hpp"

#include "vview/bench.hpp"
#include "vview/io/config.hpp"
#include "vview/io/image.hpp"
#include "vview/io/ply.hpp"
#include "vview/io/tensor_file.hpp"
#include "vview/io/trajectory.hpp"
#include "vview/keyframes.hpp"
#include "vview/pipeline.hpp"
#include "vview/renderer.hpp"
#include "vview/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace vview {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ordered_json cube_json(const WorkspaceCube& cube) {
  return {{"center", {cube.center.x(), cube.center.y(), cube.center.z()}}, {"side", cube.side}};
}

ordered_json timings_json(const StageTimings& t) {
  return {{"render_ms", t.render_ms}, {"scorer_ms", t.scorer_ms}, {"fusion_ms", t.fusion_ms}};
}

int cmd_render(const fs::path& scene_path, const fs::path& out_dir, std::ostream& out) {
  const io::SceneConfig scene = io::read_scene_config(scene_path);
  const PointCloud cloud = io::read_ply(scene.cloud_path);
  const PipelineConfig& p = scene.pipeline;
  const CameraRig rig = make_rig(scene.workspace, p.views, p.width, p.height, p.projection);
  const auto views = render(cloud, rig, p.splat, p.workers);

  fs::create_directories(out_dir);
  io::write_bytes(out_dir / "rig.txt", format_rig(rig));
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& view = views[i];
    const std::string name(to_string(rig.names()[i]));
    const char* ext = view.channels == 1 ? "pgm" : "ppm";
    io::write_bytes(out_dir / fmt::format("{}_features.{}", name, ext), io::encode_feature_image(view));
    io::write_bytes(out_dir / fmt::format("{}_depth.pgm", name), io::encode_depth_image(view));
    io::Tensor depth{{static_cast<std::uint32_t>(view.height), static_cast<std::uint32_t>(view.width)}, view.depth};
    io::write_tensor(out_dir / fmt::format("{}_depth.pstn", name), depth);
    std::size_t hits = 0;
    for (auto h : view.hit_mask) hits += h;
    fmt::print(out, "{}: {}x{}, {} hit pixels\n", name, view.width, view.height, hits);
  }
  return kExitOk;
}

int cmd_pipeline(const fs::path& scene_path, const std::vector<double>& target_xyz, const fs::path& report,
                 std::ostream& out) {
  const io::SceneConfig scene = io::read_scene_config(scene_path);
  const PointCloud cloud = io::read_ply(scene.cloud_path);
  const Eigen::Vector3d target(target_xyz[0], target_xyz[1], target_xyz[2]);
  const SyntheticScorer scorer(target, scene.sigma_px, kDefaultPatchSize);
  const TwoStagePrediction pred = run_two_stage(cloud, scene.workspace, scene.pipeline, scorer);

  const double coarse_error = (pred.coarse.location - target).norm();
  const double fine_error = (pred.fine.location - target).norm();
  const double coarse_cell = scene.workspace.side / scene.pipeline.coarse_resolution;
  const double fine_cell = pred.fine.rendered_cube.side / scene.pipeline.fine_resolution;
  auto stage_json = [](const StagePrediction& s) {
    return ordered_json{{"location", {s.location.x(), s.location.y(), s.location.z()}},
                        {"score", s.score},
                        {"low_confidence", s.low_confidence},
                        {"rendered_cube", cube_json(s.rendered_cube)},
                        {"timings", timings_json(s.timings)}};
  };
  ordered_json doc{{"v", 1},
                   {"target", target_xyz},
                   {"coarse_error_m", coarse_error},
                   {"fine_error_m", fine_error},
                   {"coarse_cell_m", coarse_cell},
                   {"fine_cell_m", fine_cell},
                   {"roi", cube_json(pred.coarse.roi)},
                   {"timings", {{"coarse", timings_json(pred.coarse.timings)},
                                {"fine", timings_json(pred.fine.timings)}}},
                   {"coarse", stage_json(pred.coarse)},
                   {"fine", stage_json(pred.fine)}};
  if (!report.parent_path().empty()) fs::create_directories(report.parent_path());
  io::write_bytes(report, doc.dump(2) + "\n");
  fmt::print(out, "coarse error {:.6f} m, fine error {:.6f} m\n", coarse_error, fine_error);
  return kExitOk;
}

int cmd_keyframes(const fs::path& log_path, std::ostream& out) {
  for (std::int64_t t : extract_keyframes(io::read_trajectory(log_path))) fmt::print(out, "{}\n", t);
  return kExitOk;
}

void print_timing(std::ostream& out, const char* label, const BenchTiming& t) {
  fmt::print(out, "{}: {:.4g} points/sec, {:.3f} ms/frame\n", label, t.points_per_sec, t.ms_per_frame);
}

int cmd_bench(const BenchOptions& options, std::ostream& out) {
  const BenchResult result = run_bench(options);
  print_timing(out, "fast", result.fast);
  if (result.oracle) {
    print_timing(out, "oracle", *result.oracle);
    fmt::print(out, "speedup: {:.2f}x\n", result.fast.points_per_sec / result.oracle->points_per_sec);
    fmt::print(out, "outputs match: {}\n", result.outputs_match ? "yes" : "no");
    if (!result.outputs_match) return kExitFailure;
  }
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, std::ostream& out) {
  const VerifyReport report = run_verification(seed);
  for (const auto& check : report.checks) {
    fmt::print(out, "{} {}: {}\n", check.passed ? "PASS" : "FAIL", check.name, check.detail);
  }
  return report.all_passed() ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Virtual-view point cloud renderer and coarse-to-fine localization tools", "vview"};
  app.require_subcommand(1);

  fs::path scene_path;
  fs::path out_dir;
  auto* render_cmd = app.add_subcommand("render", "Render every view of a scene to images and tensors");
  render_cmd->add_option("--scene", scene_path, "Scene config file")->required();
  render_cmd->add_option("--out", out_dir, "Output directory")->required();

  std::vector<double> target;
  fs::path report_path;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Run the two-stage localizer with a synthetic scorer");
  pipeline_cmd->add_option("--scene", scene_path, "Scene config file")->required();
  pipeline_cmd->add_option("--target", target, "Target as x,y,z")->required()->delimiter(',')->expected(3);
  pipeline_cmd->add_option("--report", report_path, "JSON report path")->required();

  fs::path log_path;
  auto* keyframes_cmd = app.add_subcommand("keyframes", "Print keyframe timesteps of a trajectory log");
  keyframes_cmd->add_option("--log", log_path, "Trajectory log (JSON Lines)")->required();

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the fast renderer, optionally against the oracle");
  bench_cmd->add_option("--points", bench.points, "Point count")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--size", bench.size, "Square image size")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--views", bench.views, "Views per frame")->capture_default_str()->check(CLI::Range(1, 5));
  bench_cmd->add_option("--repeat", bench.repeat, "Timed frames")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--radius", bench.radius, "Splat radius")->capture_default_str()->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--workers", bench.workers, "Worker threads, 0 for all cores")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Scene seed")->capture_default_str();
  bench_cmd->add_flag("--oracle", bench.oracle, "Also time the oracle renderer");

  std::uint64_t verify_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Check the fast paths against their oracles");
  verify_cmd->add_option("--seed", verify_seed, "Seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    fmt::print(err, "run with --help for usage\n");
    return kExitUsage;
  }

  try {
    if (*render_cmd) return cmd_render(scene_path, out_dir, out);
    if (*pipeline_cmd) return cmd_pipeline(scene_path, target, report_path, out);
    if (*keyframes_cmd) return cmd_keyframes(log_path, out);
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*verify_cmd) return cmd_verify(verify_seed, out);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace vview
