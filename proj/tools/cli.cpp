#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rotoblur/config_io.hpp"
#include "rotoblur/error.hpp"
#include "rotoblur/gaussian_blur.hpp"
#include "rotoblur/image_io.hpp"
#include "rotoblur/report.hpp"
#include "rotoblur/ssq.hpp"
#include "rotoblur/statistics.hpp"
#include "rotoblur/text_format.hpp"
#include "rotoblur/trace_io.hpp"

namespace rotoblur::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

// Domain errors thrown while handling `path` get the path prefixed.
template <typename Fn>
auto with_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail(), e.line());
  }
}

struct Options {
  std::string trace;
  std::string config;
  std::string out;
  std::string in;
  double sigma = 0.0;
  double truncation = kDefaultTruncation;
  bool verify = false;
  double cutoff = kPrescreenCutoff;
  std::string pairs;
  std::string fms;
};

ControllerConfig resolve_config(const std::string& flag_path) {
  if (!flag_path.empty()) return load_config(flag_path);
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return load_config(env);
  }
  ControllerConfig defaults;
  validate(defaults);
  return defaults;
}

int replay_cmd(const Options& o) {
  const ControllerConfig config = resolve_config(o.config);
  const Trace trace = with_path(o.trace, [&] { return parse_trace(read_file(o.trace)); });
  write_file(o.out, write_sigma_series(replay(trace, config)));
  return kExitOk;
}

int blur_cmd(const Options& o) {
  const ImageBuffer img = with_path(o.in, [&] { return read_pnm(o.in); });
  write_pnm(o.out, blur(img, make_kernel(o.sigma, o.truncation)));
  return kExitOk;
}

int kernel_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const Kernel1D k = make_kernel(o.sigma, o.truncation);
  for (double w : k.weights) out << format_double(w) << '\n';
  if (!o.verify) return kExitOk;

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ImageBuffer img(32, 32, 1);
  for (double& v : img.data()) v = unit(rng);
  const ImageBuffer a = blur(img, k);
  const ImageBuffer b = blur_reference_2d(img, o.sigma, o.truncation);
  double ss = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    ss += d * d;
  }
  const double rms = std::sqrt(ss / static_cast<double>(a.data().size()));
  err << "verify: separable vs 2D reference RMS = " << format_double(rms) << '\n';
  return rms <= 1e-6 ? kExitOk : kExitDomainError;
}

int ssq_score_cmd(const Options& o) {
  const auto responses = with_path(o.in, [&] { return parse_ssq_csv(read_file(o.in)); });
  std::string csv = "participant_id,session,raw_n,raw_o,raw_d,n_score,o_score,d_score,ts\n";
  for (const auto& r : responses) {
    const SsqScores s = score_ssq(r);
    csv += r.participant_id + ',';
    csv += to_string(r.session);
    csv += ',' + std::to_string(s.raw_n) + ',' + std::to_string(s.raw_o) + ',' +
           std::to_string(s.raw_d) + ',' + format_double(s.n_score) + ',' +
           format_double(s.o_score) + ',' + format_double(s.d_score) + ',' +
           format_double(s.ts) + '\n';
  }
  write_file(o.out, csv);
  return kExitOk;
}

int ssq_prescreen_cmd(const Options& o, std::ostream& out) {
  const auto responses = with_path(o.in, [&] { return parse_ssq_csv(read_file(o.in)); });
  std::string csv = "participant_id,session,ts,decision\n";
  for (const auto& r : responses) {
    const double ts = score_ssq(r).ts;
    csv += r.participant_id + ',';
    csv += to_string(r.session);
    csv += ',' + format_double(ts) + ',';
    csv += to_string(prescreen(ts, o.cutoff));
    csv += '\n';
  }
  out << csv;
  return kExitOk;
}

int analyze_cmd(const Options& o) {
  const auto pairs = with_path(o.pairs, [&] { return parse_pairs_csv(read_file(o.pairs)); });
  std::vector<FmsRecord> fms;
  if (!o.fms.empty()) fms = with_path(o.fms, [&] { return parse_fms_csv(read_file(o.fms)); });
  write_file(o.out, analysis_report(pairs, fms));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation-blur comfort toolkit: controller replay, Gaussian blur, SSQ analytics",
               "rotoblur"};
  app.require_subcommand(1);
  Options o;

  auto* replay_sc = app.add_subcommand("replay", "Replay an input trace into a sigma CSV");
  replay_sc->add_option("--trace", o.trace, "Input trace CSV")->required()->check(CLI::ExistingFile);
  replay_sc->add_option("--config", o.config,
                        std::string("Controller config JSON (fallback: $") + kConfigEnvVar + ")")
      ->check(CLI::ExistingFile);
  replay_sc->add_option("--out", o.out, "Output sigma CSV")->required();

  auto* blur_sc = app.add_subcommand("blur", "Apply a uniform Gaussian blur to a PGM/PPM image");
  blur_sc->add_option("--in", o.in, "Input P5/P6 image")->required()->check(CLI::ExistingFile);
  blur_sc->add_option("--sigma", o.sigma, "Standard deviation in pixels")
      ->required()
      ->check(CLI::NonNegativeNumber);
  blur_sc->add_option("--truncation", o.truncation, "Kernel radius in sigmas")
      ->check(CLI::PositiveNumber);
  blur_sc->add_option("--out", o.out, "Output image")->required();

  auto* kernel_sc = app.add_subcommand("kernel", "Print normalized 1D Gaussian weights");
  kernel_sc->add_option("--sigma", o.sigma, "Standard deviation in pixels")
      ->required()
      ->check(CLI::NonNegativeNumber);
  kernel_sc->add_option("--truncation", o.truncation, "Kernel radius in sigmas")
      ->check(CLI::PositiveNumber);
  kernel_sc->add_flag("--verify", o.verify,
                      "Check separable blur against the direct 2D convolution");

  auto* ssq_sc = app.add_subcommand("ssq", "Simulator Sickness Questionnaire scoring");
  ssq_sc->require_subcommand(1);
  auto* score_sc = ssq_sc->add_subcommand("score", "Score SSQ responses");
  score_sc->add_option("--in", o.in, "SSQ responses CSV")->required()->check(CLI::ExistingFile);
  score_sc->add_option("--out", o.out, "Scores CSV")->required();
  auto* prescreen_sc = ssq_sc->add_subcommand("prescreen", "Accept/reject by Total Sickness");
  prescreen_sc->add_option("--in", o.in, "SSQ responses CSV")->required()->check(CLI::ExistingFile);
  prescreen_sc->add_option("--cutoff", o.cutoff, "Reject when TS is strictly above this")
      ->check(CLI::NonNegativeNumber);

  auto* analyze_sc = app.add_subcommand("analyze", "Summaries, partition and signed-rank test");
  analyze_sc->add_option("--pairs", o.pairs, "Paired TS CSV")->required()->check(CLI::ExistingFile);
  analyze_sc->add_option("--fms", o.fms, "Sickness rating CSV")->check(CLI::ExistingFile);
  analyze_sc->add_option("--out", o.out, "Report path (JSON)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "rotoblur: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (replay_sc->parsed()) return replay_cmd(o);
    if (blur_sc->parsed()) return blur_cmd(o);
    if (kernel_sc->parsed()) return kernel_cmd(o, out, err);
    if (score_sc->parsed()) return ssq_score_cmd(o);
    if (prescreen_sc->parsed()) return ssq_prescreen_cmd(o, out);
    if (analyze_sc->parsed()) return analyze_cmd(o);
  } catch (const Error& e) {
    err << "rotoblur: " << e.what() << '\n';
    return kExitDomainError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace rotoblur::cli
