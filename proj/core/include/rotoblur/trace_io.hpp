#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rotoblur/controller.hpp"

namespace rotoblur {

inline constexpr std::string_view kTraceHeader =
    "t_us,ctrl_yaw_delta_deg,ctrl_pitch_delta_deg,head_yaw_delta_deg,head_pitch_delta_deg,"
    "head_roll_delta_deg";
inline constexpr std::string_view kSigmaHeader = "t_us,sigma_px,phase,v_deg_s,a_deg_s2";
inline constexpr std::string_view kEventsHeader = "t_us,event,value";

/// Metadata travels as leading `# key=value` lines ahead of the CSV header.
struct Trace {
  std::vector<InputSample> samples;
  std::map<std::string, std::string> meta;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct SigmaSeries {
  std::vector<BlurFrameOutput> frames;
  std::uint64_t config_fingerprint = 0;

  friend bool operator==(const SigmaSeries&, const SigmaSeries&) = default;
};

Trace parse_trace(std::string_view text);
std::string write_trace(const Trace& trace);

SigmaSeries parse_sigma_series(std::string_view text);
std::string write_sigma_series(const SigmaSeries& series);

/// Runs a fresh controller over every sample in order.
SigmaSeries replay(const Trace& trace, const ControllerConfig& config);

/// FNV-1a over the canonical text form of every config field.
std::uint64_t config_fingerprint(const ControllerConfig& config);

enum class SessionEventKind { kRbToggled, kFmsPrompt, kFmsResponse, kFmsTimeout };

std::string_view to_string(SessionEventKind kind);

struct SessionEvent {
  std::int64_t t_us = 0;
  SessionEventKind kind = SessionEventKind::kRbToggled;
  std::string value;

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

/// Companion events file of a recorded session. Timestamps are non-decreasing.
std::vector<SessionEvent> parse_events(std::string_view text);
std::string write_events(const std::vector<SessionEvent>& events);

struct SigmaComparison {
  std::size_t frames = 0;
  double max_abs_diff = 0.0;
  /// Index of the first frame exceeding the tolerance, or `frames` if none.
  std::size_t first_mismatch = 0;
  bool timestamps_match = true;
  bool within_tolerance = true;
};

/// Frame-by-frame sigma agreement between a replayed series and a sigma log
/// recorded elsewhere (e.g. by the browser demo).
SigmaComparison compare_sigma(const SigmaSeries& replayed, const SigmaSeries& recorded,
                              double tolerance_px);

}  // namespace rotoblur
