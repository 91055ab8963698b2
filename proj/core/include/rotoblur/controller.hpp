#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

namespace rotoblur {

/// One delivered frame of input. Controller deltas drive the blur; head
/// deltas are carried for logging only and never influence sigma.
struct InputSample {
  std::int64_t t_us = 0;
  double ctrl_yaw_delta_deg = 0.0;
  double ctrl_pitch_delta_deg = 0.0;
  double head_yaw_delta_deg = 0.0;
  double head_pitch_delta_deg = 0.0;
  double head_roll_delta_deg = 0.0;

  friend bool operator==(const InputSample&, const InputSample&) = default;
};

struct ControllerConfig {
  double a_min_deg_s2 = 200.0;
  int activation_frames = 5;
  double gain_px_per_deg_s2 = 0.01;
  double sigma_max_px = 8.0;
  double ema_alpha = 0.5;
  double attack_tau_s = 0.050;
  double release_tau_s = 0.300;
  double v_stop_deg_s = 10.0;
  double sigma_eps_px = 0.05;
  double deg_per_count = 0.022;

  friend bool operator==(const ControllerConfig&, const ControllerConfig&) = default;
};

/// Throws Error(kInvalidConfig) naming the first offending field.
void validate(const ControllerConfig& config);

/// Smoothed yaw kinematics. `primed` is false until the first sample has
/// fixed the time origin.
struct KinematicState {
  double v_deg_s = 0.0;
  double a_deg_s2 = 0.0;
  std::int64_t last_t_us = 0;
  bool primed = false;

  friend bool operator==(const KinematicState&, const KinematicState&) = default;
};

enum class Phase { kIdle, kPending, kActive, kReleasing };

std::string_view to_string(Phase phase);
/// Inverse of to_string; returns false for unknown names.
bool parse_phase(std::string_view text, Phase& out);

struct ControllerState {
  Phase phase = Phase::kIdle;
  int pending_count = 0;
  double sigma_px = 0.0;
  KinematicState kin;

  friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

struct BlurFrameOutput {
  std::int64_t t_us = 0;
  double sigma_px = 0.0;
  Phase phase = Phase::kIdle;
  double v_deg_s = 0.0;
  double a_deg_s2 = 0.0;

  friend bool operator==(const BlurFrameOutput&, const BlurFrameOutput&) = default;
};

/// Backward finite differences of yaw: raw v = delta/dt, raw a = dv/dt on the
/// smoothed velocity, each passed through an EMA with `ema_alpha`.
///
/// A sample whose timestamp equals the origin of an unprimed state (t_us == 0
/// for a zeroed state) only fixes the time origin and yields zero kinematics.
KinematicState estimate_kinematics(const KinematicState& prev, double yaw_delta_deg,
                                   std::int64_t t_us, const ControllerConfig& config);

ControllerState reset(const ControllerConfig& config);

/// Pure gating transition. A frame qualifies iff |a| >= a_min_deg_s2;
/// `activation_frames` consecutive qualifying frames turn the blur on, and
/// sigma then follows min(k|a|, sigma_max) through an attack/release envelope
/// until yaw velocity falls under v_stop_deg_s. While releasing, a qualifying
/// frame with |v| >= v_stop_deg_s returns to Active.
std::pair<ControllerState, BlurFrameOutput> step(const ControllerState& state,
                                                 const InputSample& sample,
                                                 const ControllerConfig& config);

/// Stateful convenience wrapper around `step`.
class BlurController {
 public:
  explicit BlurController(ControllerConfig config);

  BlurFrameOutput update(const InputSample& sample);
  void reset();

  const ControllerState& state() const noexcept { return state_; }
  const ControllerConfig& config() const noexcept { return config_; }

 private:
  ControllerConfig config_;
  ControllerState state_;
};

}  // namespace rotoblur
