#include "rotoblur/controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotoblur/error.hpp"

namespace rotoblur {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw Error(ErrorCode::kInvalidConfig, std::string(name) + " must be positive and finite");
  }
}

double envelope_gain(double dt_s, double tau_s) { return 1.0 - std::exp(-dt_s / tau_s); }

}  // namespace

void validate(const ControllerConfig& c) {
  require_positive(c.a_min_deg_s2, "a_min_deg_s2");
  require_positive(c.gain_px_per_deg_s2, "gain_px_per_deg_s2");
  require_positive(c.sigma_max_px, "sigma_max_px");
  require_positive(c.ema_alpha, "ema_alpha");
  require_positive(c.attack_tau_s, "attack_tau_s");
  require_positive(c.release_tau_s, "release_tau_s");
  require_positive(c.v_stop_deg_s, "v_stop_deg_s");
  require_positive(c.sigma_eps_px, "sigma_eps_px");
  require_positive(c.deg_per_count, "deg_per_count");
  if (c.ema_alpha > 1.0) throw Error(ErrorCode::kInvalidConfig, "ema_alpha must be in (0, 1]");
  if (c.activation_frames < 1) {
    throw Error(ErrorCode::kInvalidConfig, "activation_frames must be >= 1");
  }
  if (c.sigma_eps_px >= c.sigma_max_px) {
    throw Error(ErrorCode::kInvalidConfig, "sigma_eps_px must be below sigma_max_px");
  }
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kIdle: return "Idle";
    case Phase::kPending: return "Pending";
    case Phase::kActive: return "Active";
    case Phase::kReleasing: return "Releasing";
  }
  return "Idle";
}

bool parse_phase(std::string_view text, Phase& out) {
  for (Phase p : {Phase::kIdle, Phase::kPending, Phase::kActive, Phase::kReleasing}) {
    if (text == to_string(p)) {
      out = p;
      return true;
    }
  }
  return false;
}

KinematicState estimate_kinematics(const KinematicState& prev, double yaw_delta_deg,
                                   std::int64_t t_us, const ControllerConfig& config) {
  if (!std::isfinite(yaw_delta_deg)) {
    throw Error(ErrorCode::kNonFiniteInput, "yaw delta is not finite");
  }
  if (t_us < prev.last_t_us || (prev.primed && t_us == prev.last_t_us)) {
    throw Error(ErrorCode::kNonMonotonicTime,
                "t_us " + std::to_string(t_us) + " does not follow " +
                    std::to_string(prev.last_t_us));
  }
  if (!prev.primed && t_us == prev.last_t_us) {
    return KinematicState{0.0, 0.0, t_us, true};
  }

  const double dt_s = static_cast<double>(t_us - prev.last_t_us) * 1e-6;
  const double alpha = config.ema_alpha;

  const double v_raw = yaw_delta_deg / dt_s;
  const double v = alpha * v_raw + (1.0 - alpha) * prev.v_deg_s;
  const double a_raw = (v - prev.v_deg_s) / dt_s;
  const double a = alpha * a_raw + (1.0 - alpha) * prev.a_deg_s2;

  if (!std::isfinite(v) || !std::isfinite(a)) {
    throw Error(ErrorCode::kNonFiniteInput, "kinematics overflowed");
  }
  return KinematicState{v, a, t_us, true};
}

ControllerState reset(const ControllerConfig& config) {
  validate(config);
  return ControllerState{};
}

std::pair<ControllerState, BlurFrameOutput> step(const ControllerState& state,
                                                 const InputSample& sample,
                                                 const ControllerConfig& config) {
  // Head deltas are deliberately not read: only controller yaw moves sigma.
  const std::int64_t prev_t = state.kin.last_t_us;

  ControllerState next = state;
  next.kin = estimate_kinematics(state.kin, sample.ctrl_yaw_delta_deg, sample.t_us, config);

  // Zero on the origin frame of an unprimed state.
  const double dt_s = static_cast<double>(sample.t_us - prev_t) * 1e-6;
  const double abs_a = std::abs(next.kin.a_deg_s2);
  const bool qualifies = abs_a >= config.a_min_deg_s2;

  switch (state.phase) {
    case Phase::kIdle:
    case Phase::kPending: {
      const int count = qualifies ? state.pending_count + 1 : 0;
      if (count == 0) {
        next.phase = Phase::kIdle;
        next.pending_count = 0;
      } else if (count >= config.activation_frames) {
        next.phase = Phase::kActive;
        next.pending_count = 0;
      } else {
        next.phase = Phase::kPending;
        next.pending_count = count;
      }
      next.sigma_px = 0.0;
      break;
    }
    case Phase::kActive:
      if (std::abs(next.kin.v_deg_s) < config.v_stop_deg_s) next.phase = Phase::kReleasing;
      break;
    case Phase::kReleasing:
      // Resuming a turn mid-fade re-arms without a fresh activation run.
      if (qualifies && std::abs(next.kin.v_deg_s) >= config.v_stop_deg_s) next.phase = Phase::kActive;
      break;
  }

  if (next.phase == Phase::kActive || next.phase == Phase::kReleasing) {
    const double target = next.phase == Phase::kActive
                              ? std::min(config.gain_px_per_deg_s2 * abs_a, config.sigma_max_px)
                              : 0.0;
    const double tau = target > next.sigma_px ? config.attack_tau_s : config.release_tau_s;
    if (dt_s > 0.0) next.sigma_px += (target - next.sigma_px) * envelope_gain(dt_s, tau);
    next.sigma_px = std::clamp(next.sigma_px, 0.0, config.sigma_max_px);

    if (next.phase == Phase::kReleasing && next.sigma_px < config.sigma_eps_px) {
      next.phase = Phase::kIdle;
      next.sigma_px = 0.0;
    }
  }

  BlurFrameOutput out{sample.t_us, next.sigma_px, next.phase, next.kin.v_deg_s, next.kin.a_deg_s2};
  return {next, out};
}

BlurController::BlurController(ControllerConfig config)
    : config_(config), state_(rotoblur::reset(config_)) {}

BlurFrameOutput BlurController::update(const InputSample& sample) {
  auto [next, out] = step(state_, sample, config_);
  state_ = next;
  return out;
}

void BlurController::reset() { state_ = rotoblur::reset(config_); }

}  // namespace rotoblur
