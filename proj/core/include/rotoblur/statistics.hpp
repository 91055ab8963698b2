#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rotoblur/ssq.hpp"

namespace rotoblur {

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample (n - 1); 0 for a single value
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 0;
};

/// Quartiles interpolate linearly between order statistics at p * (n - 1).
Summary summarize(std::span<const double> values);

struct PairedTs {
  std::string participant_id;
  double ts_nrb = 0.0;
  double ts_rb = 0.0;

  double delta() const noexcept { return ts_rb - ts_nrb; }
};

/// Declined (delta < 0) versus non-declined (delta >= 0 = unchanged + increased).
struct DeltaPartition {
  std::vector<PairedTs> declined;
  std::vector<PairedTs> unchanged;
  std::vector<PairedTs> increased;
  std::optional<double> mean_delta_declined;
  std::optional<double> mean_delta_non_declined;
  std::optional<double> mean_nrb_declined;
  std::optional<double> mean_nrb_non_declined;
};

DeltaPartition partition_delta(std::span<const PairedTs> pairs);

enum class WilcoxonMethod { kExact, kNormalApprox };

std::string_view to_string(WilcoxonMethod method);

struct WilcoxonResult {
  double w_plus = 0.0;
  int n_eff = 0;
  double p_two_sided = 1.0;
  WilcoxonMethod method = WilcoxonMethod::kExact;
};

inline constexpr int kWilcoxonExactMaxN = 20;

/// Signed-rank test on delta = ts_rb - ts_nrb. Zero differences are dropped,
/// tied magnitudes get average ranks. For n_eff <= 20 the null distribution
/// of W+ is enumerated exactly over all 2^n_eff sign patterns of the observed
/// (tied) ranks; above that a tie-corrected normal approximation with
/// continuity correction is used. Two-sided p doubles the smaller tail, capped at 1.
WilcoxonResult wilcoxon_signed_rank(std::span<const PairedTs> pairs);

/// Same test on raw differences.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> deltas);

/// Forces the normal approximation regardless of n_eff.
WilcoxonResult wilcoxon_signed_rank_normal(std::span<const double> deltas);

struct FmsRecord {
  std::string participant_id;
  Session session = Session::kNrb;
  double t_min = 0.0;
  int rating = 0;
};

inline constexpr int kFmsMaxRating = 6;

struct FmsPoint {
  double t_min = 0.0;
  double mean_rating = 0.0;
  std::size_t n = 0;
};

/// Mean rating per distinct time point for one session, ascending in time.
std::vector<FmsPoint> fms_mean_curve(std::span<const FmsRecord> records, Session session);

/// CSV `participant_id,ts_nrb,ts_rb`.
std::vector<PairedTs> parse_pairs_csv(std::string_view text);
/// CSV `participant_id,session,t_min,rating`.
std::vector<FmsRecord> parse_fms_csv(std::string_view text);

}  // namespace rotoblur
