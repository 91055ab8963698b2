#include "rotoblur/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "rotoblur/error.hpp"
#include "rotoblur/text_format.hpp"

namespace rotoblur {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::optional<double> mean_of(const std::vector<PairedTs>& group, double (*field)(const PairedTs&)) {
  if (group.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& p : group) sum += field(p);
  return sum / static_cast<double>(group.size());
}

double delta_of(const PairedTs& p) { return p.delta(); }
double nrb_of(const PairedTs& p) { return p.ts_nrb; }

// Exact distribution of W+ in doubled-rank units: counts[s] = number of sign
// patterns whose positive doubled ranks sum to s.
std::vector<std::uint64_t> signed_rank_null_counts(const std::vector<int>& doubled_ranks) {
  const int total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(total) + 1, 0);
  counts[0] = 1;
  int reach = 0;
  for (int r : doubled_ranks) {
    for (int s = reach; s >= 0; --s) counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
    reach += r;
  }
  return counts;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "summarize needs at least one value");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  Summary s;
  s.n = sorted.size();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  s.median = quantile_sorted(sorted, 0.5);
  s.q1 = quantile_sorted(sorted, 0.25);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.min = sorted.front();
  s.max = sorted.back();
  return s;
}

DeltaPartition partition_delta(std::span<const PairedTs> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyInput, "no pairs");
  DeltaPartition out;
  for (const auto& p : pairs) {
    const double d = p.delta();
    if (d < 0.0) {
      out.declined.push_back(p);
    } else if (d == 0.0) {
      out.unchanged.push_back(p);
    } else {
      out.increased.push_back(p);
    }
  }
  std::vector<PairedTs> non_declined = out.unchanged;
  non_declined.insert(non_declined.end(), out.increased.begin(), out.increased.end());

  out.mean_delta_declined = mean_of(out.declined, delta_of);
  out.mean_delta_non_declined = mean_of(non_declined, delta_of);
  out.mean_nrb_declined = mean_of(out.declined, nrb_of);
  out.mean_nrb_non_declined = mean_of(non_declined, nrb_of);
  return out;
}

std::string_view to_string(WilcoxonMethod method) {
  return method == WilcoxonMethod::kExact ? "exact" : "normal-approx";
}

WilcoxonResult wilcoxon_signed_rank(std::span<const PairedTs> pairs) {
  std::vector<double> deltas;
  deltas.reserve(pairs.size());
  for (const auto& p : pairs) deltas.push_back(p.delta());
  return wilcoxon_signed_rank(std::span<const double>(deltas));
}

namespace {

struct SignedRanks {
  std::vector<int> doubled;  // average ranks times two, integral under ties
  int w_plus_doubled = 0;
  double tie_term = 0.0;     // sum of t^3 - t over tie blocks
};

SignedRanks rank_differences(std::span<const double> deltas) {
  if (deltas.empty()) throw Error(ErrorCode::kEmptyInput, "no pairs");
  std::vector<double> nonzero;
  for (double d : deltas) {
    if (!std::isfinite(d)) throw Error(ErrorCode::kNonFiniteInput, "difference is not finite");
    if (d != 0.0) nonzero.push_back(d);
  }
  if (nonzero.empty()) {
    throw Error(ErrorCode::kAllZeroDifferences, "every difference is zero; test undefined");
  }

  const std::size_t n = nonzero.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(nonzero[a]) < std::abs(nonzero[b]);
  });

  SignedRanks out;
  out.doubled.resize(n);
  // Tie block occupying sorted positions [i, j) shares rank (i + j + 1) / 2.
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    const double mag = std::abs(nonzero[order[i]]);
    while (j < n && std::abs(nonzero[order[j]]) == mag) ++j;
    for (std::size_t k = i; k < j; ++k) out.doubled[order[k]] = static_cast<int>(i + j + 1);
    const double t = static_cast<double>(j - i);
    out.tie_term += t * t * t - t;
    i = j;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (nonzero[k] > 0.0) out.w_plus_doubled += out.doubled[k];
  }
  return out;
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> deltas) {
  const SignedRanks ranks = rank_differences(deltas);
  const int n = static_cast<int>(ranks.doubled.size());
  if (n > kWilcoxonExactMaxN) return wilcoxon_signed_rank_normal(deltas);

  const auto counts = signed_rank_null_counts(ranks.doubled);
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (static_cast<int>(s) <= ranks.w_plus_doubled) lower += counts[s];
    if (static_cast<int>(s) >= ranks.w_plus_doubled) upper += counts[s];
  }
  WilcoxonResult result;
  result.n_eff = n;
  result.w_plus = ranks.w_plus_doubled / 2.0;
  result.p_two_sided =
      std::min(1.0, 2.0 * static_cast<double>(std::min(lower, upper)) / std::ldexp(1.0, n));
  result.method = WilcoxonMethod::kExact;
  return result;
}

WilcoxonResult wilcoxon_signed_rank_normal(std::span<const double> deltas) {
  const SignedRanks ranks = rank_differences(deltas);
  const double n = static_cast<double>(ranks.doubled.size());

  WilcoxonResult result;
  result.n_eff = static_cast<int>(ranks.doubled.size());
  result.w_plus = ranks.w_plus_doubled / 2.0;
  const double mean = n * (n + 1.0) / 4.0;
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ranks.tie_term / 48.0;
  const double dev = std::max(0.0, std::abs(result.w_plus - mean) - 0.5);
  const double z = var > 0.0 ? dev / std::sqrt(var) : 0.0;
  result.p_two_sided = std::min(1.0, 2.0 * normal_upper_tail(z));
  result.method = WilcoxonMethod::kNormalApprox;
  return result;
}

std::vector<FmsPoint> fms_mean_curve(std::span<const FmsRecord> records, Session session) {
  std::map<double, std::pair<double, std::size_t>> by_time;
  for (const auto& r : records) {
    if (r.rating < 0 || r.rating > kFmsMaxRating) {
      throw Error(ErrorCode::kRatingOutOfRange,
                  "participant " + r.participant_id + " rating " + std::to_string(r.rating) +
                      " not in 0..6");
    }
    if (r.session != session) continue;
    auto& [sum, count] = by_time[r.t_min];
    sum += r.rating;
    ++count;
  }
  if (by_time.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no ratings for session " + std::string(to_string(session)));
  }
  std::vector<FmsPoint> curve;
  for (const auto& [t, acc] : by_time) {
    curve.push_back({t, acc.first / static_cast<double>(acc.second), acc.second});
  }
  return curve;
}

std::vector<PairedTs> parse_pairs_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "participant_id,ts_nrb,ts_rb") {
    throw Error(ErrorCode::kMalformedHeader, "expected `participant_id,ts_nrb,ts_rb`", 1);
  }
  std::vector<PairedTs> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 3) throw Error(ErrorCode::kMalformedRow, "expected 3 fields", i + 1);
    const auto nrb = parse_double(f[1]);
    const auto rb = parse_double(f[2]);
    if (!nrb || !rb || !std::isfinite(*nrb) || !std::isfinite(*rb)) {
      throw Error(ErrorCode::kNonNumericField, "ts_nrb/ts_rb must be finite numbers", i + 1);
    }
    if (*nrb < 0.0 || *rb < 0.0) throw Error(ErrorCode::kNegativeTs, "ts must be >= 0", i + 1);
    out.push_back({std::string(f[0]), *nrb, *rb});
  }
  return out;
}

std::vector<FmsRecord> parse_fms_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "participant_id,session,t_min,rating") {
    throw Error(ErrorCode::kMalformedHeader, "expected `participant_id,session,t_min,rating`", 1);
  }
  std::vector<FmsRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 4) throw Error(ErrorCode::kMalformedRow, "expected 4 fields", i + 1);
    FmsRecord r;
    r.participant_id = std::string(f[0]);
    if (!parse_session(f[1], r.session)) {
      throw Error(ErrorCode::kMalformedRow, "session must be NRB or RB", i + 1);
    }
    const auto t = parse_double(f[2]);
    const auto rating = parse_int(f[3]);
    if (!t || !std::isfinite(*t) || *t <= 0.0) {
      throw Error(ErrorCode::kNonNumericField, "t_min must be a positive number", i + 1);
    }
    if (!rating) throw Error(ErrorCode::kNonNumericField, "rating must be an integer", i + 1);
    if (*rating < 0 || *rating > kFmsMaxRating) {
      throw Error(ErrorCode::kRatingOutOfRange, "rating not in 0..6", i + 1);
    }
    r.t_min = *t;
    r.rating = static_cast<int>(*rating);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rotoblur
