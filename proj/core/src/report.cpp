#include "rotoblur/report.hpp"

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotoblur/error.hpp"

namespace rotoblur {

namespace {

using nlohmann::ordered_json;

ordered_json summary_json(const Summary& s) {
  return {{"n", s.n},           {"mean", s.mean}, {"sd", s.sd},   {"median", s.median},
          {"q1", s.q1},         {"q3", s.q3},     {"min", s.min}, {"max", s.max}};
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json curve_json(std::span<const FmsRecord> fms, Session session) {
  ordered_json arr = ordered_json::array();
  try {
    for (const auto& p : fms_mean_curve(fms, session)) {
      arr.push_back({{"t_min", p.t_min}, {"mean_rating", p.mean_rating}, {"n", p.n}});
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyInput) throw;
  }
  return arr;
}

}  // namespace

std::string analysis_report(std::span<const PairedTs> pairs, std::span<const FmsRecord> fms) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyInput, "no pairs");

  std::vector<double> nrb;
  std::vector<double> rb;
  std::vector<double> delta;
  for (const auto& p : pairs) {
    nrb.push_back(p.ts_nrb);
    rb.push_back(p.ts_rb);
    delta.push_back(p.delta());
  }

  ordered_json doc;
  doc["n_pairs"] = pairs.size();
  doc["summary"] = {{"NRB", summary_json(summarize(nrb))},
                    {"RB", summary_json(summarize(rb))},
                    {"delta", summary_json(summarize(delta))}};

  const auto part = partition_delta(pairs);
  doc["partition"] = {
      {"declined", part.declined.size()},
      {"unchanged", part.unchanged.size()},
      {"increased", part.increased.size()},
      {"mean_delta_declined", optional_json(part.mean_delta_declined)},
      {"mean_delta_non_declined", optional_json(part.mean_delta_non_declined)},
      {"mean_nrb_declined", optional_json(part.mean_nrb_declined)},
      {"mean_nrb_non_declined", optional_json(part.mean_nrb_non_declined)},
  };

  try {
    const auto w = wilcoxon_signed_rank(pairs);
    doc["wilcoxon"] = {{"w_plus", w.w_plus},
                       {"n_eff", w.n_eff},
                       {"p_two_sided", w.p_two_sided},
                       {"method", std::string(to_string(w.method))}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAllZeroDifferences) throw;
    doc["wilcoxon"] = {{"error", std::string(to_string(e.code()))}};
  }

  doc["fms_curves"] = {{"NRB", curve_json(fms, Session::kNrb)},
                       {"RB", curve_json(fms, Session::kRb)}};
  return doc.dump(2) + "\n";
}

}  // namespace rotoblur
