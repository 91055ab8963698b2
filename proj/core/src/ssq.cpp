#include "rotoblur/ssq.hpp"

#include <cmath>

#include "rotoblur/error.hpp"
#include "rotoblur/text_format.hpp"

namespace rotoblur {

std::string_view to_string(Session session) { return session == Session::kNrb ? "NRB" : "RB"; }

bool parse_session(std::string_view text, Session& out) {
  if (text == "NRB") {
    out = Session::kNrb;
    return true;
  }
  if (text == "RB") {
    out = Session::kRb;
    return true;
  }
  return false;
}

SsqScores score_ssq(const SsqResponse& response) {
  if (response.items.size() != kSsqItemCount) {
    throw Error(ErrorCode::kWrongItemCount,
                "expected 16 items, got " + std::to_string(response.items.size()));
  }
  SsqScores s;
  for (std::size_t i = 0; i < kSsqItemCount; ++i) {
    const int v = response.items[i];
    if (v < 0 || v > 3) {
      throw Error(ErrorCode::kItemOutOfRange,
                  "item_" + std::to_string(i + 1) + " = " + std::to_string(v) + " not in 0..3");
    }
    if (kSsqItems[i].nausea) s.raw_n += v;
    if (kSsqItems[i].oculomotor) s.raw_o += v;
    if (kSsqItems[i].disorientation) s.raw_d += v;
  }
  s.n_score = kNauseaWeight * s.raw_n;
  s.o_score = kOculomotorWeight * s.raw_o;
  s.d_score = kDisorientationWeight * s.raw_d;
  s.ts = kTotalWeight * (s.raw_n + s.raw_o + s.raw_d);
  return s;
}

std::string_view to_string(PrescreenDecision decision) {
  return decision == PrescreenDecision::kAccept ? "accept" : "reject";
}

PrescreenDecision prescreen(double ts, double cutoff) {
  if (std::isnan(ts) || ts < 0.0) throw Error(ErrorCode::kNegativeTs, "ts must be >= 0");
  return ts > cutoff ? PrescreenDecision::kReject : PrescreenDecision::kAccept;
}

std::vector<SsqResponse> parse_ssq_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::kMalformedHeader, "missing header", 1);
  std::string header = "participant_id,session";
  for (int i = 1; i <= kSsqItemCount; ++i) header += ",item_" + std::to_string(i);
  if (lines[0] != header) throw Error(ErrorCode::kMalformedHeader, "expected `" + header + "`", 1);

  std::vector<SsqResponse> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    const auto f = split_fields(lines[i]);
    if (f.size() != 2 + kSsqItemCount) {
      throw Error(ErrorCode::kWrongItemCount,
                  "expected 16 items, got " + std::to_string(f.size() < 2 ? 0 : f.size() - 2),
                  line);
    }
    SsqResponse r;
    r.participant_id = std::string(f[0]);
    if (!parse_session(f[1], r.session)) {
      throw Error(ErrorCode::kMalformedRow, "session must be NRB or RB", line);
    }
    for (std::size_t k = 0; k < kSsqItemCount; ++k) {
      const auto v = parse_int(f[2 + k]);
      if (!v) {
        throw Error(ErrorCode::kNonNumericField, "item_" + std::to_string(k + 1) + " is not an integer",
                    line);
      }
      if (*v < 0 || *v > 3) {
        throw Error(ErrorCode::kItemOutOfRange,
                    "item_" + std::to_string(k + 1) + " = " + std::to_string(*v) + " not in 0..3",
                    line);
      }
      r.items.push_back(static_cast<int>(*v));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rotoblur
