#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace rotoblur {

enum class Session { kNrb, kRb };

std::string_view to_string(Session session);
/// Accepts "NRB" / "RB".
bool parse_session(std::string_view text, Session& out);

inline constexpr int kSsqItemCount = 16;

struct SsqResponse {
  std::string participant_id;
  Session session = Session::kNrb;
  std::vector<int> items;
};

struct SsqScores {
  int raw_n = 0;
  int raw_o = 0;
  int raw_d = 0;
  double n_score = 0.0;
  double o_score = 0.0;
  double d_score = 0.0;
  double ts = 0.0;
};

/// Subscale membership of the 16 SSQ symptoms (Kennedy, Lane, Berbaum &
/// Lilienthal 1993, "Simulator Sickness Questionnaire: An enhanced method for
/// quantifying simulator sickness", Table 1). Items in questionnaire order:
///
///    1 general discomfort      N O     9 difficulty concentrating N O
///    2 fatigue                   O    10 fullness of head            D
///    3 headache                  O    11 blurred vision            O D
///    4 eyestrain                 O    12 dizzy (eyes open)           D
///    5 difficulty focusing       O D  13 dizzy (eyes closed)         D
///    6 increased salivation    N      14 vertigo                     D
///    7 sweating                N      15 stomach awareness         N
///    8 nausea                  N   D  16 burping                   N
///
/// Each subscale has seven items. Weights from the same table.
struct SsqItem {
  std::string_view symptom;
  bool nausea;
  bool oculomotor;
  bool disorientation;
};

inline constexpr std::array<SsqItem, kSsqItemCount> kSsqItems{{
    {"general discomfort", true, true, false},
    {"fatigue", false, true, false},
    {"headache", false, true, false},
    {"eyestrain", false, true, false},
    {"difficulty focusing", false, true, true},
    {"increased salivation", true, false, false},
    {"sweating", true, false, false},
    {"nausea", true, false, true},
    {"difficulty concentrating", true, true, false},
    {"fullness of head", false, false, true},
    {"blurred vision", false, true, true},
    {"dizzy (eyes open)", false, false, true},
    {"dizzy (eyes closed)", false, false, true},
    {"vertigo", false, false, true},
    {"stomach awareness", true, false, false},
    {"burping", true, false, false},
}};

inline constexpr double kNauseaWeight = 9.54;
inline constexpr double kOculomotorWeight = 7.58;
inline constexpr double kDisorientationWeight = 13.92;
inline constexpr double kTotalWeight = 3.74;

/// Pre-screen cutoff: participants with Total Sickness strictly above it are
/// turned away before a session.
inline constexpr double kPrescreenCutoff = 7.48;

SsqScores score_ssq(const SsqResponse& response);

enum class PrescreenDecision { kAccept, kReject };

std::string_view to_string(PrescreenDecision decision);

PrescreenDecision prescreen(double ts, double cutoff = kPrescreenCutoff);

/// CSV `participant_id,session,item_1,...,item_16`.
std::vector<SsqResponse> parse_ssq_csv(std::string_view text);

}  // namespace rotoblur
