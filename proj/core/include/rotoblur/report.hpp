#pragma once

#include <span>
#include <string>

#include "rotoblur/statistics.hpp"

namespace rotoblur {

/// JSON analysis document: per-condition summaries of Total Sickness and of
/// the RB - NRB difference, the declined/unchanged/increased partition with
/// group means, the signed-rank test (or the reason it is undefined) and the
/// mean rating curve per condition when ratings are given.
std::string analysis_report(std::span<const PairedTs> pairs, std::span<const FmsRecord> fms);

}  // namespace rotoblur
