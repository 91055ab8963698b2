#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotoblur::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kConfigEnvVar = "ROTOBLUR_CONFIG";

/// Runs the `rotoblur` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotoblur::cli
