#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ddl::cli {

/// Process exit statuses.
inline constexpr int kSuccess = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageOrIo = 2;

/// Runs `ddl <args...>`; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ddl::cli
