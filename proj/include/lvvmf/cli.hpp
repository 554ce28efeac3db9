#pragma once

// Command line dispatcher. Reports share the envelope
// {tool, version, config, results, pass}; numbers are written as strings.
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace lvvmf::cli {

inline constexpr const char* kTool = "lvvmf";
inline constexpr const char* kVersion = "1.0.0";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shortest round-trippable decimal form used in reports.
std::string number(double x);

}  // namespace lvvmf::cli
