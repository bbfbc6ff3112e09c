#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fittsnorm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Runs one command line (args[0] is the program name). Tables go to `out`
/// unless --output names a file; usage and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fittsnorm::cli
