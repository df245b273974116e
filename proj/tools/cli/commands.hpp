#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbd::cli {

inline constexpr int kExitNoncontextual = 0;
inline constexpr int kExitContextual = 1;
inline constexpr int kExitError = 2;

/// Runs `cbd <args...>`; args excludes the program name. stdout carries the
/// JSON result only, stderr carries logs and errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbd::cli
