#pragma once

#include <string>
#include <string_view>

#include "cbd/model.hpp"

namespace cbd::testing {

std::string corpus_path(std::string_view name);
std::string read_text(const std::string& path);
/// Parses and validates a corpus document.
System corpus_system(std::string_view name);

/// "1/2" -> Rational, for terse test tables.
Rational q(const char* text);

}  // namespace cbd::testing
