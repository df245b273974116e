#include "fixtures.hpp"

#include <fstream>
#include <sstream>

#include "document.hpp"

namespace cbd::testing {

std::string corpus_path(std::string_view name) { return std::string(CBD_CORPUS_DIR) + "/" + std::string(name); }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

System corpus_system(std::string_view name) { return cli::parse_system(read_text(corpus_path(name))); }

Rational q(const char* text) { return parse_rational(text); }

}  // namespace cbd::testing
