#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ddl::testing {

inline std::string fixture_path(const std::string& name) { return std::string(DDL_FIXTURES_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace ddl::testing
