// tests/support/fixtures.hpp - Fixture corpus access for the test suites
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "xrl/parse.hpp"

namespace xrl_test
{

inline std::string fixture_dir()
{
  return XRL_FIXTURE_DIR;
}

inline std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string read_fixture(const std::string & name)
{
  return read_file(fixture_dir() + "/" + name);
}

/// All *.xrl.yaml corpus documents, sorted by file name.
inline std::vector<std::string> corpus_names()
{
  std::vector<std::string> names;
  for (const auto & entry : std::filesystem::directory_iterator(fixture_dir())) {
    std::string name = entry.path().filename().string();
    if (name.size() > 9 && name.substr(name.size() - 9) == ".xrl.yaml") names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  return names;
}

inline xrl::XrlDocument parse_fixture(const std::string & name)
{
  xrl::ParseResult result = xrl::parse_document(read_fixture(name));
  if (!result.ok())
    throw std::runtime_error("fixture " + name + " does not parse: " +
                             (result.diagnostics.empty() ? "?"
                                                         : result.diagnostics.front().message));
  return std::move(*result.document);
}

}  // namespace xrl_test
