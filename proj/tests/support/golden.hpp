// Golden-file comparison. Set KADARU_UPDATE_GOLDENS=1 to rewrite the files.
#pragma once

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace golden {

inline std::filesystem::path path_of(const std::string& name) {
  return std::filesystem::path(KADARU_GOLDEN_DIR) / name;
}

inline bool updating() {
  const char* v = std::getenv("KADARU_UPDATE_GOLDENS");
  return v && *v && std::string(v) != "0";
}

inline ::testing::AssertionResult matches(const std::string& name, const std::string& actual) {
  const std::filesystem::path p = path_of(name);
  if (updating()) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << actual;
    return ::testing::AssertionSuccess();
  }
  std::ifstream in(p, std::ios::binary);
  if (!in) return ::testing::AssertionFailure() << "missing golden " << p;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (ss.str() == actual) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "output differs from " << p;
}

}  // namespace golden
