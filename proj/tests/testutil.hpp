// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_TESTS_TESTUTIL_HPP_
#define LOWLAT_TESTS_TESTUTIL_HPP_

#include <filesystem>
#include <random>
#include <string>

namespace testutil {

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("lowlat_" + tag + "_" + std::to_string(rd()) + "_" +
             std::to_string(std::uintmax_t(::getpid())));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil

#endif  // LOWLAT_TESTS_TESTUTIL_HPP_
