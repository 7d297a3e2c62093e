#pragma once

#include <filesystem>
#include <string>

#include "taskweave/project.hpp"

namespace tw_test {

std::filesystem::path demo_dir();
std::string slurp(const std::filesystem::path& path);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Uploads every demo artifact into `projectId`.
void ingest_demo(taskweave::ProjectStore& store, const std::string& projectId);

}  // namespace tw_test
