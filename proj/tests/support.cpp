#include "support.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>

namespace tw_test {

namespace fs = std::filesystem;

fs::path demo_dir() { return fs::path(TASKWEAVE_DEMO_DIR); }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("taskweave-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void ingest_demo(taskweave::ProjectStore& store, const std::string& projectId) {
  using taskweave::ArtifactKind;
  fs::path d = demo_dir();
  store.create_or_load_project(projectId);
  store.submit_artifact(projectId, ArtifactKind::Lexicon, slurp(d / "lexicon.txt"));
  store.submit_artifact(projectId, ArtifactKind::Manifest, slurp(d / "manifest.json"));
  for (const auto& entry : fs::directory_iterator(d / "wsdl"))
    store.submit_artifact(projectId, ArtifactKind::Wsdl, slurp(entry.path()), entry.path().filename().string());
  store.submit_artifact(projectId, ArtifactKind::Logs, slurp(d / "logs.jsonl"));
  store.submit_artifact(projectId, ArtifactKind::Bpmn, slurp(d / "process.bpmn"));
  store.submit_artifact(projectId, ArtifactKind::Specs, slurp(d / "specs.json"));
}

}  // namespace tw_test
