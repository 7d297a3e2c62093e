#pragma once

// File-backed projects. Each project lives in <root>/<projectId>/ with the
// uploaded originals under artifacts/ and JSON snapshots of derived state
// (registry, annotated process, last bindings) under derived/. Derived
// snapshots are dropped whenever an input they depend on changes and are
// rebuilt on the next read.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "taskweave/consistency.hpp"
#include "taskweave/error.hpp"
#include "taskweave/matcher.hpp"
#include "taskweave/process.hpp"
#include "taskweave/registry.hpp"
#include "taskweave/text.hpp"

namespace taskweave {

enum class ArtifactKind { Manifest, Wsdl, Logs, Lexicon, Bpmn, Specs };
enum class ExportKind { ExecutableBpmn, WsOnto, BpOnto, Validation };

std::string_view to_string(ArtifactKind kind);
std::optional<ArtifactKind> artifact_kind_from_name(std::string_view name);
std::string_view to_string(ExportKind kind);
std::optional<ExportKind> export_kind_from_name(std::string_view name);

bool is_valid_project_id(std::string_view id);

struct Project {
  std::string projectId;
  std::shared_ptr<const ServiceRegistry> registry;
  std::shared_ptr<const AnnotatedProcess> process;
  std::optional<BindingSet> lastBindings;
  std::filesystem::path storedAt;

  // Deep comparison of the optional parts.
  bool operator==(const Project& other) const;
};

struct AcceptReport {
  ArtifactKind kind = ArtifactKind::Manifest;
  bool accepted = true;
  std::vector<std::string> warnings;
  std::vector<SpecError> specErrors;  // errors block acceptance; infos do not
};

struct MatchRequest {
  MatchOptions options;
  bool includeConsistency = true;
  UpstreamScope scope = UpstreamScope::AllAncestors;
};

// An error raised while validating an upload, prefixed with the project and
// artifact kind. Keeps the inner error's kind().
class ArtifactError : public Error {
 public:
  ArtifactError(const Error& inner, std::string projectId, ArtifactKind artifact);

  const std::string& projectId() const noexcept { return projectId_; }
  ArtifactKind artifact() const noexcept { return artifact_; }

 private:
  std::string projectId_;
  ArtifactKind artifact_;
};

class ProjectStore {
 public:
  explicit ProjectStore(std::filesystem::path root, QoSSchema schema = QoSSchema::defaults());

  const std::filesystem::path& root() const { return root_; }

  // Throws ValidationError for an invalid id.
  Project create_or_load_project(const std::string& projectId);

  // `name` is the stored file name for WSDL uploads and ignored otherwise.
  AcceptReport submit_artifact(const std::string& projectId, ArtifactKind kind, const std::string& payload,
                               const std::string& name = {});

  // Throws ConflictError("process") before a BPMN upload, NotFoundError for
  // an id that is not a service task.
  std::vector<SpecError> update_task_spec(const std::string& projectId, const std::string& taskId, TaskSpec spec);

  // Deterministic response; stores the bindings as the project's last.
  nlohmann::json run_match(const std::string& projectId, const MatchRequest& request = {});

  std::vector<InconsistencyReport> check(const std::string& projectId,
                                         UpstreamScope scope = UpstreamScope::AllAncestors);

  std::string export_artifact(const std::string& projectId, ExportKind what);

  nlohmann::json bindings_view(const std::string& projectId);
  nlohmann::json process_view(const std::string& projectId);

 private:
  // Writer-preferring reader/writer lock: a waiting writer holds the
  // turnstile, so readers arriving after it queue behind it.
  class FairSharedMutex {
   public:
    void lock() {
      std::lock_guard gate(turnstile_);
      rw_.lock();
    }
    void unlock() { rw_.unlock(); }
    void lock_shared() {
      { std::lock_guard gate(turnstile_); }
      rw_.lock_shared();
    }
    void unlock_shared() { rw_.unlock_shared(); }

   private:
    std::mutex turnstile_;
    std::shared_mutex rw_;
  };

  struct Slot {
    FairSharedMutex rw;         // uploads and matches exclusive, reads shared
    std::recursive_mutex cache;  // guards the lazily filled snapshots below
    std::shared_ptr<const ServiceRegistry> registry;
    std::shared_ptr<const AnnotatedProcess> process;
    std::shared_ptr<const text::SynonymLexicon> lexicon;
  };

  Slot& slot(const std::string& projectId);
  std::filesystem::path dir(const std::string& projectId) const;
  void ensureExists(const std::string& projectId) const;

  std::shared_ptr<const text::SynonymLexicon> lexicon(const std::string& projectId, Slot& s);
  std::shared_ptr<const ServiceRegistry> registry(const std::string& projectId, Slot& s, bool required);
  std::shared_ptr<const AnnotatedProcess> process(const std::string& projectId, Slot& s, bool required);
  std::optional<BindingSet> lastBindings(const std::string& projectId) const;

  void invalidate(const std::string& projectId, Slot& s, ArtifactKind kind);

  std::filesystem::path root_;
  QoSSchema schema_;
  text::StopWords stopWords_;
  std::mutex slotsMutex_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;
};

// Atomic replace: the content goes to a temporary sibling that is renamed
// over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::optional<std::string> read_file(const std::filesystem::path& path);

}  // namespace taskweave
