#include "taskweave/project.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "taskweave/emitter.hpp"
#include "taskweave/error.hpp"
#include "taskweave/serialize.hpp"

namespace taskweave {

namespace fs = std::filesystem;

namespace {

constexpr std::pair<ArtifactKind, std::string_view> kArtifactNames[] = {
    {ArtifactKind::Manifest, "manifest"}, {ArtifactKind::Wsdl, "wsdl"}, {ArtifactKind::Logs, "logs"},
    {ArtifactKind::Lexicon, "lexicon"},   {ArtifactKind::Bpmn, "bpmn"}, {ArtifactKind::Specs, "specs"}};

constexpr std::pair<ExportKind, std::string_view> kExportNames[] = {{ExportKind::ExecutableBpmn, "executableBpmn"},
                                                                     {ExportKind::WsOnto, "wsonto"},
                                                                     {ExportKind::BpOnto, "bponto"},
                                                                     {ExportKind::Validation, "validation"}};

fs::path artifactPath(const fs::path& dir, ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::Manifest: return dir / "artifacts" / "manifest.json";
    case ArtifactKind::Wsdl: return dir / "artifacts" / "wsdl";
    case ArtifactKind::Logs: return dir / "artifacts" / "logs.jsonl";
    case ArtifactKind::Lexicon: return dir / "artifacts" / "lexicon.txt";
    case ArtifactKind::Bpmn: return dir / "artifacts" / "process.bpmn";
    case ArtifactKind::Specs: return dir / "artifacts" / "specs.json";
  }
  return {};
}

fs::path derivedPath(const fs::path& dir, std::string_view what) {
  return dir / "derived" / (std::string(what) + ".json");
}

bool validFileName(std::string_view name) {
  if (name.empty() || name.size() > 128 || name.front() == '.') return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
              c == '-';
    if (!ok) return false;
  }
  return true;
}

// Stored file name for a manifest's wsdlLocation: the last path segment.
std::string wsdlFileName(std::string_view location) {
  auto cut = location.find_first_of("?#");
  if (cut != std::string_view::npos) location = location.substr(0, cut);
  auto slash = location.find_last_of("/\\");
  if (slash != std::string_view::npos) location = location.substr(slash + 1);
  return std::string(location);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string_view to_string(ArtifactKind kind) {
  for (const auto& [k, n] : kArtifactNames)
    if (k == kind) return n;
  return "?";
}

std::optional<ArtifactKind> artifact_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kArtifactNames)
    if (n == name) return k;
  return std::nullopt;
}

std::string_view to_string(ExportKind kind) {
  for (const auto& [k, n] : kExportNames)
    if (k == kind) return n;
  return "?";
}

std::optional<ExportKind> export_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kExportNames)
    if (n == name) return k;
  return std::nullopt;
}

bool is_valid_project_id(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-')) return false;
  return true;
}

bool Project::operator==(const Project& other) const {
  auto same = [](const auto& a, const auto& b) { return (!a && !b) || (a && b && *a == *b); };
  return projectId == other.projectId && same(registry, other.registry) && same(process, other.process) &&
         lastBindings == other.lastBindings;
}

ArtifactError::ArtifactError(const Error& inner, std::string projectId, ArtifactKind artifact)
    : Error(inner.kind(), "project " + projectId + ", " + std::string(to_string(artifact)) + ": " + inner.what()),
      projectId_(std::move(projectId)),
      artifact_(artifact) {}

void write_file_atomic(const fs::path& path, std::string_view content) {
  static std::atomic<unsigned long> counter{0};
  fs::create_directories(path.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-" << counter++;
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("IoError", "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("IoError", "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProjectStore::ProjectStore(fs::path root, QoSSchema schema)
    : root_(std::move(root)), schema_(std::move(schema)), stopWords_(text::StopWords::defaults()) {
  validate_schema(schema_);
}

fs::path ProjectStore::dir(const std::string& projectId) const { return root_ / projectId; }

ProjectStore::Slot& ProjectStore::slot(const std::string& projectId) {
  std::lock_guard lock(slotsMutex_);
  auto& s = slots_[projectId];
  if (!s) s = std::make_unique<Slot>();
  return *s;
}

void ProjectStore::ensureExists(const std::string& projectId) const {
  if (!is_valid_project_id(projectId)) throw ValidationError("invalid project id '" + projectId + "'");
  if (!fs::is_directory(dir(projectId))) throw NotFoundError(projectId);
}

Project ProjectStore::create_or_load_project(const std::string& projectId) {
  if (!is_valid_project_id(projectId)) throw ValidationError("invalid project id '" + projectId + "'");
  Slot& s = slot(projectId);
  {
    std::unique_lock lock(s.rw);
    fs::path d = dir(projectId);
    fs::create_directories(d / "artifacts" / "wsdl");
    fs::create_directories(d / "derived");
    if (!fs::exists(d / "project.json")) write_file_atomic(d / "project.json", dump({{"projectId", projectId}}));
  }

  std::shared_lock lock(s.rw);
  Project p;
  p.projectId = projectId;
  p.storedAt = dir(projectId);
  // An incomplete project (say, a manifest whose WSDLs are not uploaded yet)
  // still loads; the missing parts stay empty until they can be built.
  try {
    p.registry = registry(projectId, s, false);
  } catch (const Error&) {
  }
  try {
    if (fs::exists(artifactPath(dir(projectId), ArtifactKind::Specs))) p.process = process(projectId, s, false);
  } catch (const Error&) {
  }
  p.lastBindings = lastBindings(projectId);
  return p;
}

std::shared_ptr<const text::SynonymLexicon> ProjectStore::lexicon(const std::string& projectId, Slot& s) {
  std::lock_guard lock(s.cache);
  if (!s.lexicon) {
    auto content = read_file(artifactPath(dir(projectId), ArtifactKind::Lexicon));
    s.lexicon = std::make_shared<const text::SynonymLexicon>(content ? text::load_lexicon(*content)
                                                                     : text::SynonymLexicon{});
  }
  return s.lexicon;
}

std::shared_ptr<const ServiceRegistry> ProjectStore::registry(const std::string& projectId, Slot& s, bool required) {
  std::lock_guard lock(s.cache);
  if (s.registry) return s.registry;
  fs::path d = dir(projectId);

  if (auto snap = read_file(derivedPath(d, "registry"))) {
    s.registry = std::make_shared<const ServiceRegistry>(nlohmann::json::parse(*snap).get<ServiceRegistry>());
    return s.registry;
  }

  auto manifestText = read_file(artifactPath(d, ArtifactKind::Manifest));
  if (!manifestText) {
    if (required) throw ConflictError("registry");
    return nullptr;
  }
  RegistryManifest manifest = parse_manifest(*manifestText);

  std::map<std::string, ServiceDescription> wsdls;
  std::map<std::string, ServiceDescription> byFile;
  for (const auto& svc : manifest.services) {
    std::string file = wsdlFileName(svc.wsdlLocation);
    auto cached = byFile.find(file);
    if (cached == byFile.end()) {
      auto doc = validFileName(file) ? read_file(artifactPath(d, ArtifactKind::Wsdl) / file) : std::nullopt;
      if (!doc) continue;  // reported by build_registry
      cached = byFile.emplace(file, parse_wsdl(*doc).value).first;
    }
    wsdls.emplace(svc.serviceKey, cached->second);
  }

  std::map<std::string, QoSRecord> qos;
  if (auto logs = read_file(artifactPath(d, ArtifactKind::Logs)))
    qos = aggregate_qos(parse_execution_log(*logs).value, schema_).records;

  auto built = std::make_shared<const ServiceRegistry>(
      build_registry(manifest, wsdls, qos, schema_, *lexicon(projectId, s), stopWords_));
  write_file_atomic(derivedPath(d, "registry"), dump(*built));
  s.registry = built;
  return built;
}

std::shared_ptr<const AnnotatedProcess> ProjectStore::process(const std::string& projectId, Slot& s, bool required) {
  std::lock_guard lock(s.cache);
  if (s.process) return s.process;
  fs::path d = dir(projectId);

  if (auto snap = read_file(derivedPath(d, "process"))) {
    s.process = std::make_shared<const AnnotatedProcess>(nlohmann::json::parse(*snap).get<AnnotatedProcess>());
    return s.process;
  }

  auto bpmn = read_file(artifactPath(d, ArtifactKind::Bpmn));
  if (!bpmn) {
    if (required) throw ConflictError("process");
    return nullptr;
  }
  auto specsText = read_file(artifactPath(d, ArtifactKind::Specs));
  if (!specsText) {
    if (required) throw ConflictError("specs");
    return nullptr;
  }

  ProcessGraph graph = parse_bpmn(*bpmn).value;
  AnnotationSidecar sidecar = parse_annotations(*specsText);
  auto errors = validate_annotations(sidecar.tasks, schema_);
  if (has_errors(errors)) {
    for (const auto& e : errors)
      if (e.severity == SpecError::Severity::Error) throw ValidationError(e.taskId + ": " + e.message);
  }

  AnnotatedProcess annotated = apply_annotations(graph, sidecar.tasks, stopWords_, *lexicon(projectId, s));
  annotated.bpmnSource = *bpmn;
  auto built = std::make_shared<const AnnotatedProcess>(std::move(annotated));
  write_file_atomic(derivedPath(d, "process"), dump(*built));
  s.process = built;
  return built;
}

std::optional<BindingSet> ProjectStore::lastBindings(const std::string& projectId) const {
  auto snap = read_file(derivedPath(dir(projectId), "bindings"));
  if (!snap) return std::nullopt;
  return nlohmann::json::parse(*snap).get<BindingSet>();
}

void ProjectStore::invalidate(const std::string& projectId, Slot& s, ArtifactKind kind) {
  std::lock_guard lock(s.cache);
  fs::path d = dir(projectId);
  bool registryStale = kind == ArtifactKind::Manifest || kind == ArtifactKind::Wsdl || kind == ArtifactKind::Logs ||
                       kind == ArtifactKind::Lexicon;
  bool processStale = kind == ArtifactKind::Bpmn || kind == ArtifactKind::Specs || kind == ArtifactKind::Lexicon;
  if (kind == ArtifactKind::Lexicon) s.lexicon.reset();
  if (registryStale) {
    s.registry.reset();
    fs::remove(derivedPath(d, "registry"));
  }
  if (processStale) {
    s.process.reset();
    fs::remove(derivedPath(d, "process"));
  }
  fs::remove(derivedPath(d, "bindings"));
}

AcceptReport ProjectStore::submit_artifact(const std::string& projectId, ArtifactKind kind, const std::string& payload,
                                           const std::string& name) {
  ensureExists(projectId);
  Slot& s = slot(projectId);
  std::unique_lock lock(s.rw);
  fs::path d = dir(projectId);

  AcceptReport report;
  report.kind = kind;
  fs::path target = artifactPath(d, kind);
  try {
    switch (kind) {
      case ArtifactKind::Manifest: parse_manifest(payload); break;
      case ArtifactKind::Wsdl:
        if (!validFileName(name)) throw ValidationError("invalid WSDL file name '" + name + "'");
        report.warnings = parse_wsdl(payload).warnings;
        target /= name;
        break;
      case ArtifactKind::Logs: report.warnings = parse_execution_log(payload).warnings; break;
      case ArtifactKind::Lexicon: text::load_lexicon(payload); break;
      case ArtifactKind::Bpmn: report.warnings = parse_bpmn(payload).warnings; break;
      case ArtifactKind::Specs: {
        AnnotationSidecar sidecar = parse_annotations(payload);
        report.specErrors = validate_annotations(sidecar.tasks, schema_);
        if (has_errors(report.specErrors)) {
          report.accepted = false;
          return report;
        }
        break;
      }
    }
  } catch (const Error& e) {
    throw ArtifactError(e, projectId, kind);
  }

  write_file_atomic(target, payload);
  invalidate(projectId, s, kind);
  return report;
}

std::vector<SpecError> ProjectStore::update_task_spec(const std::string& projectId, const std::string& taskId,
                                                      TaskSpec spec) {
  ensureExists(projectId);
  Slot& s = slot(projectId);
  std::unique_lock lock(s.rw);
  fs::path d = dir(projectId);

  auto bpmn = read_file(artifactPath(d, ArtifactKind::Bpmn));
  if (!bpmn) throw ConflictError("process");
  ProcessGraph graph = parse_bpmn(*bpmn).value;
  auto node = graph.nodes.find(taskId);
  if (node == graph.nodes.end() || node->second != NodeKind::ServiceTask) throw NotFoundError(taskId);

  spec.taskId = taskId;
  std::vector<TaskSpec> one{spec};
  auto errors = validate_annotations(one, schema_);
  if (has_errors(errors)) return errors;

  nlohmann::json sidecar = {{"processId", graph.processId}, {"tasks", nlohmann::json::array()}};
  if (auto existing = read_file(artifactPath(d, ArtifactKind::Specs))) {
    sidecar = nlohmann::json::parse(*existing);
    if (!sidecar.contains("tasks")) sidecar["tasks"] = nlohmann::json::array();
  }
  auto& tasks = sidecar["tasks"];
  bool replaced = false;
  for (auto& t : tasks) {
    if (t.value("taskId", std::string()) == taskId) {
      t = spec_to_sidecar(spec);
      replaced = true;
    }
  }
  if (!replaced) tasks.push_back(spec_to_sidecar(spec));

  write_file_atomic(artifactPath(d, ArtifactKind::Specs), dump(sidecar));
  invalidate(projectId, s, ArtifactKind::Specs);
  return errors;
}

std::vector<InconsistencyReport> ProjectStore::check(const std::string& projectId, UpstreamScope scope) {
  ensureExists(projectId);
  Slot& s = slot(projectId);
  std::shared_lock lock(s.rw);
  auto proc = process(projectId, s, true);
  return check_flows(*proc, *lexicon(projectId, s), scope);
}

nlohmann::json ProjectStore::run_match(const std::string& projectId, const MatchRequest& request) {
  ensureExists(projectId);
  Slot& s = slot(projectId);
  std::unique_lock lock(s.rw);

  auto reg = registry(projectId, s, true);
  auto proc = process(projectId, s, true);
  auto lex = lexicon(projectId, s);

  MatchResult result = bind_process_tasks(*reg, *proc, *lex, request.options);
  write_file_atomic(derivedPath(dir(projectId), "bindings"), dump(result.bindings));

  nlohmann::json response;
  response["processId"] = proc->graph.processId;
  response["options"] = {{"tau", request.options.tau},
                         {"maxDepth", request.options.maxDepth},
                         {"statsScope", request.options.statsScope == StatsScope::Category ? "category" : "candidates"},
                         {"includeConsistency", request.includeConsistency}};
  if (request.includeConsistency) {
    auto reports = check_flows(*proc, *lex, request.scope);
    response["consistency"] = reports;
    response["consistent"] = is_consistent(reports);
  }
  nlohmann::json tasks = nlohmann::json::object();
  for (const auto& [taskId, match] : result.tasks) {
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& c : match.candidates) {
      nlohmann::json cj = c;
      cj["bindable"] = is_bindable(c.degree);
      candidates.push_back(std::move(cj));
    }
    tasks[taskId] = {{"candidates", candidates}, {"stats", match.stats}, {"bindableCount", match.bindableCount}};
  }
  response["tasks"] = tasks;
  response["bindings"] = result.bindings;
  return response;
}

std::string ProjectStore::export_artifact(const std::string& projectId, ExportKind what) {
  ensureExists(projectId);
  Slot& s = slot(projectId);
  std::shared_lock lock(s.rw);

  switch (what) {
    case ExportKind::WsOnto: {
      auto reg = registry(projectId, s, false);
      if (!reg) {
        ServiceRegistry empty;
        empty.schema = schema_;
        return export_wsonto(empty);
      }
      return export_wsonto(*reg);
    }
    case ExportKind::BpOnto: return export_bponto(*process(projectId, s, true));
    case ExportKind::ExecutableBpmn:
    case ExportKind::Validation: {
      auto bindings = lastBindings(projectId);
      if (!bindings) throw ConflictError("bindings");
      auto exe = emit_executable(*process(projectId, s, true), *bindings, *registry(projectId, s, true));
      if (what == ExportKind::ExecutableBpmn) return exe.document;
      return dump(validate_structure(exe.document));
    }
  }
  return {};
}

nlohmann::json ProjectStore::bindings_view(const std::string& projectId) {
  ensureExists(projectId);
  Slot& s = slot(projectId);
  std::shared_lock lock(s.rw);
  auto bindings = lastBindings(projectId);
  if (!bindings) throw ConflictError("bindings");
  return *bindings;
}

nlohmann::json ProjectStore::process_view(const std::string& projectId) {
  ensureExists(projectId);
  Slot& s = slot(projectId);
  std::shared_lock lock(s.rw);
  fs::path d = dir(projectId);

  auto bpmn = read_file(artifactPath(d, ArtifactKind::Bpmn));
  if (!bpmn) throw ConflictError("process");
  ProcessGraph graph = parse_bpmn(*bpmn).value;

  std::map<std::string, TaskSpec> specs;
  if (auto specsText = read_file(artifactPath(d, ArtifactKind::Specs)))
    for (auto& t : parse_annotations(*specsText).tasks) specs.emplace(t.taskId, std::move(t));
  auto bindings = lastBindings(projectId);

  nlohmann::json view = graph;
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& id : graph.serviceTasks()) {
    std::string status = "unspecified";
    if (specs.count(id)) status = "specified";
    if (bindings) {
      if (bindings->bindings.count(id)) status = "bound";
      for (const auto& u : bindings->unresolved)
        if (u == id) status = "unresolved";
    }
    auto name = graph.nodeNames.find(id);
    auto spec = specs.find(id);
    tasks.push_back({{"taskId", id},
                     {"name", name == graph.nodeNames.end() ? "" : name->second},
                     {"status", status},
                     {"spec", spec == specs.end() ? nlohmann::json(nullptr) : spec_to_sidecar(spec->second)}});
  }
  view["tasks"] = tasks;

  nlohmann::json consistency = nlohmann::json::array();
  bool complete = false;
  try {
    auto proc = process(projectId, s, true);
    consistency = check_flows(*proc, *lexicon(projectId, s));
    complete = true;
  } catch (const Error&) {
  }
  view["complete"] = complete;
  view["consistency"] = consistency;
  return view;
}

}  // namespace taskweave
