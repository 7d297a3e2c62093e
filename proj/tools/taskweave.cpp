// taskweave command line: ingest artifacts into a project directory, check
// data-flow consistency, match and bind service tasks, export results, or
// serve the HTTP API.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "taskweave/error.hpp"
#include "taskweave/project.hpp"
#include "taskweave/serialize.hpp"
#include "taskweave/server.hpp"

namespace fs = std::filesystem;
using namespace taskweave;

namespace {

struct ProjectRef {
  fs::path root;
  std::string id;
};

// A bare slug is resolved under TASKWEAVE_DATA_DIR when that is set;
// anything else is the project directory itself.
ProjectRef resolveProject(const std::string& arg) {
  const char* env = std::getenv("TASKWEAVE_DATA_DIR");
  if (env && *env && arg.find('/') == std::string::npos) return {fs::path(env), arg};
  fs::path p = fs::absolute(fs::path(arg)).lexically_normal();
  if (!p.has_filename()) p = p.parent_path();
  return {p.parent_path(), p.filename().string()};
}

std::string readInput(const fs::path& path) {
  auto content = read_file(path);
  if (!content) throw Error("IoError", "cannot read " + path.string());
  return *content;
}

void writeOutput(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  write_file_atomic(out, content);
}

void printWarnings(const std::string& what, const AcceptReport& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << what << ": " << w << "\n";
  for (const auto& e : r.specErrors)
    std::cerr << (e.severity == SpecError::Severity::Error ? "error: " : "info: ") << e.taskId << ": " << e.message
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"taskweave: bind BPMN service tasks to registry services"};
  app.require_subcommand(1);

  std::string projectDir;
  double tau = 0.2;
  int maxDepth = 3;
  std::string statsScope = "candidates";

  auto addProject = [&](CLI::App* sub) {
    sub->add_option("--project-dir", projectDir, "Project directory, or a project id under TASKWEAVE_DATA_DIR")
        ->required();
  };
  auto addMatchFlags = [&](CLI::App* sub) {
    sub->add_option("--tau", tau, "Keyword-score threshold")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--max-depth", maxDepth, "Longest composition tried")->check(CLI::PositiveNumber);
    sub->add_option("--stats-scope", statsScope, "Service class for z-scores")
        ->check(CLI::IsMember({"candidates", "category"}));
  };

  auto* ingest = app.add_subcommand("ingest", "Validate and store artifacts");
  addProject(ingest);
  std::string manifest, logs, lexicon, bpmn, specs;
  std::vector<std::string> wsdls;
  ingest->add_option("--manifest", manifest, "Registry manifest (JSON); referenced WSDL files next to it are ingested too");
  ingest->add_option("--wsdl", wsdls, "WSDL documents");
  ingest->add_option("--logs", logs, "Execution log (JSON Lines)");
  ingest->add_option("--lexicon", lexicon, "Synonym lexicon");
  ingest->add_option("--bpmn", bpmn, "BPMN process");
  ingest->add_option("--specs", specs, "Task annotation sidecar (JSON)");

  auto* check = app.add_subcommand("check", "Report data-flow type inconsistencies");
  addProject(check);
  bool immediate = false;
  check->add_flag("--immediate", immediate, "Compare only with the nearest upstream service tasks");

  auto* match = app.add_subcommand("match", "Rank candidates and print the match response");
  addProject(match);
  addMatchFlags(match);
  bool noConsistency = false;
  match->add_flag("--no-consistency", noConsistency, "Skip the consistency section");

  auto* bind = app.add_subcommand("bind", "Match, then write the executable BPMN");
  addProject(bind);
  addMatchFlags(bind);
  std::string bindOut;
  bind->add_option("-o,--output", bindOut, "Output file (default stdout)");

  auto* exportCmd = app.add_subcommand("export", "Export executableBpmn, wsonto, bponto or validation");
  addProject(exportCmd);
  std::string what, exportOut;
  exportCmd->add_option("what", what)->required()->check(
      CLI::IsMember({"executableBpmn", "wsonto", "bponto", "validation"}));
  exportCmd->add_option("-o,--output", exportOut, "Output file (default stdout)");

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string dataDir;
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--data-dir", dataDir, "Project root (default TASKWEAVE_DATA_DIR, then ./taskweave-data)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      if (dataDir.empty()) {
        const char* env = std::getenv("TASKWEAVE_DATA_DIR");
        dataDir = env && *env ? env : "taskweave-data";
      }
      fs::create_directories(dataDir);
      ProjectStore store(dataDir);
      httplib::Server server;
      register_routes(server, store);
      std::cerr << "taskweave listening on " << host << ":" << port << ", data in " << dataDir << "\n";
      if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
      return 0;
    }

    ProjectRef ref = resolveProject(projectDir);
    ProjectStore store(ref.root);
    store.create_or_load_project(ref.id);

    MatchRequest request;
    request.options.tau = tau;
    request.options.maxDepth = maxDepth;
    request.options.statsScope = statsScope == "category" ? StatsScope::Category : StatsScope::Candidates;

    if (*ingest) {
      bool rejected = false;
      auto submit = [&](ArtifactKind kind, const fs::path& file, const std::string& name = {}) {
        auto report = store.submit_artifact(ref.id, kind, readInput(file), name);
        printWarnings(file.string(), report);
        rejected = rejected || !report.accepted;
        std::cerr << (report.accepted ? "stored " : "rejected ") << to_string(kind) << " " << file.string() << "\n";
      };
      if (!lexicon.empty()) submit(ArtifactKind::Lexicon, lexicon);
      if (!manifest.empty()) {
        std::string text = readInput(manifest);
        submit(ArtifactKind::Manifest, manifest);
        std::set<std::string> seen;
        for (const auto& svc : parse_manifest(text).services) {
          std::string location = svc.wsdlLocation;
          if (location.rfind("file://", 0) == 0) location.erase(0, 7);
          fs::path base = fs::path(manifest).parent_path();
          fs::path local = fs::path(location).is_relative() ? base / location : fs::path(location);
          if (!fs::exists(local)) local = base / fs::path(location).filename();
          if (seen.insert(local.string()).second && fs::exists(local))
            submit(ArtifactKind::Wsdl, local, local.filename().string());
        }
      }
      for (const auto& w : wsdls) submit(ArtifactKind::Wsdl, w, fs::path(w).filename().string());
      if (!logs.empty()) submit(ArtifactKind::Logs, logs);
      if (!bpmn.empty()) submit(ArtifactKind::Bpmn, bpmn);
      if (!specs.empty()) submit(ArtifactKind::Specs, specs);
      return rejected ? 1 : 0;
    }

    if (*check) {
      auto reports = store.check(ref.id, immediate ? UpstreamScope::Immediate : UpstreamScope::AllAncestors);
      std::cout << json(reports).dump(2) << "\n";
      return is_consistent(reports) ? 0 : 2;
    }

    if (*match) {
      request.includeConsistency = !noConsistency;
      std::cout << store.run_match(ref.id, request).dump(2) << "\n";
      return 0;
    }

    if (*bind) {
      request.includeConsistency = false;
      store.run_match(ref.id, request);
      writeOutput(bindOut, store.export_artifact(ref.id, ExportKind::ExecutableBpmn));
      std::cerr << store.export_artifact(ref.id, ExportKind::Validation);
      return 0;
    }

    if (*exportCmd) {
      writeOutput(exportOut, store.export_artifact(ref.id, *export_kind_from_name(what)));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
