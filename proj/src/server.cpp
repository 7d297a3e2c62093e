#include "taskweave/server.hpp"

#include "taskweave/error.hpp"
#include "taskweave/serialize.hpp"

namespace taskweave {

namespace {

void sendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

void sendError(httplib::Response& res, int status, const std::string& kind, const std::string& message,
               const std::string& name = {}) {
  json body = {{"error", kind}, {"message", message}};
  if (!name.empty()) body["name"] = name;
  sendJson(res, status, body);
}

// Runs a handler and turns library exceptions into JSON error responses.
template <class F>
httplib::Server::Handler guarded(F&& f) {
  return [f = std::forward<F>(f)](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const NamedError& e) {
      sendError(res, http_status_for(e), e.kind(), e.what(), e.name());
    } catch (const Error& e) {
      sendError(res, http_status_for(e), e.kind(), e.what());
    } catch (const json::exception& e) {
      sendError(res, 400, "ParseError", e.what());
    } catch (const std::exception& e) {
      sendError(res, 500, "InternalError", e.what());
    }
  };
}

MatchRequest matchRequestFrom(const std::string& body) {
  MatchRequest r;
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) return r;
  json j = json::parse(body);
  if (!j.is_object()) throw ValidationError("match options must be a JSON object");
  r.options.tau = j.value("tau", r.options.tau);
  r.options.maxDepth = j.value("maxDepth", r.options.maxDepth);
  r.includeConsistency = j.value("includeConsistency", r.includeConsistency);
  std::string scope = j.value("statsScope", std::string("candidates"));
  if (scope == "category")
    r.options.statsScope = StatsScope::Category;
  else if (scope != "candidates")
    throw ValidationError("unknown statsScope '" + scope + "'");
  std::string upstream = j.value("upstream", std::string("all"));
  if (upstream == "immediate")
    r.scope = UpstreamScope::Immediate;
  else if (upstream != "all")
    throw ValidationError("unknown upstream scope '" + upstream + "'");
  return r;
}

json acceptJson(const AcceptReport& r) {
  return {{"kind", to_string(r.kind)}, {"accepted", r.accepted}, {"warnings", r.warnings}, {"specErrors", r.specErrors}};
}

json projectJson(const Project& p) {
  return {{"projectId", p.projectId},
          {"hasRegistry", p.registry != nullptr},
          {"hasProcess", p.process != nullptr},
          {"hasBindings", p.lastBindings.has_value()}};
}

const char* contentTypeFor(ExportKind what) {
  switch (what) {
    case ExportKind::ExecutableBpmn: return "application/xml";
    case ExportKind::WsOnto:
    case ExportKind::BpOnto: return "text/turtle";
    case ExportKind::Validation: return "application/json";
  }
  return "application/octet-stream";
}

}  // namespace

int http_status_for(const Error& error) {
  const std::string& k = error.kind();
  if (k == "NotFoundError") return 404;
  if (k == "ConflictError" || k == "MissingSpecError" || k == "MissingDescriptionError" || k == "BadTargetError" ||
      k == "ContractError")
    return 409;
  if (k == "IoError") return 500;
  return 400;
}

void register_routes(httplib::Server& server, ProjectStore& store) {
  server.Post("/projects/:id", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                sendJson(res, 200, projectJson(store.create_or_load_project(req.path_params.at("id"))));
              }));

  server.Put("/projects/:id/artifacts/:kind",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               auto kind = artifact_kind_from_name(req.path_params.at("kind"));
               if (!kind) throw NotFoundError(req.path_params.at("kind"));
               std::string name = req.has_param("name") ? req.get_param_value("name") : std::string();
               auto report = store.submit_artifact(req.path_params.at("id"), *kind, req.body, name);
               sendJson(res, report.accepted ? 200 : 422, acceptJson(report));
             }));

  server.Put("/projects/:id/tasks/:taskId/spec",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               TaskSpec spec = parse_task_spec(req.body);
               auto errors = store.update_task_spec(req.path_params.at("id"), req.path_params.at("taskId"), spec);
               sendJson(res, has_errors(errors) ? 422 : 200, {{"errors", errors}});
             }));

  server.Post("/projects/:id/match", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                sendJson(res, 200, store.run_match(req.path_params.at("id"), matchRequestFrom(req.body)));
              }));

  server.Get("/projects/:id/bindings", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               sendJson(res, 200, store.bindings_view(req.path_params.at("id")));
             }));

  server.Get("/projects/:id/export/:what", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               auto what = export_kind_from_name(req.path_params.at("what"));
               if (!what) throw NotFoundError(req.path_params.at("what"));
               res.status = 200;
               res.set_content(store.export_artifact(req.path_params.at("id"), *what), contentTypeFor(*what));
             }));

  server.Get("/projects/:id/process", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               sendJson(res, 200, store.process_view(req.path_params.at("id")));
             }));
}

}  // namespace taskweave
