#pragma once

#include <string>

#include <httplib.h>

#include "taskweave/project.hpp"

namespace taskweave {

// Installs the project routes on `server`:
//   POST /projects/{id}
//   PUT  /projects/{id}/artifacts/{kind}        raw body; ?name= for wsdl
//   PUT  /projects/{id}/tasks/{taskId}/spec     JSON task spec
//   POST /projects/{id}/match                   JSON options
//   GET  /projects/{id}/bindings
//   GET  /projects/{id}/export/{what}           raw body
//   GET  /projects/{id}/process
// Errors come back as {"error": kind, "message": ...} with 400 for bad
// input, 404 for unknown projects or tasks, 409 for missing prerequisites
// and 422 for rejected task specs.
void register_routes(httplib::Server& server, ProjectStore& store);

int http_status_for(const Error& error);

}  // namespace taskweave
