#pragma once

#include <string>
#include <utility>
#include <vector>

#include "taskweave/matcher.hpp"
#include "taskweave/process.hpp"
#include "taskweave/registry.hpp"

namespace taskweave {

struct ExecutableProcess {
  std::string document;
  std::vector<std::pair<std::string, std::string>> manifest;  // taskId -> binding summary
};

// Writes each binding into the service task's extensionElements (namespace
// urn:taskweave:binding) and marks unresolved tasks. Everything else in the
// source document is copied byte for byte. When the process carries no
// source, a plain BPMN document is generated from the graph first.
// Throws ContractError when the bindings belong to another process.
ExecutableProcess emit_executable(const AnnotatedProcess& process, const BindingSet& bindings,
                                  const ServiceRegistry& registry);

// BPMN document for a graph, without bindings.
std::string render_bpmn(const ProcessGraph& graph);

struct Finding {
  enum class Severity { Error, Warning };

  std::string ruleId;
  Severity severity = Severity::Error;
  std::string nodeId;
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const { return findings.empty(); }
};

// Structural rules:
//   R1 every node reachable from a start event
//   R2 every non-end node has an outgoing flow, every non-start node an incoming one
//   R3 flow endpoints exist
//   R4 every service task carries a binding (unresolved markers are errors)
//   R5 gateways split (>= 2 out) or join (>= 2 in); warning otherwise
// Throws ParseError on malformed XML.
ValidationReport validate_structure(const std::string& document);

// Deterministic Turtle, prefix block first, subjects sorted.
std::string export_wsonto(const ServiceRegistry& registry);
std::string export_bponto(const AnnotatedProcess& process);

}  // namespace taskweave
