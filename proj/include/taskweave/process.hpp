#pragma once

// BPMN process graphs and the per-service-task annotations (objective,
// inputs, outputs, QoS weights) supplied by the analyst.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taskweave/registry.hpp"
#include "taskweave/text.hpp"
#include "taskweave/types.hpp"

namespace taskweave {

inline constexpr std::string_view kBpmnNs = "http://www.omg.org/spec/BPMN/20100524/MODEL";
inline constexpr std::string_view kBindingNs = "urn:taskweave:binding";

enum class NodeKind { StartEvent, EndEvent, ServiceTask, GenericTask, ExclusiveGateway, ParallelGateway };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_name(std::string_view name);

struct Edge {
  std::string flowId;
  std::string sourceRef;
  std::string targetRef;

  bool operator==(const Edge&) const = default;
};

struct ProcessGraph {
  std::string processId;
  std::map<std::string, NodeKind> nodes;
  std::vector<Edge> edges;
  std::map<std::string, std::string> nodeNames;

  std::vector<std::string> serviceTasks() const;
  std::vector<std::string> successors(const std::string& node) const;
  std::vector<std::string> predecessors(const std::string& node) const;

  bool operator==(const ProcessGraph&) const = default;
};

// Same node ids, kinds and edge multiset (flow ids included).
bool isomorphic(const ProcessGraph& a, const ProcessGraph& b);

// What parse_bpmn saw on each service task's extension elements; used by
// the structural validator.
struct TaskBindingMarker {
  bool hasBinding = false;
  bool unresolved = false;
};

struct BpmnReadResult {
  ProcessGraph graph;
  std::vector<Edge> danglingFlows;
  std::map<std::string, TaskBindingMarker> markers;
  std::vector<std::string> warnings;
};

// Lenient read: dangling flows are returned rather than thrown.
BpmnReadResult read_bpmn(const std::string& document);

// Throws ParseError (malformed XML, no process) or ReferenceError(flowId).
Parsed<ProcessGraph> parse_bpmn(const std::string& document);

struct TaskSpec {
  std::string taskId;
  std::string objective;
  std::vector<Param> inputs;
  std::vector<Param> outputs;
  std::map<std::string, double> weights;

  bool operator==(const TaskSpec&) const = default;
};

struct SpecError {
  enum class Severity { Error, Info };
  std::string taskId;
  Severity severity = Severity::Error;
  std::string message;

  bool operator==(const SpecError&) const = default;
};

struct AnnotationSidecar {
  std::string processId;
  std::vector<TaskSpec> tasks;
};

// {"processId":..., "tasks":[{"taskId","objective","inputs":[{"name","type"}],
// "outputs":[...], "weights":{...}}]}; "type" is a simple type name or an
// inline object {field: type, ...}.
AnnotationSidecar parse_annotations(const std::string& document);
TaskSpec parse_task_spec(const std::string& document);

// Errors and infos. Specs with an empty weight map are filled in place with
// uniform weights over the schema, reported at Info severity.
std::vector<SpecError> validate_annotations(std::vector<TaskSpec>& specs, const QoSSchema& schema);
bool has_errors(const std::vector<SpecError>& errors);

struct AnnotatedProcess {
  ProcessGraph graph;
  std::string bpmnSource;  // original document, kept for byte-stable emission
  std::map<std::string, TaskSpec> specs;
  std::map<std::string, text::KeywordSet> taskKeywords;

  bool operator==(const AnnotatedProcess&) const = default;
};

// Throws MissingSpecError or BadTargetError.
AnnotatedProcess apply_annotations(const ProcessGraph& graph, const std::vector<TaskSpec>& specs,
                                   const text::StopWords& stopWords, const text::SynonymLexicon& lexicon);

}  // namespace taskweave
