#include "taskweave/process.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "taskweave/error.hpp"
#include "taskweave/xml.hpp"

namespace taskweave {

using nlohmann::json;

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::StartEvent: return "startEvent";
    case NodeKind::EndEvent: return "endEvent";
    case NodeKind::ServiceTask: return "serviceTask";
    case NodeKind::GenericTask: return "genericTask";
    case NodeKind::ExclusiveGateway: return "exclusiveGateway";
    case NodeKind::ParallelGateway: return "parallelGateway";
  }
  return "?";
}

std::optional<NodeKind> node_kind_from_name(std::string_view name) {
  for (auto k : {NodeKind::StartEvent, NodeKind::EndEvent, NodeKind::ServiceTask, NodeKind::GenericTask,
                 NodeKind::ExclusiveGateway, NodeKind::ParallelGateway})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::vector<std::string> ProcessGraph::serviceTasks() const {
  std::vector<std::string> out;
  for (const auto& [id, kind] : nodes)
    if (kind == NodeKind::ServiceTask) out.push_back(id);
  return out;
}

std::vector<std::string> ProcessGraph::successors(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& e : edges)
    if (e.sourceRef == node) out.push_back(e.targetRef);
  return out;
}

std::vector<std::string> ProcessGraph::predecessors(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& e : edges)
    if (e.targetRef == node) out.push_back(e.sourceRef);
  return out;
}

bool isomorphic(const ProcessGraph& a, const ProcessGraph& b) {
  if (a.processId != b.processId || a.nodes != b.nodes) return false;
  auto key = [](const Edge& e) { return std::tie(e.flowId, e.sourceRef, e.targetRef); };
  auto sorted = [&](std::vector<Edge> v) {
    std::sort(v.begin(), v.end(), [&](const Edge& x, const Edge& y) { return key(x) < key(y); });
    return v;
  };
  return sorted(a.edges) == sorted(b.edges);
}

namespace {

const std::set<std::string_view>& degradedTaskKinds() {
  static const std::set<std::string_view> kinds = {"userTask",   "manualTask",  "scriptTask",
                                                   "sendTask",   "receiveTask", "businessRuleTask"};
  return kinds;
}

const std::set<std::string_view>& skippedFlowObjects() {
  static const std::set<std::string_view> kinds = {
      "inclusiveGateway",       "eventBasedGateway",      "complexGateway", "intermediateCatchEvent",
      "intermediateThrowEvent", "boundaryEvent",          "subProcess",     "adHocSubProcess",
      "transaction",            "callActivity"};
  return kinds;
}

}  // namespace

BpmnReadResult read_bpmn(const std::string& document) {
  auto doc = xml::parse(document);
  const xml::Element* process = nullptr;
  if (doc.root->is(kBpmnNs, "process")) process = doc.root.get();
  else if (doc.root->is(kBpmnNs, "definitions")) process = doc.root->child(kBpmnNs, "process");
  if (process == nullptr) throw ParseError("no BPMN <process> element found", doc.root->line, doc.root->column);

  BpmnReadResult out;
  out.graph.processId = process->attr("id").value_or("");
  std::set<std::string> skipped;
  std::vector<const xml::Element*> flows;

  for (const auto& c : process->children) {
    if (c->ns != kBpmnNs) continue;
    const std::string& kindName = c->local;
    if (kindName == "sequenceFlow") {
      flows.push_back(c.get());
      continue;
    }
    auto id = c->attr("id");
    std::optional<NodeKind> kind = node_kind_from_name(kindName);
    if (!kind && kindName == "task") kind = NodeKind::GenericTask;
    if (!kind && degradedTaskKinds().contains(kindName)) {
      kind = NodeKind::GenericTask;
      out.warnings.push_back(kindName + " '" + id.value_or("?") + "' treated as a generic task");
    }
    if (!kind) {
      if (skippedFlowObjects().contains(kindName)) {
        out.warnings.push_back("unsupported " + kindName + " '" + id.value_or("?") + "' skipped");
        if (id) skipped.insert(*id);
      }
      continue;
    }
    if (!id || id->empty()) throw ParseError(kindName + " without id", c->line, c->column);
    if (out.graph.nodes.contains(*id)) throw ParseError("duplicate node id '" + *id + "'", c->line, c->column);
    out.graph.nodes.emplace(*id, *kind);
    if (auto name = c->attr("name")) out.graph.nodeNames.emplace(*id, *name);

    if (*kind == NodeKind::ServiceTask) {
      TaskBindingMarker marker;
      if (const auto* ext = c->child(kBpmnNs, "extensionElements")) {
        marker.hasBinding = ext->child(kBindingNs, "binding") != nullptr;
        marker.unresolved = ext->child(kBindingNs, "unresolved") != nullptr;
      }
      out.markers.emplace(*id, marker);
    }
  }

  for (const auto* f : flows) {
    Edge e{f->attr("id").value_or(""), f->attr("sourceRef").value_or(""), f->attr("targetRef").value_or("")};
    if (skipped.contains(e.sourceRef) || skipped.contains(e.targetRef)) {
      out.warnings.push_back("sequenceFlow '" + e.flowId + "' touches a skipped element and was dropped");
      continue;
    }
    if (!out.graph.nodes.contains(e.sourceRef) || !out.graph.nodes.contains(e.targetRef)) {
      out.danglingFlows.push_back(std::move(e));
      continue;
    }
    out.graph.edges.push_back(std::move(e));
  }
  return out;
}

Parsed<ProcessGraph> parse_bpmn(const std::string& document) {
  auto r = read_bpmn(document);
  if (!r.danglingFlows.empty()) {
    const auto& e = r.danglingFlows.front();
    throw ReferenceError(e.flowId, "sequenceFlow endpoint does not exist");
  }
  return Parsed<ProcessGraph>{std::move(r.graph), std::move(r.warnings)};
}

// ---------------------------------------------------------------------------
// Annotation sidecar
// ---------------------------------------------------------------------------

namespace {

DataType parseType(const json& t, const std::string& where, int depth) {
  if (t.is_string()) {
    auto k = simple_kind_from_name(t.get<std::string>());
    if (!k) throw ParseError(where + ": unknown type '" + t.get<std::string>() + "'");
    return DataType::of(*k);
  }
  if (t.is_object()) {
    if (depth > kMaxTypeDepth)
      throw ParseError(where + ": complex type nesting exceeds depth " + std::to_string(kMaxTypeDepth));
    if (t.empty()) throw ParseError(where + ": complex type needs at least one field");
    std::vector<Param> fields;
    for (const auto& [name, ft] : t.items()) fields.push_back(Param{name, parseType(ft, where, depth + 1)});
    return DataType::complex(std::move(fields));
  }
  throw ParseError(where + ": type must be a name or an object");
}

std::vector<Param> parseParams(const json& obj, const char* key, const std::string& where) {
  std::vector<Param> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw ParseError(where + ": '" + key + "' must be an array");
  for (const auto& p : *it) {
    if (!p.is_object() || !p.contains("name") || !p["name"].is_string() || !p.contains("type"))
      throw ParseError(where + ": each parameter needs 'name' and 'type'");
    std::string name = p["name"].get<std::string>();
    if (name.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError(where + ": empty parameter name");
    out.push_back(Param{name, parseType(p["type"], where + " param " + name, 1)});
  }
  return out;
}

TaskSpec specFromJson(const json& t) {
  if (!t.is_object() || !t.contains("taskId") || !t["taskId"].is_string())
    throw ParseError("task spec needs a string 'taskId'");
  TaskSpec s;
  s.taskId = t["taskId"].get<std::string>();
  std::string where = "task " + s.taskId;
  if (auto o = t.find("objective"); o != t.end() && !o->is_null()) {
    if (!o->is_string()) throw ParseError(where + ": objective must be a string");
    s.objective = o->get<std::string>();
  }
  s.inputs = parseParams(t, "inputs", where);
  s.outputs = parseParams(t, "outputs", where);
  if (auto w = t.find("weights"); w != t.end() && !w->is_null()) {
    if (!w->is_object()) throw ParseError(where + ": weights must be an object");
    for (const auto& [k, v] : w->items()) {
      if (!v.is_number()) throw ParseError(where + ": weight '" + k + "' must be a number");
      s.weights[k] = v.get<double>();
    }
  }
  return s;
}

json parseJson(const std::string& document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

AnnotationSidecar parse_annotations(const std::string& document) {
  json j = parseJson(document);
  if (!j.is_object()) throw ParseError("annotation sidecar must be a JSON object");
  AnnotationSidecar out;
  if (auto p = j.find("processId"); p != j.end() && p->is_string()) out.processId = p->get<std::string>();
  auto tasks = j.find("tasks");
  if (tasks == j.end() || !tasks->is_array()) throw ParseError("annotation sidecar needs a 'tasks' array");
  for (const auto& t : *tasks) out.tasks.push_back(specFromJson(t));
  return out;
}

TaskSpec parse_task_spec(const std::string& document) { return specFromJson(parseJson(document)); }

std::vector<SpecError> validate_annotations(std::vector<TaskSpec>& specs, const QoSSchema& schema) {
  std::vector<SpecError> out;
  std::set<std::string> seen;
  auto error = [&](const std::string& task, std::string msg) {
    out.push_back(SpecError{task, SpecError::Severity::Error, std::move(msg)});
  };
  for (auto& s : specs) {
    if (!seen.insert(s.taskId).second) error(s.taskId, "duplicate spec for task " + s.taskId);
    if (s.weights.empty()) {
      if (schema.attributes.empty()) {
        error(s.taskId, "no weights given and the QoS schema is empty");
        continue;
      }
      double w = 1.0 / static_cast<double>(schema.attributes.size());
      for (const auto& a : schema.attributes) s.weights[a.name] = w;
      out.push_back(SpecError{s.taskId, SpecError::Severity::Info,
                              "no weights given; using uniform weight " + format_double(w)});
      continue;
    }
    double sum = 0;
    for (const auto& [name, w] : s.weights) {
      if (!schema.find(name)) error(s.taskId, "weight for unknown QoS attribute '" + name + "'");
      if (!std::isfinite(w) || w <= 0 || w > 1)
        error(s.taskId, "weight '" + name + "' = " + format_double(w) + " outside (0,1]");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-6) error(s.taskId, "weights sum " + format_double(sum) + " ≠ 1");
  }
  return out;
}

bool has_errors(const std::vector<SpecError>& errors) {
  return std::any_of(errors.begin(), errors.end(),
                     [](const SpecError& e) { return e.severity == SpecError::Severity::Error; });
}

AnnotatedProcess apply_annotations(const ProcessGraph& graph, const std::vector<TaskSpec>& specs,
                                   const text::StopWords& stopWords, const text::SynonymLexicon& lexicon) {
  AnnotatedProcess out;
  out.graph = graph;
  for (const auto& s : specs) {
    auto it = graph.nodes.find(s.taskId);
    if (it == graph.nodes.end() || it->second != NodeKind::ServiceTask) throw BadTargetError(s.taskId);
    if (!out.specs.emplace(s.taskId, s).second) throw ValidationError("duplicate spec for task " + s.taskId);
    out.taskKeywords[s.taskId] = text::extract_keywords(s.objective, stopWords, lexicon);
  }
  for (const auto& id : graph.serviceTasks())
    if (!out.specs.contains(id)) throw MissingSpecError(id);
  return out;
}

}  // namespace taskweave
