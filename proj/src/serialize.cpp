#include "taskweave/serialize.hpp"

#include "taskweave/error.hpp"

namespace taskweave {

namespace {

template <class T>
std::vector<T> vec(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<T>>();
}

Direction directionFrom(const std::string& s) {
  if (s == "maximize") return Direction::Maximize;
  if (s == "minimize") return Direction::Minimize;
  throw ParseError("unknown QoS direction '" + s + "'");
}

}  // namespace

void to_json(json& j, const DataType& t) {
  if (t.isSimple()) {
    j = std::string(to_string(*t.simple));
    return;
  }
  j = json::array();
  for (const auto& f : t.fields) j.push_back(f);
}

void from_json(const json& j, DataType& t) {
  if (j.is_string()) {
    auto k = simple_kind_from_name(j.get<std::string>());
    if (!k) throw ParseError("unknown type '" + j.get<std::string>() + "'");
    t = DataType::of(*k);
  } else {
    t = DataType::complex(j.get<std::vector<Param>>());
  }
}

void to_json(json& j, const Param& p) { j = json{{"name", p.name}, {"type", p.type}}; }
void from_json(const json& j, Param& p) {
  p.name = j.at("name").get<std::string>();
  p.type = j.at("type").get<DataType>();
}

void to_json(json& j, const QoSSchema& s) {
  j = json::array();
  for (const auto& a : s.attributes)
    j.push_back({{"name", a.name}, {"direction", to_string(a.direction)}, {"unit", a.unit}});
}

void from_json(const json& j, QoSSchema& s) {
  s.attributes.clear();
  for (const auto& a : j)
    s.attributes.push_back(QoSAttribute{a.at("name").get<std::string>(),
                                        directionFrom(a.at("direction").get<std::string>()),
                                        a.value("unit", std::string())});
}

void to_json(json& j, const QoSRecord& r) { j = json{{"values", r.values}, {"sampleCount", r.sampleCount}}; }
void from_json(const json& j, QoSRecord& r) {
  r.values = j.at("values").get<std::map<std::string, double>>();
  r.sampleCount = j.at("sampleCount").get<std::size_t>();
}

namespace {

json operationJson(const OperationSig& op) {
  return {{"name", op.name}, {"description", op.description}, {"inputs", op.inputs}, {"outputs", op.outputs}};
}

OperationSig operationFrom(const json& j) {
  return OperationSig{j.at("name").get<std::string>(), j.at("description").get<std::string>(),
                      vec<Param>(j, "inputs"), vec<Param>(j, "outputs")};
}

Transport transportFrom(const std::string& s) { return s == "tls" ? Transport::Tls : Transport::None; }
Authentication authFrom(const std::string& s) {
  if (s == "basic") return Authentication::Basic;
  if (s == "token") return Authentication::Token;
  return Authentication::None;
}

}  // namespace

void to_json(json& j, const ServiceRegistry& r) {
  json cats = json::object();
  for (const auto& [k, c] : r.categories)
    cats[k] = {{"name", c.record.name}, {"description", c.record.description}, {"keywords", c.keywords}};
  json biz = json::object();
  for (const auto& [k, b] : r.businesses) biz[k] = b.businessName;
  json svcs = json::object();
  for (const auto& [k, s] : r.services) {
    json ops = json::array();
    for (const auto& op : s.description.operations) ops.push_back(operationJson(op));
    json rec = {{"businessKey", s.record.businessKey},
                {"name", s.record.name},
                {"description", s.record.description},
                {"categoryKey", s.record.categoryKey},
                {"wsdl", s.record.wsdlLocation},
                {"security",
                 {{"transport", to_string(s.record.security.transport)},
                  {"authentication", to_string(s.record.security.authentication)}}},
                {"cost", s.record.cost ? json(*s.record.cost) : json(nullptr)}};
    svcs[k] = {{"record", rec},
               {"description",
                {{"operations", ops},
                 {"endpointAddress", s.description.endpointAddress},
                 {"interfaceName", s.description.interfaceName}}},
               {"qos", s.qos},
               {"keywords", s.keywords}};
  }
  j = json{{"schema", r.schema}, {"categories", cats}, {"businesses", biz}, {"services", svcs}};
}

void from_json(const json& j, ServiceRegistry& r) {
  r = ServiceRegistry{};
  r.schema = j.at("schema").get<QoSSchema>();
  for (const auto& [k, c] : j.at("categories").items())
    r.categories.emplace(k, CategoryEntry{CategoryRecord{k, c.at("name").get<std::string>(),
                                                         c.at("description").get<std::string>()},
                                          c.at("keywords").get<text::KeywordSet>()});
  for (const auto& [k, b] : j.at("businesses").items())
    r.businesses.emplace(k, BusinessEntity{k, b.get<std::string>()});
  for (const auto& [k, s] : j.at("services").items()) {
    ServiceEntry e;
    const auto& rec = s.at("record");
    e.record.serviceKey = k;
    e.record.businessKey = rec.at("businessKey").get<std::string>();
    e.record.name = rec.at("name").get<std::string>();
    e.record.description = rec.at("description").get<std::string>();
    e.record.categoryKey = rec.at("categoryKey").get<std::string>();
    e.record.wsdlLocation = rec.at("wsdl").get<std::string>();
    e.record.security.transport = transportFrom(rec.at("security").at("transport").get<std::string>());
    e.record.security.authentication = authFrom(rec.at("security").at("authentication").get<std::string>());
    if (!rec.at("cost").is_null()) e.record.cost = rec.at("cost").get<double>();
    const auto& d = s.at("description");
    for (const auto& op : d.at("operations")) e.description.operations.push_back(operationFrom(op));
    e.description.endpointAddress = d.at("endpointAddress").get<std::string>();
    e.description.interfaceName = d.at("interfaceName").get<std::string>();
    e.qos = s.at("qos").get<QoSRecord>();
    e.keywords = s.at("keywords").get<text::KeywordSet>();
    r.services.emplace(k, std::move(e));
  }
}

void to_json(json& j, const ProcessGraph& g) {
  json nodes = json::array();
  for (const auto& [id, kind] : g.nodes) {
    json n = {{"id", id}, {"kind", to_string(kind)}};
    if (auto it = g.nodeNames.find(id); it != g.nodeNames.end()) n["name"] = it->second;
    nodes.push_back(std::move(n));
  }
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({{"id", e.flowId}, {"source", e.sourceRef}, {"target", e.targetRef}});
  j = json{{"processId", g.processId}, {"nodes", nodes}, {"edges", edges}};
}

void from_json(const json& j, ProcessGraph& g) {
  g = ProcessGraph{};
  g.processId = j.at("processId").get<std::string>();
  for (const auto& n : j.at("nodes")) {
    auto id = n.at("id").get<std::string>();
    auto kind = node_kind_from_name(n.at("kind").get<std::string>());
    if (!kind) throw ParseError("unknown node kind in snapshot");
    g.nodes.emplace(id, *kind);
    if (n.contains("name")) g.nodeNames.emplace(id, n.at("name").get<std::string>());
  }
  for (const auto& e : j.at("edges"))
    g.edges.push_back(Edge{e.at("id").get<std::string>(), e.at("source").get<std::string>(),
                           e.at("target").get<std::string>()});
}

void to_json(json& j, const TaskSpec& s) {
  j = json{{"taskId", s.taskId},
           {"objective", s.objective},
           {"inputs", s.inputs},
           {"outputs", s.outputs},
           {"weights", s.weights}};
}

void from_json(const json& j, TaskSpec& s) {
  s.taskId = j.at("taskId").get<std::string>();
  s.objective = j.value("objective", std::string());
  s.inputs = vec<Param>(j, "inputs");
  s.outputs = vec<Param>(j, "outputs");
  s.weights = j.value("weights", std::map<std::string, double>{});
}

namespace {

json sidecarType(const DataType& t) {
  if (t.isSimple()) return std::string(to_string(*t.simple));
  json obj = json::object();
  for (const auto& f : t.fields) obj[f.name] = sidecarType(f.type);
  return obj;
}

json sidecarParams(const std::vector<Param>& ps) {
  json arr = json::array();
  for (const auto& p : ps) arr.push_back({{"name", p.name}, {"type", sidecarType(p.type)}});
  return arr;
}

}  // namespace

json spec_to_sidecar(const TaskSpec& spec) {
  return json{{"taskId", spec.taskId},
              {"objective", spec.objective},
              {"inputs", sidecarParams(spec.inputs)},
              {"outputs", sidecarParams(spec.outputs)},
              {"weights", spec.weights}};
}

void to_json(json& j, const AnnotatedProcess& p) {
  json specs = json::object();
  for (const auto& [id, s] : p.specs) specs[id] = s;
  json kws = json::object();
  for (const auto& [id, k] : p.taskKeywords) kws[id] = k;
  j = json{{"graph", p.graph}, {"bpmnSource", p.bpmnSource}, {"specs", specs}, {"taskKeywords", kws}};
}

void from_json(const json& j, AnnotatedProcess& p) {
  p = AnnotatedProcess{};
  p.graph = j.at("graph").get<ProcessGraph>();
  p.bpmnSource = j.value("bpmnSource", std::string());
  for (const auto& [id, s] : j.at("specs").items()) p.specs.emplace(id, s.get<TaskSpec>());
  for (const auto& [id, k] : j.at("taskKeywords").items()) p.taskKeywords.emplace(id, k.get<text::KeywordSet>());
}

void to_json(json& j, const MatchCandidate& c) {
  j = json{{"serviceKey", c.serviceKey},
           {"operation", c.operationName},
           {"degree", to_string(c.degree)},
           {"keywordScore", c.keywordScore},
           {"F", c.utility}};
}

void from_json(const json& j, MatchCandidate& c) {
  c.serviceKey = j.at("serviceKey").get<std::string>();
  c.operationName = j.at("operation").get<std::string>();
  auto d = match_degree_from_name(j.at("degree").get<std::string>());
  if (!d) throw ParseError("unknown match degree in snapshot");
  c.degree = *d;
  c.keywordScore = j.at("keywordScore").get<double>();
  c.utility = j.at("F").get<double>();
}

void to_json(json& j, const BindingSet& b) {
  json bindings = json::object();
  for (const auto& [task, binding] : b.bindings) {
    if (const auto* atomic = std::get_if<MatchCandidate>(&binding)) {
      json a = *atomic;
      a["kind"] = "atomic";
      bindings[task] = std::move(a);
    } else {
      const auto& plan = std::get<CompositePlan>(binding);
      json steps = json::array();
      for (const auto& s : plan.steps) steps.push_back({{"serviceKey", s.serviceKey}, {"operation", s.operationName}});
      bindings[task] = {{"kind", "composite"}, {"steps", steps}, {"producedParams", plan.producedParams}};
    }
  }
  j = json{{"processId", b.processId}, {"bindings", bindings}, {"unresolved", b.unresolved}};
}

void from_json(const json& j, BindingSet& b) {
  b = BindingSet{};
  b.processId = j.at("processId").get<std::string>();
  for (const auto& [task, v] : j.at("bindings").items()) {
    if (v.at("kind") == "atomic") {
      b.bindings.emplace(task, v.get<MatchCandidate>());
    } else {
      CompositePlan plan;
      for (const auto& s : v.at("steps"))
        plan.steps.push_back(PlanStep{s.at("serviceKey").get<std::string>(), s.at("operation").get<std::string>()});
      plan.producedParams = v.at("producedParams").get<std::vector<Param>>();
      b.bindings.emplace(task, std::move(plan));
    }
  }
  b.unresolved = j.at("unresolved").get<std::vector<std::string>>();
}

void to_json(json& j, const SpecError& e) {
  j = json{{"taskId", e.taskId},
           {"severity", e.severity == SpecError::Severity::Error ? "error" : "info"},
           {"message", e.message}};
}

void to_json(json& j, const InconsistencyReport& r) {
  j = json{{"upstreamTask", r.upstreamTask}, {"downstreamTask", r.downstreamTask}, {"paramName", r.paramName},
           {"outputType", r.outputType},     {"inputType", r.inputType},           {"kind", to_string(r.kind)},
           {"severity", r.isError() ? "error" : "info"}};
}

void to_json(json& j, const Finding& f) {
  j = json{{"ruleId", f.ruleId},
           {"severity", f.severity == Finding::Severity::Error ? "error" : "warning"},
           {"nodeId", f.nodeId},
           {"message", f.message}};
}

void to_json(json& j, const ValidationReport& r) { j = json{{"findings", r.findings}}; }

void to_json(json& j, const CandidateStats& s) {
  j = json::object();
  for (const auto& [name, a] : s) j[name] = {{"mean", a.mean}, {"stddev", a.stddev}, {"n", a.count}};
}

}  // namespace taskweave
