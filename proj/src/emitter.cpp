#include "taskweave/emitter.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "taskweave/error.hpp"
#include "taskweave/xml.hpp"

namespace taskweave {

// ---------------------------------------------------------------------------
// Executable process
// ---------------------------------------------------------------------------

std::string render_bpmn(const ProcessGraph& graph) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<bpmn:definitions xmlns:bpmn=\"" << kBpmnNs << "\" id=\"definitions-" << xml::escape(graph.processId)
     << "\" targetNamespace=\"urn:taskweave:process\">\n"
     << "  <bpmn:process id=\"" << xml::escape(graph.processId) << "\" isExecutable=\"true\">\n";
  for (const auto& [id, kind] : graph.nodes) {
    std::string tag = kind == NodeKind::GenericTask ? "task" : std::string(to_string(kind));
    os << "    <bpmn:" << tag << " id=\"" << xml::escape(id) << '"';
    if (auto n = graph.nodeNames.find(id); n != graph.nodeNames.end()) os << " name=\"" << xml::escape(n->second) << '"';
    os << "/>\n";
  }
  for (const auto& e : graph.edges)
    os << "    <bpmn:sequenceFlow id=\"" << xml::escape(e.flowId) << "\" sourceRef=\"" << xml::escape(e.sourceRef)
       << "\" targetRef=\"" << xml::escape(e.targetRef) << "\"/>\n";
  os << "  </bpmn:process>\n</bpmn:definitions>\n";
  return os.str();
}

namespace {

constexpr std::string_view kPrefix = "taskweave";

struct Splice {
  std::size_t begin;
  std::size_t end;
  std::string text;
};

std::string attr(std::string_view name, std::string_view value) {
  return " " + std::string(name) + "=\"" + xml::escape(value) + "\"";
}

std::string stepAttrs(const ServiceRegistry& registry, const std::string& serviceKey, const std::string& operation) {
  std::string out = attr("serviceKey", serviceKey) + attr("operation", operation);
  if (const auto* svc = registry.service(serviceKey)) {
    out += attr("endpoint", svc->description.endpointAddress);
    out += attr("wsdl", svc->record.wsdlLocation);
  }
  return out;
}

std::string indentOf(const std::string& src, std::size_t at) {
  std::size_t lineStart = src.rfind('\n', at == 0 ? 0 : at - 1);
  lineStart = lineStart == std::string::npos ? 0 : lineStart + 1;
  std::size_t i = lineStart;
  while (i < at && (src[i] == ' ' || src[i] == '\t')) ++i;
  return src.substr(lineStart, i - lineStart);
}

std::string bindingBlock(const ServiceRegistry& registry, const Binding* binding, const std::string& indent) {
  std::string p(kPrefix);
  if (binding == nullptr)
    return indent + "<" + p + ":unresolved" + attr("reason", "no bindable candidate or composition") + "/>";
  if (const auto* atomic = std::get_if<MatchCandidate>(binding)) {
    return indent + "<" + p + ":binding" + attr("kind", "atomic") +
           stepAttrs(registry, atomic->serviceKey, atomic->operationName) +
           attr("degree", to_string(atomic->degree)) + attr("utility", format_double(atomic->utility)) +
           attr("keywordScore", format_double(atomic->keywordScore)) + "/>";
  }
  const auto& plan = std::get<CompositePlan>(*binding);
  std::string out = indent + "<" + p + ":binding" + attr("kind", "composite") + ">\n";
  for (std::size_t i = 0; i < plan.steps.size(); ++i)
    out += indent + "  <" + p + ":step" + attr("index", std::to_string(i + 1)) +
           stepAttrs(registry, plan.steps[i].serviceKey, plan.steps[i].operationName) + "/>\n";
  return out + indent + "</" + p + ":binding>";
}

std::string summary(const Binding* binding) {
  if (binding == nullptr) return "unresolved";
  if (const auto* atomic = std::get_if<MatchCandidate>(binding))
    return "atomic " + atomic->serviceKey + "#" + atomic->operationName;
  std::string out = "composite";
  for (const auto& s : std::get<CompositePlan>(*binding).steps) out += " " + s.serviceKey + "#" + s.operationName;
  return out;
}

}  // namespace

ExecutableProcess emit_executable(const AnnotatedProcess& process, const BindingSet& bindings,
                                  const ServiceRegistry& registry) {
  if (bindings.processId != process.graph.processId)
    throw ContractError("bindings belong to process '" + bindings.processId + "', not '" +
                        process.graph.processId + "'");
  std::set<std::string> serviceTasks;
  for (const auto& id : process.graph.serviceTasks()) serviceTasks.insert(id);
  for (const auto& [taskId, b] : bindings.bindings)
    if (!serviceTasks.contains(taskId)) throw ContractError("binding for unknown service task '" + taskId + "'");
  for (const auto& taskId : bindings.unresolved)
    if (!serviceTasks.contains(taskId)) throw ContractError("unresolved entry for unknown service task '" + taskId + "'");

  std::string source = process.bpmnSource.empty() ? render_bpmn(process.graph) : process.bpmnSource;
  auto doc = xml::parse(source);
  const xml::Element* proc = doc.root->is(kBpmnNs, "process") ? doc.root.get() : doc.root->child(kBpmnNs, "process");
  if (proc == nullptr) throw ParseError("no BPMN <process> element found");

  ExecutableProcess out;
  std::vector<Splice> splices;
  std::string p(kPrefix);

  if (auto declared = doc.root->nsDecls.find(p); declared == doc.root->nsDecls.end()) {
    std::size_t at = doc.root->startEnd - (doc.root->selfClosing ? 2 : 1);
    splices.push_back(Splice{at, at, attr("xmlns:" + p, kBindingNs)});
  } else if (declared->second != kBindingNs) {
    throw ContractError("prefix '" + p + "' is already bound to " + declared->second);
  }

  for (const auto& c : proc->children) {
    if (!c->is(kBpmnNs, "serviceTask")) continue;
    auto id = c->attr("id").value_or("");
    const Binding* binding = nullptr;
    if (auto it = bindings.bindings.find(id); it != bindings.bindings.end()) binding = &it->second;
    else if (std::find(bindings.unresolved.begin(), bindings.unresolved.end(), id) == bindings.unresolved.end())
      continue;
    out.manifest.emplace_back(id, summary(binding));

    std::string taskIndent = indentOf(source, c->startBegin);
    std::string bpmnPrefix = c->prefix.empty() ? "" : c->prefix + ":";
    std::string extOpen = "<" + bpmnPrefix + "extensionElements>";
    std::string extClose = "</" + bpmnPrefix + "extensionElements>";

    if (const auto* ext = c->child(kBpmnNs, "extensionElements")) {
      std::string extIndent = indentOf(source, ext->startBegin);
      std::string block = bindingBlock(registry, binding, extIndent + "  ");
      if (ext->selfClosing) {
        std::string open = "<" + ext->qname + ">";
        std::string close = "</" + ext->qname + ">";
        splices.push_back(Splice{ext->startBegin, ext->startEnd, open + "\n" + block + "\n" + extIndent + close});
      } else {
        // A closing tag alone on its line keeps that line's indentation for the new block.
        std::string closeIndent = indentOf(source, ext->endBegin);
        std::size_t lineStart = ext->endBegin - closeIndent.size();
        bool ownLine = lineStart == 0 || source[lineStart - 1] == '\n';
        if (ownLine)
          splices.push_back(Splice{lineStart, lineStart, block + "\n"});
        else
          splices.push_back(Splice{ext->endBegin, ext->endBegin, "\n" + block + "\n" + extIndent});
      }
      continue;
    }

    std::string childIndent = taskIndent + "  ";
    std::string block = childIndent + extOpen + "\n" + bindingBlock(registry, binding, childIndent + "  ") + "\n" +
                        childIndent + extClose;
    if (c->selfClosing) {
      std::string tag = source.substr(c->startBegin, c->startEnd - c->startBegin);
      tag.erase(tag.size() - 2);
      while (!tag.empty() && (tag.back() == ' ' || tag.back() == '\t' || tag.back() == '\n')) tag.pop_back();
      splices.push_back(Splice{c->startBegin, c->startEnd,
                               tag + ">\n" + block + "\n" + taskIndent + "</" + c->qname + ">"});
    } else {
      std::size_t at = c->startEnd;
      for (const auto& d : c->children)
        if (d->is(kBpmnNs, "documentation")) at = d->endEnd;
      splices.push_back(Splice{at, at, "\n" + block});
    }
  }

  std::sort(splices.begin(), splices.end(), [](const Splice& a, const Splice& b) { return a.begin > b.begin; });
  for (const auto& s : splices) source.replace(s.begin, s.end - s.begin, s.text);
  out.document = std::move(source);
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationReport validate_structure(const std::string& document) {
  auto read = read_bpmn(document);
  const auto& g = read.graph;
  ValidationReport report;
  auto add = [&](std::string rule, Finding::Severity sev, std::string node, std::string msg) {
    report.findings.push_back(Finding{std::move(rule), sev, std::move(node), std::move(msg)});
  };
  const auto E = Finding::Severity::Error;

  std::map<std::string, int> in, out;
  for (const auto& e : g.edges) {
    ++out[e.sourceRef];
    ++in[e.targetRef];
  }

  // R1
  std::set<std::string> reached;
  std::deque<std::string> queue;
  for (const auto& [id, kind] : g.nodes)
    if (kind == NodeKind::StartEvent && reached.insert(id).second) queue.push_back(id);
  if (queue.empty()) add("R1", E, g.processId, "process has no start event");
  while (!queue.empty()) {
    auto n = queue.front();
    queue.pop_front();
    for (const auto& s : g.successors(n))
      if (reached.insert(s).second) queue.push_back(s);
  }
  for (const auto& [id, kind] : g.nodes)
    if (!reached.contains(id)) add("R1", E, id, "not reachable from any start event");

  // R2
  bool hasEnd = false;
  for (const auto& [id, kind] : g.nodes) {
    hasEnd |= kind == NodeKind::EndEvent;
    if (kind != NodeKind::EndEvent && out[id] == 0) add("R2", E, id, "no outgoing sequence flow");
    if (kind != NodeKind::StartEvent && in[id] == 0) add("R2", E, id, "no incoming sequence flow");
  }
  if (!hasEnd) add("R2", E, g.processId, "process has no end event");

  // R3
  for (const auto& e : read.danglingFlows) {
    std::string missing = g.nodes.contains(e.sourceRef) ? e.targetRef : e.sourceRef;
    add("R3", E, e.flowId, "sequence flow endpoint '" + missing + "' does not exist");
  }

  // R4
  for (const auto& [id, marker] : read.markers) {
    if (marker.unresolved) add("R4", E, id, "service task is marked unresolved");
    else if (!marker.hasBinding) add("R4", E, id, "service task has no service binding");
  }

  // R5
  for (const auto& [id, kind] : g.nodes) {
    if (kind != NodeKind::ExclusiveGateway && kind != NodeKind::ParallelGateway) continue;
    if (out[id] < 2 && in[id] < 2)
      add("R5", Finding::Severity::Warning, id, "gateway neither splits nor joins");
  }

  std::stable_sort(report.findings.begin(), report.findings.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.ruleId, a.nodeId) < std::tie(b.ruleId, b.nodeId);
  });
  return report;
}

// ---------------------------------------------------------------------------
// Turtle
// ---------------------------------------------------------------------------

namespace {

std::string turtleString(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string doubleLiteral(double v) { return "\"" + format_double(v) + "\"^^xsd:double"; }

// Percent-encodes everything outside [A-Za-z0-9_] so each component is a
// valid local name and '-' can separate components unambiguously.
std::string localPart(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out.empty() ? "_" : out;
}

template <class... Parts>
std::string iri(std::string_view prefix, std::string_view kind, const Parts&... parts) {
  std::string out = std::string(prefix) + ":" + std::string(kind);
  ((out += "-" + localPart(parts)), ...);
  return out;
}

// Subject -> list of (predicate, object) in insertion order.
class TurtleGraph {
 public:
  void add(const std::string& subject, const std::string& predicate, const std::string& object) {
    subjects_[subject].emplace_back(predicate, object);
  }

  std::string render(const std::string& prefixes, const std::vector<std::string>& schemaLines) const {
    std::string out = prefixes + "\n";
    for (const auto& l : schemaLines) out += l + "\n";
    for (const auto& [subject, pairs] : subjects_) {
      out += "\n" + subject;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        out += (i == 0 ? " " : " ;\n    ") + pairs[i].first + " " + pairs[i].second;
      }
      out += " .\n";
    }
    return out;
  }

 private:
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> subjects_;
};

const char* kCommonPrefixes =
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
    "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

std::vector<std::string> schemaDeclarations(const std::string& prefix, const std::vector<std::string>& classes,
                                            const std::vector<std::string>& objectProps,
                                            const std::vector<std::string>& dataProps) {
  std::vector<std::string> lines;
  for (const auto& c : classes) lines.push_back(prefix + ":" + c + " a owl:Class .");
  for (const auto& p : objectProps) lines.push_back(prefix + ":" + p + " a owl:ObjectProperty .");
  for (const auto& p : dataProps) lines.push_back(prefix + ":" + p + " a owl:DatatypeProperty .");
  return lines;
}

void addParam(TurtleGraph& g, const std::string& prefix, const std::string& subject, const Param& p) {
  g.add(subject, prefix + ":name", turtleString(p.name));
  g.add(subject, prefix + ":datatype", turtleString(p.type.name()));
}

}  // namespace

std::string export_wsonto(const ServiceRegistry& registry) {
  const std::string ws = "ws";
  TurtleGraph g;
  auto keywordIri = [](const std::string& stem) { return iri("wsi", "keyword", stem); };
  std::set<std::string> keywords;

  for (const auto& [key, cat] : registry.categories) {
    auto s = iri("wsi", "category", key);
    g.add(s, "a", "ws:Category");
    g.add(s, "ws:tModelKey", turtleString(key));
    g.add(s, "ws:name", turtleString(cat.record.name));
    g.add(s, "ws:description", turtleString(cat.record.description));
    for (const auto& k : cat.keywords) {
      g.add(s, "ws:hasKeyword", keywordIri(k));
      keywords.insert(k);
    }
  }
  for (const auto& [key, b] : registry.businesses) {
    auto s = iri("wsi", "business", key);
    g.add(s, "a", "ws:BusinessEntity");
    g.add(s, "ws:businessKey", turtleString(key));
    g.add(s, "ws:businessName", turtleString(b.businessName));
  }
  for (const auto& [key, svc] : registry.services) {
    auto s = iri("wsi", "service", key);
    const auto& r = svc.record;
    g.add(s, "a", "ws:Service");
    g.add(s, "ws:serviceKey", turtleString(key));
    g.add(s, "ws:name", turtleString(r.name));
    g.add(s, "ws:description", turtleString(r.description));
    g.add(s, "ws:wsdlLocation", turtleString(r.wsdlLocation));
    g.add(s, "ws:belongsToCategory", iri("wsi", "category", r.categoryKey));
    g.add(s, "ws:providedBy", iri("wsi", "business", r.businessKey));
    g.add(s, "ws:hasInterface", iri("wsi", "interface", key));
    g.add(s, "ws:securedBy", iri("wsi", "security", key));
    g.add(s, "ws:hasQoS", iri("wsi", "qos", key));
    for (const auto& op : svc.description.operations) g.add(s, "ws:hasOperation", iri("wsi", "operation", key, op.name));
    for (const auto& k : svc.keywords) {
      g.add(s, "ws:hasKeyword", keywordIri(k));
      keywords.insert(k);
    }

    auto itf = iri("wsi", "interface", key);
    g.add(itf, "a", "ws:Interface");
    g.add(itf, "ws:interfaceName", turtleString(svc.description.interfaceName));
    g.add(itf, "ws:endpointAddress", turtleString(svc.description.endpointAddress));

    auto sec = iri("wsi", "security", key);
    g.add(sec, "a", "ws:SecurityInfo");
    g.add(sec, "ws:transport", turtleString(to_string(r.security.transport)));
    g.add(sec, "ws:authentication", turtleString(to_string(r.security.authentication)));

    auto qos = iri("wsi", "qos", key);
    g.add(qos, "a", "ws:QoSRecord");
    g.add(qos, "ws:sampleCount", "\"" + std::to_string(svc.qos.sampleCount) + "\"^^xsd:nonNegativeInteger");
    for (const auto& [attrName, v] : svc.qos.values) g.add(qos, "ws:" + localPart(attrName), doubleLiteral(v));

    for (const auto& op : svc.description.operations) {
      auto o = iri("wsi", "operation", key, op.name);
      g.add(o, "a", "ws:Operation");
      g.add(o, "ws:name", turtleString(op.name));
      g.add(o, "ws:description", turtleString(op.description));
      for (const auto& p : op.inputs) {
        auto pi = iri("wsi", "input", key, op.name, p.name);
        g.add(o, "ws:hasInput", pi);
        g.add(pi, "a", "ws:Input");
        addParam(g, ws, pi, p);
      }
      for (const auto& p : op.outputs) {
        auto po = iri("wsi", "output", key, op.name, p.name);
        g.add(o, "ws:hasOutput", po);
        g.add(po, "a", "ws:Output");
        addParam(g, ws, po, p);
      }
    }
  }
  for (const auto& k : keywords) {
    g.add(keywordIri(k), "a", "ws:Keyword");
    g.add(keywordIri(k), "ws:stem", turtleString(k));
  }

  std::vector<std::string> dataProps = {"tModelKey",   "name",          "description", "businessKey",
                                        "businessName", "serviceKey",   "wsdlLocation", "interfaceName",
                                        "endpointAddress", "transport", "authentication", "sampleCount",
                                        "datatype",    "stem"};
  for (const auto& a : registry.schema.attributes) dataProps.push_back(localPart(a.name));
  std::string prefixes = std::string(kCommonPrefixes) + "@prefix ws: <urn:taskweave:wsonto#> .\n" +
                         "@prefix wsi: <urn:taskweave:wsonto/individual/> .\n";
  return g.render(prefixes,
                  schemaDeclarations(ws,
                                     {"Category", "BusinessEntity", "Service", "Operation", "Input", "Output",
                                      "QoSRecord", "Keyword", "SecurityInfo", "Interface"},
                                     {"hasOperation", "hasInput", "hasOutput", "belongsToCategory", "providedBy",
                                      "hasQoS", "hasKeyword", "securedBy", "hasInterface"},
                                     dataProps));
}

std::string export_bponto(const AnnotatedProcess& process) {
  TurtleGraph g;
  const auto& pid = process.graph.processId;
  auto proc = iri("bpi", "process", pid);
  g.add(proc, "a", "bp:Process");
  g.add(proc, "bp:processId", turtleString(pid));
  std::set<std::string> keywords;
  for (const auto& [taskId, spec] : process.specs) {
    auto t = iri("bpi", "task", taskId);
    g.add(proc, "bp:hasTask", t);
    g.add(t, "a", "bp:ServiceTask");
    g.add(t, "bp:taskId", turtleString(taskId));
    if (auto n = process.graph.nodeNames.find(taskId); n != process.graph.nodeNames.end())
      g.add(t, "bp:name", turtleString(n->second));
    g.add(t, "bp:objective", turtleString(spec.objective));
    for (const auto& p : spec.inputs) {
      auto pi = iri("bpi", "input", taskId, p.name);
      g.add(t, "bp:hasInput", pi);
      g.add(pi, "a", "bp:InputParam");
      addParam(g, "bp", pi, p);
    }
    for (const auto& p : spec.outputs) {
      auto po = iri("bpi", "output", taskId, p.name);
      g.add(t, "bp:hasOutput", po);
      g.add(po, "a", "bp:OutputParam");
      addParam(g, "bp", po, p);
    }
    for (const auto& [attrName, w] : spec.weights) {
      auto wi = iri("bpi", "weight", taskId, attrName);
      g.add(t, "bp:hasWeight", wi);
      g.add(wi, "a", "bp:WeightAssignment");
      g.add(wi, "bp:attribute", turtleString(attrName));
      g.add(wi, "bp:weight", doubleLiteral(w));
    }
    if (auto kw = process.taskKeywords.find(taskId); kw != process.taskKeywords.end()) {
      for (const auto& k : kw->second) {
        g.add(t, "bp:hasKeyword", iri("bpi", "keyword", k));
        keywords.insert(k);
      }
    }
  }
  for (const auto& k : keywords) {
    g.add(iri("bpi", "keyword", k), "a", "bp:Keyword");
    g.add(iri("bpi", "keyword", k), "bp:stem", turtleString(k));
  }
  std::string prefixes = std::string(kCommonPrefixes) + "@prefix bp: <urn:taskweave:bponto#> .\n" +
                         "@prefix bpi: <urn:taskweave:bponto/individual/> .\n";
  return g.render(prefixes,
                  schemaDeclarations("bp",
                                     {"Process", "ServiceTask", "InputParam", "OutputParam", "WeightAssignment",
                                      "Keyword"},
                                     {"hasTask", "hasInput", "hasOutput", "hasWeight", "hasKeyword"},
                                     {"processId", "taskId", "name", "objective", "datatype", "attribute", "weight",
                                      "stem"}));
}

}  // namespace taskweave
