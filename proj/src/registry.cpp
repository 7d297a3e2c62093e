#include "taskweave/registry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "taskweave/error.hpp"
#include "taskweave/xml.hpp"

namespace taskweave {

using nlohmann::json;

std::string_view to_string(Transport t) { return t == Transport::Tls ? "tls" : "none"; }

std::string_view to_string(Authentication a) {
  switch (a) {
    case Authentication::Basic: return "basic";
    case Authentication::Token: return "token";
    default: return "none";
  }
}

const OperationSig* ServiceDescription::find(std::string_view operation) const {
  for (const auto& op : operations)
    if (op.name == operation) return &op;
  return nullptr;
}

const ServiceEntry* ServiceRegistry::service(std::string_view key) const {
  auto it = services.find(std::string(key));
  return it == services.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// WSDL
// ---------------------------------------------------------------------------

namespace {

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

class WsdlReader {
 public:
  explicit WsdlReader(const xml::Element& root) : root_(root) {
    for (const auto* types : root_.childrenNamed(kWsdlNs, "types")) {
      for (const auto* schema : types->childrenNamed(kXsdNs, "schema")) {
        for (const auto& c : schema->children) {
          auto name = c->attr("name");
          if (!name) continue;
          if (c->is(kXsdNs, "element")) elements_[*name] = c.get();
          else if (c->is(kXsdNs, "complexType")) complexTypes_[*name] = c.get();
          else if (c->is(kXsdNs, "simpleType")) simpleTypes_[*name] = c.get();
        }
      }
    }
    for (const auto* msg : root_.childrenNamed(kWsdlNs, "message"))
      if (auto name = msg->attr("name")) messages_[*name] = msg;
  }

  Parsed<ServiceDescription> read() {
    Parsed<ServiceDescription> out;
    for (const auto* imp : root_.childrenNamed(kWsdlNs, "import"))
      warn("wsdl:import of '" + imp->attr("location").value_or("?") + "' skipped");
    for (const auto* types : root_.childrenNamed(kWsdlNs, "types"))
      for (const auto* schema : types->childrenNamed(kXsdNs, "schema"))
        for (const auto* imp : schema->childrenNamed(kXsdNs, "import"))
          if (imp->attr("schemaLocation")) warn("xsd:import of '" + *imp->attr("schemaLocation") + "' skipped");

    auto& desc = out.value;
    std::set<std::string> seen;
    for (const auto* portType : root_.childrenNamed(kWsdlNs, "portType")) {
      if (desc.interfaceName.empty()) desc.interfaceName = portType->attr("name").value_or("");
      for (const auto* opEl : portType->childrenNamed(kWsdlNs, "operation")) {
        OperationSig op;
        op.name = opEl->attr("name").value_or("");
        if (op.name.empty()) throw ParseError("portType operation without a name", opEl->line, opEl->column);
        if (!seen.insert(op.name).second) {
          warn("duplicate operation '" + op.name + "' skipped");
          continue;
        }
        if (const auto* doc = opEl->child(kWsdlNs, "documentation")) op.description = trimmed(doc->text);
        if (const auto* in = opEl->child(kWsdlNs, "input")) op.inputs = messageParams(*in);
        if (const auto* o = opEl->child(kWsdlNs, "output")) op.outputs = messageParams(*o);
        desc.operations.push_back(std::move(op));
      }
    }
    if (desc.operations.empty()) warn("WSDL declares no operations");

    for (const auto* binding : root_.childrenNamed(kWsdlNs, "binding"))
      for (const auto* bop : binding->childrenNamed(kWsdlNs, "operation"))
        for (const auto& io : bop->children)
          for (const auto& ext : io->children)
            if (ext->local == "header" && (ext->ns == kSoapNs || ext->ns == kSoap12Ns))
              warn("SOAP header on operation '" + bop->attr("name").value_or("?") + "' skipped");

    for (const auto* svc : root_.childrenNamed(kWsdlNs, "service")) {
      for (const auto* port : svc->childrenNamed(kWsdlNs, "port")) {
        const auto* addr = port->child(kSoapNs, "address");
        if (addr == nullptr) addr = port->child(kSoap12Ns, "address");
        if (addr != nullptr) {
          desc.endpointAddress = addr->attr("location").value_or("");
          break;
        }
      }
      if (!desc.endpointAddress.empty()) break;
    }
    if (desc.endpointAddress.empty()) warn("no SOAP endpoint address found");
    out.warnings = std::move(warnings_);
    return out;
  }

 private:
  void warn(std::string w) { warnings_.push_back(std::move(w)); }

  std::vector<Param> messageParams(const xml::Element& ioEl) {
    auto ref = ioEl.attr("message");
    if (!ref) throw ParseError("operation input/output without message attribute", ioEl.line, ioEl.column);
    auto qn = ioEl.resolve(*ref);
    auto it = messages_.find(qn.local);
    if (it == messages_.end()) throw ReferenceError(qn.local, "undefined message");
    std::vector<Param> params;
    for (const auto* part : it->second->childrenNamed(kWsdlNs, "part")) {
      auto partName = part->attr("name").value_or("");
      if (auto elementRef = part->attr("element")) {
        auto eq = part->resolve(*elementRef);
        auto el = elements_.find(eq.local);
        if (el == elements_.end()) throw ReferenceError(eq.local, "undefined element");
        DataType t = elementType(*el->second, 1);
        // Document-literal wrapped: the wrapper element's fields are the params.
        if (t.isSimple()) params.push_back(Param{eq.local, std::move(t)});
        else for (auto& f : t.fields) params.push_back(std::move(f));
      } else if (auto typeRef = part->attr("type")) {
        params.push_back(Param{partName, resolveType(*part, *typeRef, 1)});
      } else {
        throw ParseError("message part '" + partName + "' has neither element nor type", part->line, part->column);
      }
    }
    for (const auto& p : params)
      if (trimmed(p.name).empty()) throw ParseError("parameter with empty name in message " + qn.local);
    return params;
  }

  static void checkDepth(int depth) {
    if (depth > kMaxTypeDepth) throw ParseError("complex type nesting exceeds depth " + std::to_string(kMaxTypeDepth));
  }

  DataType resolveType(const xml::Element& context, const std::string& ref, int depth) {
    auto qn = context.resolve(ref);
    if (qn.ns == kXsdNs) {
      if (auto k = simple_kind_from_name(qn.local)) return DataType::of(*k);
      throw ReferenceError(ref, "unsupported XSD type");
    }
    if (auto it = complexTypes_.find(qn.local); it != complexTypes_.end())
      return complexType(*it->second, depth);
    if (auto it = simpleTypes_.find(qn.local); it != simpleTypes_.end())
      return simpleType(*it->second);
    if (auto k = simple_kind_from_name(qn.local); k && qn.ns.empty()) return DataType::of(*k);
    throw ReferenceError(ref, "undefined type");
  }

  DataType simpleType(const xml::Element& st) {
    if (const auto* r = st.child(kXsdNs, "restriction"))
      if (auto base = r->attr("base")) return resolveType(*r, *base, 0);
    return DataType::of(SimpleKind::String);
  }

  DataType elementType(const xml::Element& el, int depth) {
    if (auto ref = el.attr("ref")) {
      auto qn = el.resolve(*ref);
      auto it = elements_.find(qn.local);
      if (it == elements_.end()) throw ReferenceError(qn.local, "undefined element");
      return elementType(*it->second, depth);
    }
    if (auto type = el.attr("type")) return resolveType(el, *type, depth);
    if (const auto* ct = el.child(kXsdNs, "complexType")) return complexType(*ct, depth);
    if (const auto* st = el.child(kXsdNs, "simpleType")) return simpleType(*st);
    return DataType::of(SimpleKind::String);
  }

  void collectFields(const xml::Element& group, int depth, std::vector<Param>& fields) {
    for (const auto& c : group.children) {
      if (c->is(kXsdNs, "element")) {
        std::string name = c->attr("name").value_or("");
        if (name.empty())
          if (auto ref = c->attr("ref")) name = c->resolve(*ref).local;
        DataType t = elementType(*c, depth + 1);
        fields.push_back(Param{name, std::move(t)});
      } else if (c->is(kXsdNs, "sequence") || c->is(kXsdNs, "all") || c->is(kXsdNs, "choice")) {
        collectFields(*c, depth, fields);
      }
    }
  }

  DataType complexType(const xml::Element& ct, int depth) {
    checkDepth(depth);
    std::vector<Param> fields;
    if (const auto* cc = ct.child(kXsdNs, "complexContent")) {
      for (const auto& derivation : cc->children) {
        if (auto base = derivation->attr("base"); base && derivation->is(kXsdNs, "extension")) {
          DataType b = resolveType(*derivation, *base, depth);
          if (!b.isSimple()) fields = b.fields;
        }
        collectFields(*derivation, depth, fields);
      }
    }
    collectFields(ct, depth, fields);
    return DataType::complex(std::move(fields));
  }

  const xml::Element& root_;
  std::map<std::string, const xml::Element*> elements_;
  std::map<std::string, const xml::Element*> complexTypes_;
  std::map<std::string, const xml::Element*> simpleTypes_;
  std::map<std::string, const xml::Element*> messages_;
  std::vector<std::string> warnings_;
};

// A Complex type needs at least one field.
void checkParams(const std::vector<Param>& params, const std::string& op) {
  for (const auto& p : params)
    if (!p.type.isSimple() && p.type.fields.empty())
      throw ParseError("parameter '" + p.name + "' of operation '" + op + "' has an empty complex type");
}

}  // namespace

Parsed<ServiceDescription> parse_wsdl(const std::string& document) {
  auto doc = xml::parse(document);
  if (!doc.root->is(kWsdlNs, "definitions"))
    throw ParseError("root element is not a WSDL 1.1 <definitions>", doc.root->line, doc.root->column);
  WsdlReader reader(*doc.root);
  auto out = reader.read();
  for (const auto& op : out.value.operations) {
    checkParams(op.inputs, op.name);
    checkParams(op.outputs, op.name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

namespace {

ParseError jsonParseError(const json::parse_error& e, const std::string& document) {
  std::size_t line = 1, col = 1;
  std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, document.size());
  for (std::size_t i = 0; i < upto; ++i) {
    if (document[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return ParseError("malformed JSON", line, col);
}

std::string requireString(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw ParseError(where + ": missing or non-string field '" + key + "'");
  return it->get<std::string>();
}

std::string optionalString(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

const json& requireArray(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) throw ParseError(std::string("manifest: missing array '") + key + "'");
  return *it;
}

}  // namespace

RegistryManifest parse_manifest(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw jsonParseError(e, document);
  }
  if (!j.is_object()) throw ParseError("manifest must be a JSON object");

  RegistryManifest m;
  std::set<std::string> categoryKeys, businessKeys, serviceKeys;
  for (const auto& c : requireArray(j, "categories")) {
    if (!c.is_object()) throw ParseError("manifest: category entry must be an object");
    CategoryRecord r{requireString(c, "tModelKey", "category"), optionalString(c, "name", "category"),
                     optionalString(c, "description", "category")};
    if (!categoryKeys.insert(r.tModelKey).second) throw DuplicateKeyError(r.tModelKey);
    m.categories.push_back(std::move(r));
  }
  for (const auto& b : requireArray(j, "businessEntities")) {
    if (!b.is_object()) throw ParseError("manifest: business entry must be an object");
    BusinessEntity r{requireString(b, "businessKey", "businessEntity"),
                     optionalString(b, "businessName", "businessEntity")};
    if (!businessKeys.insert(r.businessKey).second) throw DuplicateKeyError(r.businessKey);
    m.businessEntities.push_back(std::move(r));
  }
  for (const auto& s : requireArray(j, "services")) {
    if (!s.is_object()) throw ParseError("manifest: service entry must be an object");
    ServiceRecord r;
    r.serviceKey = requireString(s, "serviceKey", "service");
    std::string where = "service " + r.serviceKey;
    r.businessKey = requireString(s, "businessKey", where);
    r.name = requireString(s, "name", where);
    r.description = optionalString(s, "description", where);
    r.categoryKey = requireString(s, "categoryKey", where);
    r.wsdlLocation = optionalString(s, "wsdl", where);
    if (r.wsdlLocation.empty()) throw ParseError(where + ": missing wsdl location");
    if (auto sec = s.find("security"); sec != s.end() && !sec->is_null()) {
      if (!sec->is_object()) throw ParseError(where + ": security must be an object");
      auto transport = optionalString(*sec, "transport", where);
      auto auth = optionalString(*sec, "authentication", where);
      if (transport == "tls") r.security.transport = Transport::Tls;
      else if (!transport.empty() && transport != "none") throw ParseError(where + ": unknown transport '" + transport + "'");
      if (auth == "basic") r.security.authentication = Authentication::Basic;
      else if (auth == "token") r.security.authentication = Authentication::Token;
      else if (!auth.empty() && auth != "none") throw ParseError(where + ": unknown authentication '" + auth + "'");
    }
    if (auto cost = s.find("cost"); cost != s.end() && !cost->is_null()) {
      if (!cost->is_number()) throw ParseError(where + ": cost must be a number");
      double c = cost->get<double>();
      if (!std::isfinite(c) || c < 0) throw ParseError(where + ": cost must be a non-negative number");
      r.cost = c;
    }
    if (!serviceKeys.insert(r.serviceKey).second) throw DuplicateKeyError(r.serviceKey);
    m.services.push_back(std::move(r));
  }
  for (const auto& s : m.services) {
    if (!businessKeys.contains(s.businessKey)) throw ReferenceError(s.businessKey, "unknown businessKey");
    if (!categoryKeys.contains(s.categoryKey)) throw ReferenceError(s.categoryKey, "unknown categoryKey");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Execution logs
// ---------------------------------------------------------------------------

std::optional<std::int64_t> parse_iso8601(std::string_view ts) {
  auto digits = [&](std::size_t at, std::size_t n) -> std::optional<int> {
    if (at + n > ts.size()) return std::nullopt;
    int v = 0;
    for (std::size_t i = at; i < at + n; ++i) {
      if (ts[i] < '0' || ts[i] > '9') return std::nullopt;
      v = v * 10 + (ts[i] - '0');
    }
    return v;
  };
  auto year = digits(0, 4), month = digits(5, 2), day = digits(8, 2);
  auto hour = digits(11, 2), minute = digits(14, 2), second = digits(17, 2);
  if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;
  if (ts[4] != '-' || ts[7] != '-' || (ts[10] != 'T' && ts[10] != 't' && ts[10] != ' ') || ts[13] != ':' ||
      ts[16] != ':')
    return std::nullopt;
  if (*month < 1 || *month > 12 || *day < 1 || *day > 31 || *hour > 23 || *minute > 59 || *second > 60)
    return std::nullopt;
  std::size_t pos = 19;
  std::int64_t millis = 0;
  if (pos < ts.size() && ts[pos] == '.') {
    ++pos;
    int scale = 100, n = 0;
    while (pos < ts.size() && ts[pos] >= '0' && ts[pos] <= '9') {
      millis += (ts[pos] - '0') * scale;
      scale /= 10;
      ++pos;
      ++n;
    }
    if (n == 0) return std::nullopt;
  }
  std::int64_t offsetMinutes = 0;
  if (pos < ts.size() && (ts[pos] == 'Z' || ts[pos] == 'z')) {
    ++pos;
  } else if (pos < ts.size() && (ts[pos] == '+' || ts[pos] == '-')) {
    int sign = ts[pos] == '+' ? 1 : -1;
    auto oh = digits(pos + 1, 2), om = digits(pos + 4, 2);
    if (!oh || !om || ts[pos + 3] != ':') return std::nullopt;
    offsetMinutes = sign * (*oh * 60 + *om);
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != ts.size()) return std::nullopt;

  // Days from civil (proleptic Gregorian).
  int y = *year - (*month <= 2 ? 1 : 0);
  int era = (y >= 0 ? y : y - 399) / 400;
  int yoe = y - era * 400;
  int mp = (*month + 9) % 12;
  int doy = (153 * mp + 2) / 5 + *day - 1;
  int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  std::int64_t days = static_cast<std::int64_t>(era) * 146097 + doe - 719468;
  std::int64_t secs = days * 86400 + *hour * 3600 + *minute * 60 + *second - offsetMinutes * 60;
  return secs * 1000 + millis;
}

Parsed<std::vector<ExecutionLogLine>> parse_execution_log(std::string_view content) {
  Parsed<std::vector<ExecutionLogLine>> out;
  std::size_t lineNo = 0;
  while (!content.empty()) {
    ++lineNo;
    auto nl = content.find('\n');
    std::string line = trimmed(content.substr(0, nl));
    content = nl == std::string_view::npos ? std::string_view() : content.substr(nl + 1);
    if (line.empty()) continue;
    auto j = json::parse(line, nullptr, false);
    try {
      if (j.is_discarded() || !j.is_object()) throw std::runtime_error("not a JSON object");
      ExecutionLogLine l;
      l.ts = j.at("ts").get<std::string>();
      l.serviceKey = j.at("serviceKey").get<std::string>();
      l.operation = j.value("operation", std::string());
      l.durationMs = j.at("duration_ms").get<double>();
      l.success = j.at("success").get<bool>();
      out.value.push_back(std::move(l));
    } catch (const std::exception& e) {
      out.warnings.push_back("log line " + std::to_string(lineNo) + " skipped: " + e.what());
    }
  }
  return out;
}

QoSAggregate aggregate_qos(const std::vector<ExecutionLogLine>& lines, const QoSSchema& schema) {
  struct Acc {
    std::size_t total = 0;
    std::size_t successes = 0;
    double successDuration = 0;
    std::int64_t first = 0;
    std::int64_t last = 0;
  };
  QoSAggregate out;
  std::map<std::string, Acc> acc;
  for (const auto& l : lines) {
    auto t = parse_iso8601(l.ts);
    if (!t || !std::isfinite(l.durationMs) || l.durationMs < 0 || l.serviceKey.empty()) {
      ++out.skippedLines;
      continue;
    }
    auto [it, fresh] = acc.try_emplace(l.serviceKey);
    Acc& a = it->second;
    if (fresh) a.first = a.last = *t;
    a.first = std::min(a.first, *t);
    a.last = std::max(a.last, *t);
    ++a.total;
    if (l.success) {
      ++a.successes;
      a.successDuration += l.durationMs;
    }
  }
  for (const auto& [key, a] : acc) {
    QoSRecord r;
    r.sampleCount = a.total;
    if (schema.find("latency_ms") && a.successes > 0)
      r.values["latency_ms"] = a.successDuration / static_cast<double>(a.successes);
    if (schema.find("reliability"))
      r.values["reliability"] = static_cast<double>(a.successes) / static_cast<double>(a.total);
    double spanSeconds = static_cast<double>(a.last - a.first) / 1000.0;
    if (schema.find("throughput_rps") && a.total > 1 && spanSeconds > 0)
      r.values["throughput_rps"] = static_cast<double>(a.total) / spanSeconds;
    out.records.emplace(key, std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

ServiceRegistry build_registry(const RegistryManifest& manifest,
                               const std::map<std::string, ServiceDescription>& wsdls,
                               const std::map<std::string, QoSRecord>& qos, const QoSSchema& schema,
                               const text::SynonymLexicon& lexicon, const text::StopWords& stopWords) {
  validate_schema(schema);
  ServiceRegistry reg;
  reg.schema = schema;
  for (const auto& b : manifest.businessEntities) reg.businesses.emplace(b.businessKey, b);

  std::map<std::string, std::string> categoryText;
  for (const auto& c : manifest.categories) categoryText[c.tModelKey] = c.description;

  for (const auto& s : manifest.services) {
    auto wsdl = wsdls.find(s.serviceKey);
    if (wsdl == wsdls.end()) throw MissingDescriptionError(s.serviceKey);

    ServiceEntry e;
    e.record = s;
    e.description = wsdl->second;
    if (auto q = qos.find(s.serviceKey); q != qos.end()) {
      e.qos.sampleCount = q->second.sampleCount;
      for (const auto& [name, v] : q->second.values)
        if (schema.find(name) && std::isfinite(v)) e.qos.values[name] = v;
    }
    if (s.cost && schema.find("cost")) e.qos.values["cost"] = *s.cost;

    std::string info = s.description + "\n" + s.name;
    for (const auto& op : e.description.operations) {
      info += "\n" + op.name + "\n" + op.description;
      for (const auto& p : op.inputs) info += "\n" + p.name;
      for (const auto& p : op.outputs) info += "\n" + p.name;
    }
    e.keywords = text::extract_keywords(info, stopWords, lexicon);

    auto& ct = categoryText[s.categoryKey];
    ct += "\n" + s.name + "\n" + s.description;
    reg.services.emplace(s.serviceKey, std::move(e));
  }
  for (const auto& c : manifest.categories)
    reg.categories.emplace(c.tModelKey,
                           CategoryEntry{c, text::extract_keywords(categoryText[c.tModelKey], stopWords, lexicon)});
  return reg;
}

}  // namespace taskweave
