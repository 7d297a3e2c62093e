#include "taskweave/types.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "taskweave/error.hpp"

namespace taskweave {

std::string_view to_string(SimpleKind kind) {
  switch (kind) {
    case SimpleKind::Boolean: return "boolean";
    case SimpleKind::Integer: return "integer";
    case SimpleKind::Long: return "long";
    case SimpleKind::Float: return "float";
    case SimpleKind::Double: return "double";
    case SimpleKind::String: return "string";
    case SimpleKind::Date: return "date";
    case SimpleKind::DateTime: return "dateTime";
  }
  return "?";
}

std::optional<SimpleKind> simple_kind_from_name(std::string_view name) {
  static const std::pair<std::string_view, SimpleKind> table[] = {
      {"boolean", SimpleKind::Boolean}, {"bool", SimpleKind::Boolean},
      {"integer", SimpleKind::Integer}, {"int", SimpleKind::Integer},
      {"short", SimpleKind::Integer},   {"byte", SimpleKind::Integer},
      {"unsignedShort", SimpleKind::Integer}, {"unsignedByte", SimpleKind::Integer},
      {"positiveInteger", SimpleKind::Integer}, {"nonNegativeInteger", SimpleKind::Integer},
      {"unsignedInt", SimpleKind::Long},
      {"long", SimpleKind::Long},       {"float", SimpleKind::Float},
      {"double", SimpleKind::Double},   {"decimal", SimpleKind::Double},
      {"string", SimpleKind::String},   {"token", SimpleKind::String},
      {"normalizedString", SimpleKind::String}, {"anyURI", SimpleKind::String},
      {"date", SimpleKind::Date},       {"dateTime", SimpleKind::DateTime},
  };
  for (const auto& [n, k] : table)
    if (n == name) return k;
  return std::nullopt;
}

DataType DataType::of(SimpleKind kind) {
  DataType t;
  t.simple = kind;
  return t;
}

DataType DataType::complex(std::vector<Param> fields) {
  DataType t;
  t.fields = std::move(fields);
  return t;
}

int DataType::depth() const {
  if (isSimple()) return 0;
  int deepest = 0;
  for (const auto& f : fields) deepest = std::max(deepest, f.type.depth());
  return deepest + 1;
}

std::string DataType::name() const {
  if (isSimple()) return std::string(to_string(*simple));
  std::string out = "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i].name + ':' + fields[i].type.name();
  }
  return out + '}';
}

bool DataType::operator==(const DataType& other) const {
  return simple == other.simple && fields == other.fields;
}

const QoSAttribute* QoSSchema::find(std::string_view name) const {
  for (const auto& a : attributes)
    if (a.name == name) return &a;
  return nullptr;
}

std::size_t QoSSchema::maximizeCount() const {
  return static_cast<std::size_t>(std::count_if(attributes.begin(), attributes.end(), [](const auto& a) {
    return a.direction == Direction::Maximize;
  }));
}

std::size_t QoSSchema::minimizeCount() const { return attributes.size() - maximizeCount(); }

QoSSchema QoSSchema::defaults() {
  return QoSSchema{{
      {"latency_ms", Direction::Minimize, "ms"},
      {"reliability", Direction::Maximize, "ratio"},
      {"throughput_rps", Direction::Maximize, "1/s"},
      {"cost", Direction::Minimize, "currency"},
  }};
}

void validate_schema(const QoSSchema& schema) {
  std::set<std::string> seen;
  for (const auto& a : schema.attributes) {
    if (a.name.empty()) throw ValidationError("QoS attribute with empty name");
    if (!seen.insert(a.name).second) throw ValidationError("duplicate QoS attribute: " + a.name);
  }
}

std::string_view to_string(Direction d) { return d == Direction::Maximize ? "maximize" : "minimize"; }

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace taskweave
