#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace taskweave {

enum class SimpleKind { Boolean, Integer, Long, Float, Double, String, Date, DateTime };

inline constexpr SimpleKind kAllSimpleKinds[] = {
    SimpleKind::Boolean, SimpleKind::Integer, SimpleKind::Long, SimpleKind::Float,
    SimpleKind::Double,  SimpleKind::String,  SimpleKind::Date, SimpleKind::DateTime};

std::string_view to_string(SimpleKind kind);
// Accepts the canonical names plus common XSD spellings (int, short, decimal...).
std::optional<SimpleKind> simple_kind_from_name(std::string_view name);

inline constexpr int kMaxTypeDepth = 8;

struct Param;

// Either a simple kind or a composition of named fields.
struct DataType {
  std::optional<SimpleKind> simple;
  std::vector<Param> fields;

  static DataType of(SimpleKind kind);
  static DataType complex(std::vector<Param> fields);

  bool isSimple() const { return simple.has_value(); }
  int depth() const;
  std::string name() const;  // "float" or "{a:string,b:integer}"

  bool operator==(const DataType& other) const;
};

struct Param {
  std::string name;
  DataType type;

  bool operator==(const Param& other) const = default;
};

enum class Direction { Maximize, Minimize };

struct QoSAttribute {
  std::string name;
  Direction direction = Direction::Maximize;
  std::string unit;

  bool operator==(const QoSAttribute&) const = default;
};

struct QoSSchema {
  std::vector<QoSAttribute> attributes;

  const QoSAttribute* find(std::string_view name) const;
  std::size_t maximizeCount() const;
  std::size_t minimizeCount() const;

  // latency_ms (min), reliability (max), throughput_rps (max), cost (min).
  static QoSSchema defaults();

  bool operator==(const QoSSchema&) const = default;
};

// Throws ValidationError on duplicate attribute names.
void validate_schema(const QoSSchema& schema);

struct QoSRecord {
  std::map<std::string, double> values;
  std::size_t sampleCount = 0;

  std::optional<double> get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const QoSRecord&) const = default;
};

std::string_view to_string(Direction d);

// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

}  // namespace taskweave
