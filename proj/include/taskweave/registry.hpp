#pragma once

// Service catalog ingest: WSDL 1.1 descriptions, the UDDI-style registry
// manifest and execution logs, combined into an immutable ServiceRegistry.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taskweave/text.hpp"
#include "taskweave/types.hpp"

namespace taskweave {

template <class T>
struct Parsed {
  T value;
  std::vector<std::string> warnings;
};

struct CategoryRecord {
  std::string tModelKey;
  std::string name;
  std::string description;

  bool operator==(const CategoryRecord&) const = default;
};

struct BusinessEntity {
  std::string businessKey;
  std::string businessName;

  bool operator==(const BusinessEntity&) const = default;
};

enum class Transport { None, Tls };
enum class Authentication { None, Basic, Token };

struct SecurityInfo {
  Transport transport = Transport::None;
  Authentication authentication = Authentication::None;

  bool operator==(const SecurityInfo&) const = default;
};

std::string_view to_string(Transport t);
std::string_view to_string(Authentication a);

struct ServiceRecord {
  std::string serviceKey;
  std::string businessKey;
  std::string name;
  std::string description;
  std::string categoryKey;
  std::string wsdlLocation;
  SecurityInfo security;
  std::optional<double> cost;

  bool operator==(const ServiceRecord&) const = default;
};

struct RegistryManifest {
  std::vector<CategoryRecord> categories;
  std::vector<BusinessEntity> businessEntities;
  std::vector<ServiceRecord> services;

  bool operator==(const RegistryManifest&) const = default;
};

struct OperationSig {
  std::string name;
  std::string description;
  std::vector<Param> inputs;
  std::vector<Param> outputs;

  bool operator==(const OperationSig&) const = default;
};

struct ServiceDescription {
  std::vector<OperationSig> operations;
  std::string endpointAddress;
  std::string interfaceName;

  const OperationSig* find(std::string_view operation) const;
  bool operator==(const ServiceDescription&) const = default;
};

struct ExecutionLogLine {
  std::string ts;
  std::string serviceKey;
  std::string operation;
  double durationMs = 0;
  bool success = false;
};

struct QoSAggregate {
  std::map<std::string, QoSRecord> records;
  std::size_t skippedLines = 0;
};

struct CategoryEntry {
  CategoryRecord record;
  text::KeywordSet keywords;

  bool operator==(const CategoryEntry&) const = default;
};

struct ServiceEntry {
  ServiceRecord record;
  ServiceDescription description;
  QoSRecord qos;
  text::KeywordSet keywords;

  bool operator==(const ServiceEntry&) const = default;
};

// Immutable once built; share it as std::shared_ptr<const ServiceRegistry>.
struct ServiceRegistry {
  std::map<std::string, CategoryEntry> categories;
  std::map<std::string, BusinessEntity> businesses;
  std::map<std::string, ServiceEntry> services;
  QoSSchema schema;

  const ServiceEntry* service(std::string_view key) const;
  bool operator==(const ServiceRegistry&) const = default;
};

inline constexpr std::string_view kWsdlNs = "http://schemas.xmlsoap.org/wsdl/";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema";
inline constexpr std::string_view kSoapNs = "http://schemas.xmlsoap.org/wsdl/soap/";
inline constexpr std::string_view kSoap12Ns = "http://schemas.xmlsoap.org/wsdl/soap12/";

// Throws ParseError on malformed XML or a non-WSDL root, ReferenceError for
// operations that reference undefined messages or types.
Parsed<ServiceDescription> parse_wsdl(const std::string& document);

// Throws ParseError, DuplicateKeyError or ReferenceError.
RegistryManifest parse_manifest(const std::string& document);

// JSON Lines; lines that are not valid JSON objects are counted in
// `skippedLines` of the later aggregate via the returned warning count.
Parsed<std::vector<ExecutionLogLine>> parse_execution_log(std::string_view content);

// Milliseconds since the Unix epoch for "YYYY-MM-DDThh:mm:ss[.fff](Z|+hh:mm)".
std::optional<std::int64_t> parse_iso8601(std::string_view ts);

QoSAggregate aggregate_qos(const std::vector<ExecutionLogLine>& lines, const QoSSchema& schema);

ServiceRegistry build_registry(const RegistryManifest& manifest,
                               const std::map<std::string, ServiceDescription>& wsdls,
                               const std::map<std::string, QoSRecord>& qos, const QoSSchema& schema,
                               const text::SynonymLexicon& lexicon,
                               const text::StopWords& stopWords = text::StopWords::defaults());

}  // namespace taskweave
