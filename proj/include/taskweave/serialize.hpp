#pragma once

// JSON forms of the domain types. Snapshot forms round-trip exactly
// (doubles included); response-only forms have no reader.

#include <json.hpp>

#include "taskweave/consistency.hpp"
#include "taskweave/emitter.hpp"
#include "taskweave/matcher.hpp"
#include "taskweave/process.hpp"
#include "taskweave/registry.hpp"

namespace taskweave {

using nlohmann::json;

void to_json(json& j, const DataType& t);
void from_json(const json& j, DataType& t);
void to_json(json& j, const Param& p);
void from_json(const json& j, Param& p);
void to_json(json& j, const QoSSchema& s);
void from_json(const json& j, QoSSchema& s);
void to_json(json& j, const QoSRecord& r);
void from_json(const json& j, QoSRecord& r);

void to_json(json& j, const ServiceRegistry& r);
void from_json(const json& j, ServiceRegistry& r);

void to_json(json& j, const ProcessGraph& g);
void from_json(const json& j, ProcessGraph& g);
void to_json(json& j, const TaskSpec& s);
void from_json(const json& j, TaskSpec& s);
void to_json(json& j, const AnnotatedProcess& p);
void from_json(const json& j, AnnotatedProcess& p);

void to_json(json& j, const MatchCandidate& c);
void from_json(const json& j, MatchCandidate& c);
void to_json(json& j, const BindingSet& b);
void from_json(const json& j, BindingSet& b);

void to_json(json& j, const SpecError& e);
void to_json(json& j, const InconsistencyReport& r);
void to_json(json& j, const Finding& f);
void to_json(json& j, const ValidationReport& r);
void to_json(json& j, const CandidateStats& s);

// Sidecar form of a spec: inline-object complex types, as the analyst writes them.
json spec_to_sidecar(const TaskSpec& spec);

}  // namespace taskweave
