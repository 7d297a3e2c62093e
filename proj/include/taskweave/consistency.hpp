#pragma once

#include <string>
#include <vector>

#include "taskweave/process.hpp"
#include "taskweave/text.hpp"
#include "taskweave/types.hpp"

namespace taskweave {

// Widening between simple kinds: integer -> long -> float -> double and
// date -> dateTime, closed under reflexivity and transitivity. No kind
// widens to or from string or boolean.
bool widens(SimpleKind from, SimpleKind to);

// Whether a value of type `out` can feed a parameter of type `in`. Complex
// types match structurally: every field of `in` needs a name-matching,
// compatible field in `out`. Simple never matches complex.
bool compatible_type(const DataType& out, const DataType& in, const text::SynonymLexicon& lexicon);
bool compatible_type(const DataType& out, const DataType& in);

struct InconsistencyReport {
  enum class Kind { TypeMismatch, MissingProvider };

  std::string upstreamTask;  // empty for MissingProvider
  std::string downstreamTask;
  std::string paramName;
  std::string outputType;  // empty for MissingProvider
  std::string inputType;
  Kind kind = Kind::TypeMismatch;

  // Missing providers are process-boundary inputs and only informational.
  bool isError() const { return kind == Kind::TypeMismatch; }
  bool operator==(const InconsistencyReport&) const = default;
};

std::string_view to_string(InconsistencyReport::Kind kind);

enum class UpstreamScope {
  AllAncestors,  // every service task on a directed path into the consumer
  Immediate,     // nearest upstream service tasks only
};

std::vector<InconsistencyReport> check_flows(const AnnotatedProcess& process, const text::SynonymLexicon& lexicon,
                                             UpstreamScope scope = UpstreamScope::AllAncestors);

bool is_consistent(const std::vector<InconsistencyReport>& reports);

}  // namespace taskweave
