#pragma once

// Service selection for annotated service tasks.
//
// For every task the registry's operations are filtered by keyword overlap
// and classified by how their signature relates to the task's inputs and
// outputs (Exact > Plugin > Subsume > Intersection > Disjoint). Candidates
// that honour the task contract (Exact or Plugin) are ranked by the QoS
// utility
//
//   F = sum_max w_i * z_i + sum_min w_j * (1 - z_j),   z = (q - mean) / stddev
//
// where mean and population stddev are taken over the candidate set. The
// top candidate is bound; when no atomic candidate exists a shortest
// forward-chained composition is tried.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "taskweave/process.hpp"
#include "taskweave/registry.hpp"
#include "taskweave/text.hpp"
#include "taskweave/types.hpp"

namespace taskweave {

enum class MatchDegree { Disjoint = 0, Intersection = 1, Subsume = 2, Plugin = 3, Exact = 4 };

std::string_view to_string(MatchDegree d);
std::optional<MatchDegree> match_degree_from_name(std::string_view name);
inline bool is_bindable(MatchDegree d) { return d >= MatchDegree::Plugin; }

struct AttributeStats {
  double mean = 0;
  double stddev = 0;
  std::size_t count = 0;

  bool operator==(const AttributeStats&) const = default;
};

// Per-attribute mean and population standard deviation over a service class.
using CandidateStats = std::map<std::string, AttributeStats>;

struct MatchCandidate {
  std::string serviceKey;
  std::string operationName;
  MatchDegree degree = MatchDegree::Disjoint;
  double keywordScore = 0;
  double utility = 0;

  bool operator==(const MatchCandidate&) const = default;
};

struct PlanStep {
  std::string serviceKey;
  std::string operationName;

  bool operator==(const PlanStep&) const = default;
  auto operator<=>(const PlanStep&) const = default;
};

struct CompositePlan {
  std::vector<PlanStep> steps;
  std::vector<Param> producedParams;

  bool operator==(const CompositePlan&) const = default;
};

using Binding = std::variant<MatchCandidate, CompositePlan>;

struct BindingSet {
  std::string processId;
  std::map<std::string, Binding> bindings;
  std::vector<std::string> unresolved;

  bool operator==(const BindingSet&) const = default;
};

// Fraction of keywords shared between a task and a service, counting a task
// keyword as shared when it or one of its synonyms occurs on the service
// side. Equals the Jaccard index of the service set and the task set after
// each matched task keyword is replaced by the service keywords it reaches.
double keyword_score(const text::KeywordSet& taskKeywords, const text::KeywordSet& serviceKeywords,
                     const text::SynonymLexicon& lexicon);

MatchDegree io_degree(const TaskSpec& spec, const OperationSig& op, const text::SynonymLexicon& lexicon);

// Non-Disjoint operations whose service or category keywords reach `tau`.
// Utility is left at zero.
std::vector<MatchCandidate> candidate_set(const ServiceRegistry& registry, const TaskSpec& spec,
                                          const text::KeywordSet& taskKeywords,
                                          const text::SynonymLexicon& lexicon, double tau);

// Stats over the present values of each schema attribute. Identical values
// give stddev 0 exactly.
CandidateStats compute_stats(const std::vector<const QoSRecord*>& records, const QoSSchema& schema);

// z-terms are 0 when the attribute's stddev is 0 or the value is missing.
double utility_score(const QoSRecord& qos, const std::map<std::string, double>& weights,
                     const CandidateStats& stats, const QoSSchema& schema);

struct RankItem {
  MatchCandidate candidate;
  QoSRecord qos;
};

struct Ranking {
  std::vector<MatchCandidate> ordered;
  CandidateStats stats;
};

// Descending F; ties by degree, keyword score, then (serviceKey, operation).
bool rank_before(const MatchCandidate& a, const MatchCandidate& b);

Ranking rank_candidates(const std::vector<RankItem>& items, const std::map<std::string, double>& weights,
                        const QoSSchema& schema);

// Breadth-first forward chaining from the task inputs to its outputs.
// Returns the plan with the fewest steps (ties: lexicographically smallest
// step sequence), or nullopt when none exists within maxDepth or the task
// needs no step at all.
std::optional<CompositePlan> compose_chain(const ServiceRegistry& registry, const TaskSpec& spec,
                                           const text::SynonymLexicon& lexicon, int maxDepth = 3);

enum class StatsScope {
  Candidates,  // the task's filtered candidate set
  Category,    // all services of the candidate's category
};

struct MatchOptions {
  double tau = 0.2;
  int maxDepth = 3;
  StatsScope statsScope = StatsScope::Candidates;
};

struct TaskMatch {
  std::vector<MatchCandidate> candidates;  // bindable first, each group ranked
  CandidateStats stats;                    // stats of the bindable class
  std::size_t bindableCount = 0;
};

struct MatchResult {
  BindingSet bindings;
  std::map<std::string, TaskMatch> tasks;
};

MatchResult bind_process_tasks(const ServiceRegistry& registry, const AnnotatedProcess& process,
                               const text::SynonymLexicon& lexicon, const MatchOptions& options = {});

}  // namespace taskweave
