#include "taskweave/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <tuple>

#include "taskweave/consistency.hpp"
#include "taskweave/error.hpp"

namespace taskweave {

std::string_view to_string(MatchDegree d) {
  switch (d) {
    case MatchDegree::Exact: return "Exact";
    case MatchDegree::Plugin: return "Plugin";
    case MatchDegree::Subsume: return "Subsume";
    case MatchDegree::Intersection: return "Intersection";
    case MatchDegree::Disjoint: return "Disjoint";
  }
  return "?";
}

std::optional<MatchDegree> match_degree_from_name(std::string_view name) {
  for (auto d : {MatchDegree::Exact, MatchDegree::Plugin, MatchDegree::Subsume, MatchDegree::Intersection,
                 MatchDegree::Disjoint})
    if (to_string(d) == name) return d;
  return std::nullopt;
}

double keyword_score(const text::KeywordSet& taskKeywords, const text::KeywordSet& serviceKeywords,
                     const text::SynonymLexicon& lexicon) {
  std::set<std::string> covered;
  std::size_t unmatched = 0;
  for (const auto& t : taskKeywords) {
    bool hit = false;
    for (const auto& s : lexicon.expand(t)) {
      if (serviceKeywords.contains(s)) {
        covered.insert(s);
        hit = true;
      }
    }
    if (!hit) ++unmatched;
  }
  std::size_t denom = unmatched + serviceKeywords.size();
  if (denom == 0) return 0.0;
  return static_cast<double>(covered.size()) / static_cast<double>(denom);
}

namespace {

using ParamEdge = std::function<bool(const Param&, const Param&)>;

// Kuhn's augmenting-path matching; true iff a perfect matching exists.
bool perfectMatching(const std::vector<Param>& left, const std::vector<Param>& right, const ParamEdge& edge) {
  if (left.size() != right.size()) return false;
  std::vector<int> matchRight(right.size(), -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t l, std::vector<bool>& seen) {
    for (std::size_t r = 0; r < right.size(); ++r) {
      if (seen[r] || !edge(left[l], right[r])) continue;
      seen[r] = true;
      if (matchRight[r] < 0 || augment(static_cast<std::size_t>(matchRight[r]), seen)) {
        matchRight[r] = static_cast<int>(l);
        return true;
      }
    }
    return false;
  };
  for (std::size_t l = 0; l < left.size(); ++l) {
    std::vector<bool> seen(right.size(), false);
    if (!augment(l, seen)) return false;
  }
  return true;
}

bool coveredBy(const Param& need, const std::vector<Param>& pool, const ParamEdge& edge) {
  return std::any_of(pool.begin(), pool.end(), [&](const Param& have) { return edge(have, need); });
}

}  // namespace

MatchDegree io_degree(const TaskSpec& spec, const OperationSig& op, const text::SynonymLexicon& lexicon) {
  // Data flows from the task into the operation's inputs and from the
  // operation's outputs back into the task.
  ParamEdge feeds = [&](const Param& from, const Param& to) {
    return text::names_match(from.name, to.name, lexicon) && compatible_type(from.type, to.type, lexicon);
  };

  bool exactIn = perfectMatching(spec.inputs, op.inputs, feeds);
  bool exactOut = perfectMatching(op.outputs, spec.outputs, feeds);
  if (exactIn && exactOut) return MatchDegree::Exact;

  bool inputsCovered = std::all_of(op.inputs.begin(), op.inputs.end(),
                                   [&](const Param& q) { return coveredBy(q, spec.inputs, feeds); });
  bool outputsProvided = std::all_of(spec.outputs.begin(), spec.outputs.end(),
                                     [&](const Param& p) { return coveredBy(p, op.outputs, feeds); });
  if (inputsCovered && outputsProvided) return MatchDegree::Plugin;

  // Operation outputs that the task asked for.
  auto wanted = [&](const Param& q) {
    return std::any_of(spec.outputs.begin(), spec.outputs.end(), [&](const Param& p) { return feeds(q, p); });
  };
  std::size_t overlap = static_cast<std::size_t>(std::count_if(op.outputs.begin(), op.outputs.end(), wanted));
  if (overlap == 0) return MatchDegree::Disjoint;
  if (overlap == op.outputs.size() && !outputsProvided) return MatchDegree::Subsume;
  return MatchDegree::Intersection;
}

std::vector<MatchCandidate> candidate_set(const ServiceRegistry& registry, const TaskSpec& spec,
                                          const text::KeywordSet& taskKeywords,
                                          const text::SynonymLexicon& lexicon, double tau) {
  std::vector<MatchCandidate> out;
  for (const auto& [key, svc] : registry.services) {
    double score = keyword_score(taskKeywords, svc.keywords, lexicon);
    double categoryScore = 0;
    if (auto c = registry.categories.find(svc.record.categoryKey); c != registry.categories.end())
      categoryScore = keyword_score(taskKeywords, c->second.keywords, lexicon);
    if (score < tau && categoryScore < tau) continue;
    for (const auto& op : svc.description.operations) {
      auto degree = io_degree(spec, op, lexicon);
      if (degree == MatchDegree::Disjoint) continue;
      out.push_back(MatchCandidate{key, op.name, degree, std::max(score, categoryScore), 0.0});
    }
  }
  return out;
}

CandidateStats compute_stats(const std::vector<const QoSRecord*>& records, const QoSSchema& schema) {
  CandidateStats stats;
  for (const auto& attr : schema.attributes) {
    std::vector<double> xs;
    for (const auto* r : records)
      if (auto v = r->get(attr.name)) xs.push_back(*v);
    if (xs.empty()) continue;
    AttributeStats s;
    s.count = xs.size();
    bool constant = std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
    if (constant) {
      s.mean = xs.front();
      s.stddev = 0;
    } else {
      double sum = 0;
      for (double x : xs) sum += x;
      s.mean = sum / static_cast<double>(xs.size());
      double ss = 0;
      for (double x : xs) ss += (x - s.mean) * (x - s.mean);
      s.stddev = std::sqrt(ss / static_cast<double>(xs.size()));
    }
    stats.emplace(attr.name, s);
  }
  return stats;
}

double utility_score(const QoSRecord& qos, const std::map<std::string, double>& weights,
                     const CandidateStats& stats, const QoSSchema& schema) {
  double f = 0;
  for (const auto& attr : schema.attributes) {
    auto w = weights.find(attr.name);
    if (w == weights.end()) continue;
    double z = 0;
    auto s = stats.find(attr.name);
    auto q = qos.get(attr.name);
    if (q && s != stats.end() && s->second.stddev > 0) z = (*q - s->second.mean) / s->second.stddev;
    f += w->second * (attr.direction == Direction::Maximize ? z : 1.0 - z);
  }
  return f;
}

bool rank_before(const MatchCandidate& a, const MatchCandidate& b) {
  if (a.utility != b.utility) return a.utility > b.utility;
  if (a.degree != b.degree) return a.degree > b.degree;
  if (a.keywordScore != b.keywordScore) return a.keywordScore > b.keywordScore;
  return std::tie(a.serviceKey, a.operationName) < std::tie(b.serviceKey, b.operationName);
}

Ranking rank_candidates(const std::vector<RankItem>& items, const std::map<std::string, double>& weights,
                        const QoSSchema& schema) {
  Ranking r;
  std::vector<const QoSRecord*> records;
  records.reserve(items.size());
  for (const auto& it : items) records.push_back(&it.qos);
  r.stats = compute_stats(records, schema);
  for (const auto& it : items) {
    MatchCandidate c = it.candidate;
    c.utility = utility_score(it.qos, weights, r.stats, schema);
    r.ordered.push_back(std::move(c));
  }
  std::sort(r.ordered.begin(), r.ordered.end(), rank_before);
  return r;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

namespace {

struct ChainOp {
  PlanStep step;
  const OperationSig* sig;
};

std::string paramKey(const Param& p) {
  std::string k;
  for (const auto& part : text::name_key(p.name)) k += part + ' ';
  return k + ':' + p.type.name();
}

bool provides(const std::vector<Param>& available, const Param& need, const text::SynonymLexicon& lexicon) {
  return std::any_of(available.begin(), available.end(), [&](const Param& have) {
    return text::names_match(have.name, need.name, lexicon) && compatible_type(have.type, need.type, lexicon);
  });
}

bool providesAll(const std::vector<Param>& available, const std::vector<Param>& needs,
                 const text::SynonymLexicon& lexicon) {
  return std::all_of(needs.begin(), needs.end(),
                     [&](const Param& n) { return provides(available, n, lexicon); });
}

}  // namespace

std::optional<CompositePlan> compose_chain(const ServiceRegistry& registry, const TaskSpec& spec,
                                           const text::SynonymLexicon& lexicon, int maxDepth) {
  if (maxDepth < 1) throw ValidationError("maxDepth must be at least 1");
  if (providesAll(spec.inputs, spec.outputs, lexicon)) return std::nullopt;

  std::vector<ChainOp> ops;
  for (const auto& [key, svc] : registry.services)
    for (const auto& op : svc.description.operations) ops.push_back(ChainOp{PlanStep{key, op.name}, &op});
  std::sort(ops.begin(), ops.end(), [](const ChainOp& a, const ChainOp& b) { return a.step < b.step; });

  struct Node {
    std::vector<PlanStep> steps;
    std::vector<Param> available;
    std::set<std::string> keys;
  };
  Node start;
  start.available = spec.inputs;
  for (const auto& p : spec.inputs) start.keys.insert(paramKey(p));

  std::set<std::set<std::string>> visited{start.keys};
  std::vector<Node> frontier{start};
  for (int depth = 1; depth <= maxDepth && !frontier.empty(); ++depth) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      for (const auto& op : ops) {
        if (!providesAll(node.available, op.sig->inputs, lexicon)) continue;
        Node child;
        child.keys = node.keys;
        bool progress = false;
        for (const auto& out : op.sig->outputs) progress |= child.keys.insert(paramKey(out)).second;
        if (!progress || !visited.insert(child.keys).second) continue;
        child.steps = node.steps;
        child.steps.push_back(op.step);
        child.available = node.available;
        for (const auto& out : op.sig->outputs)
          if (std::none_of(child.available.begin(), child.available.end(),
                           [&](const Param& p) { return paramKey(p) == paramKey(out); }))
            child.available.push_back(out);
        if (providesAll(child.available, spec.outputs, lexicon))
          return CompositePlan{std::move(child.steps), std::move(child.available)};
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Binding
// ---------------------------------------------------------------------------

namespace {

std::vector<RankItem> withQos(const ServiceRegistry& registry, const std::vector<MatchCandidate>& cands) {
  std::vector<RankItem> items;
  for (const auto& c : cands) items.push_back(RankItem{c, registry.services.at(c.serviceKey).qos});
  return items;
}

Ranking rankByCategory(const ServiceRegistry& registry, const std::vector<MatchCandidate>& cands,
                       const std::map<std::string, double>& weights) {
  std::map<std::string, CandidateStats> perCategory;
  for (const auto& [key, cat] : registry.categories) {
    std::vector<const QoSRecord*> records;
    for (const auto& [sk, svc] : registry.services)
      if (svc.record.categoryKey == key) records.push_back(&svc.qos);
    perCategory.emplace(key, compute_stats(records, registry.schema));
  }
  Ranking r;
  for (auto c : cands) {
    const auto& svc = registry.services.at(c.serviceKey);
    c.utility = utility_score(svc.qos, weights, perCategory[svc.record.categoryKey], registry.schema);
    r.ordered.push_back(std::move(c));
  }
  std::sort(r.ordered.begin(), r.ordered.end(), rank_before);
  if (!r.ordered.empty()) r.stats = perCategory[registry.services.at(r.ordered.front().serviceKey).record.categoryKey];
  return r;
}

}  // namespace

MatchResult bind_process_tasks(const ServiceRegistry& registry, const AnnotatedProcess& process,
                               const text::SynonymLexicon& lexicon, const MatchOptions& options) {
  if (options.tau < 0 || options.tau > 1) throw ValidationError("tau must lie in [0,1]");
  MatchResult result;
  result.bindings.processId = process.graph.processId;
  for (const auto& [taskId, spec] : process.specs) {
    const auto& keywords = process.taskKeywords.at(taskId);
    auto cands = candidate_set(registry, spec, keywords, lexicon, options.tau);
    std::vector<MatchCandidate> bindable, rest;
    for (auto& c : cands) (is_bindable(c.degree) ? bindable : rest).push_back(std::move(c));

    auto rank = [&](const std::vector<MatchCandidate>& group) {
      return options.statsScope == StatsScope::Category ? rankByCategory(registry, group, spec.weights)
                                                        : rank_candidates(withQos(registry, group), spec.weights,
                                                                          registry.schema);
    };
    Ranking top = rank(bindable);
    Ranking other = rank(rest);

    TaskMatch tm;
    tm.bindableCount = top.ordered.size();
    tm.stats = top.stats;
    tm.candidates = top.ordered;
    tm.candidates.insert(tm.candidates.end(), other.ordered.begin(), other.ordered.end());

    if (!top.ordered.empty()) {
      result.bindings.bindings.emplace(taskId, top.ordered.front());
    } else if (auto plan = compose_chain(registry, spec, lexicon, options.maxDepth)) {
      result.bindings.bindings.emplace(taskId, std::move(*plan));
    } else {
      result.bindings.unresolved.push_back(taskId);
    }
    result.tasks.emplace(taskId, std::move(tm));
  }
  return result;
}

}  // namespace taskweave
