#include "taskweave/consistency.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace taskweave {

namespace {

// Position in a widening chain; kinds in different chains never widen.
struct ChainPos {
  int chain;
  int rank;
};

ChainPos chainOf(SimpleKind k) {
  switch (k) {
    case SimpleKind::Integer: return {0, 0};
    case SimpleKind::Long: return {0, 1};
    case SimpleKind::Float: return {0, 2};
    case SimpleKind::Double: return {0, 3};
    case SimpleKind::Date: return {1, 0};
    case SimpleKind::DateTime: return {1, 1};
    case SimpleKind::Boolean: return {2, 0};
    case SimpleKind::String: return {3, 0};
  }
  return {-1, 0};
}

}  // namespace

bool widens(SimpleKind from, SimpleKind to) {
  auto a = chainOf(from);
  auto b = chainOf(to);
  return a.chain == b.chain && a.rank <= b.rank;
}

bool compatible_type(const DataType& out, const DataType& in, const text::SynonymLexicon& lexicon) {
  if (out.isSimple() != in.isSimple()) return false;
  if (out.isSimple()) return widens(*out.simple, *in.simple);
  return std::all_of(in.fields.begin(), in.fields.end(), [&](const Param& need) {
    return std::any_of(out.fields.begin(), out.fields.end(), [&](const Param& have) {
      return text::names_match(have.name, need.name, lexicon) && compatible_type(have.type, need.type, lexicon);
    });
  });
}

bool compatible_type(const DataType& out, const DataType& in) {
  static const text::SynonymLexicon empty;
  return compatible_type(out, in, empty);
}

std::string_view to_string(InconsistencyReport::Kind kind) {
  return kind == InconsistencyReport::Kind::TypeMismatch ? "typeMismatch" : "missingProvider";
}

namespace {

std::set<std::string> upstreamServiceTasks(const ProcessGraph& g, const std::string& task, UpstreamScope scope) {
  std::set<std::string> found;
  std::set<std::string> visited{task};
  std::deque<std::string> queue{task};
  while (!queue.empty()) {
    auto node = queue.front();
    queue.pop_front();
    for (const auto& pred : g.predecessors(node)) {
      if (!visited.insert(pred).second) continue;
      bool isService = g.nodes.at(pred) == NodeKind::ServiceTask;
      if (isService) found.insert(pred);
      if (!(isService && scope == UpstreamScope::Immediate)) queue.push_back(pred);
    }
  }
  found.erase(task);
  return found;
}

}  // namespace

std::vector<InconsistencyReport> check_flows(const AnnotatedProcess& process, const text::SynonymLexicon& lexicon,
                                             UpstreamScope scope) {
  std::vector<InconsistencyReport> reports;
  for (const auto& [taskId, spec] : process.specs) {
    auto providers = upstreamServiceTasks(process.graph, taskId, scope);
    for (const auto& input : spec.inputs) {
      bool provided = false;
      for (const auto& upstream : providers) {
        const auto& upSpec = process.specs.at(upstream);
        for (const auto& output : upSpec.outputs) {
          if (!text::names_match(output.name, input.name, lexicon)) continue;
          provided = true;
          if (!compatible_type(output.type, input.type, lexicon)) {
            reports.push_back(InconsistencyReport{upstream, taskId, input.name, output.type.name(),
                                                  input.type.name(), InconsistencyReport::Kind::TypeMismatch});
          }
        }
      }
      if (!provided) {
        reports.push_back(InconsistencyReport{"", taskId, input.name, "", input.type.name(),
                                              InconsistencyReport::Kind::MissingProvider});
      }
    }
  }
  return reports;
}

bool is_consistent(const std::vector<InconsistencyReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const auto& r) { return r.isError(); });
}

}  // namespace taskweave
