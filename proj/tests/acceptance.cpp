// Acceptance gate: one line per criterion, nonzero exit when any fails.
//
// Every check compares the library against an oracle written here from the
// definitions alone (set relations, brute-force statistics, exhaustive
// search). Frozen numbers come from an independent numpy computation or from
// NLTK's Porter stemmer.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "porter_vectors.hpp"
#include "support.hpp"
#include "taskweave/consistency.hpp"
#include "taskweave/emitter.hpp"
#include "taskweave/matcher.hpp"
#include "taskweave/serialize.hpp"
#include "taskweave/text.hpp"

using namespace taskweave;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Failure {
 public:
  explicit Failure(std::string what) : what_(std::move(what)) {}
  const std::string& what() const { return what_; }

 private:
  std::string what_;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// Brute-force utility oracle: two-pass mean and population deviation.

struct OracleItem {
  std::string key;
  std::vector<double> q;  // one value per attribute
};

std::vector<double> oracleUtility(const std::vector<OracleItem>& items, const std::vector<double>& w,
                                  const std::vector<bool>& maximize) {
  std::size_t n = items.size(), m = w.size();
  std::vector<double> F(n, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    double sum = 0;
    for (const auto& it : items) sum += it.q[a];
    double mu = sum / static_cast<double>(n);
    double ss = 0;
    for (const auto& it : items) ss += (it.q[a] - mu) * (it.q[a] - mu);
    double sigma = std::sqrt(ss / static_cast<double>(n));
    bool flat = std::all_of(items.begin(), items.end(), [&](const OracleItem& it) { return it.q[a] == items[0].q[a]; });
    for (std::size_t i = 0; i < n; ++i) {
      double z = flat ? 0.0 : (items[i].q[a] - mu) / sigma;
      F[i] += maximize[a] ? w[a] * z : w[a] * (1.0 - z);
    }
  }
  return F;
}

const std::array<std::string, 4> kAttrNames{"a0", "a1", "a2", "a3"};

QoSSchema schemaFor(const std::vector<bool>& maximize) {
  QoSSchema s;
  for (std::size_t a = 0; a < maximize.size(); ++a)
    s.attributes.push_back({kAttrNames[a], maximize[a] ? Direction::Maximize : Direction::Minimize, ""});
  return s;
}

std::vector<RankItem> toRankItems(const std::vector<OracleItem>& items) {
  std::vector<RankItem> out;
  for (const auto& it : items) {
    RankItem r;
    r.candidate = MatchCandidate{it.key, "op", MatchDegree::Exact, 0.5, 0};
    for (std::size_t a = 0; a < it.q.size(); ++a) r.qos.values[kAttrNames[a]] = it.q[a];
    out.push_back(std::move(r));
  }
  return out;
}

std::map<std::string, double> weightMap(const std::vector<double>& w) {
  std::map<std::string, double> out;
  for (std::size_t a = 0; a < w.size(); ++a) out[kAttrNames[a]] = w[a];
  return out;
}

std::vector<double> randomWeights(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(m);
  double sum = 0;
  for (auto& x : w) sum += (x = u(rng));
  for (auto& x : w) x /= sum;
  return w;
}

// ---------------------------------------------------------------------------

Outcome utilityWorkedExample() {
  auto t0 = std::chrono::steady_clock::now();
  // numpy: 0.6*z(rel) + 0.4*(1 - z(lat)), population std
  const std::map<std::string, double> expected{{"A", 1.13484692}, {"B", 0.88989795}, {"C", -0.82474487}};
  std::vector<OracleItem> items{{"A", {0.9, 100}}, {"B", {0.8, 50}}, {"C", {0.7, 150}}};
  std::vector<bool> maximize{true, false};
  auto oracle = oracleUtility(items, {0.6, 0.4}, maximize);
  auto ranking = rank_candidates(toRankItems(items), weightMap({0.6, 0.4}), schemaFor(maximize));
  require(ranking.ordered.size() == 3, "expected three ranked candidates");
  std::ostringstream detail;
  for (std::size_t i = 0; i < items.size(); ++i) {
    require(std::abs(oracle[i] - expected.at(items[i].key)) < 1e-3, "oracle disagrees with frozen value");
  }
  for (const auto& c : ranking.ordered) {
    require(std::abs(c.utility - expected.at(c.serviceKey)) < 1e-3,
            "F(" + c.serviceKey + ") = " + fmt(c.utility) + ", expected " + fmt(expected.at(c.serviceKey)));
    detail << c.serviceKey << '=' << fmt(c.utility, 5) << ' ';
  }
  require(ranking.ordered.front().serviceKey == "A", "A is not selected");
  double elapsed = secondsSince(t0);
  require(elapsed < 1.0, "took " + fmt(elapsed) + " s");
  return {true, detail.str() + "selected A in " + fmt(elapsed * 1000, 3) + " ms"};
}

Outcome rankingOracle() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> nDist(2, 10), mDist(1, 4);
  std::uniform_real_distribution<double> val(0.0, 1000.0), scale(0.1, 10.0), shift(-100.0, 100.0), coin(0.0, 1.0);
  const int kSets = 1000;
  int flatAttrs = 0;
  for (int t = 0; t < kSets; ++t) {
    std::size_t n = static_cast<std::size_t>(nDist(rng)), m = static_cast<std::size_t>(mDist(rng));
    std::vector<bool> maximize(m);
    for (std::size_t a = 0; a < m; ++a) maximize[a] = coin(rng) < 0.5;
    std::vector<OracleItem> items(n);
    for (std::size_t i = 0; i < n; ++i) {
      items[i].key = "s" + std::to_string(100 + i);
      items[i].q.resize(m);
      for (auto& x : items[i].q) x = std::round(val(rng) * 100) / 100;
    }
    for (std::size_t a = 0; a < m; ++a)
      if (coin(rng) < 0.1) {
        ++flatAttrs;
        for (auto& it : items) it.q[a] = items[0].q[a];
      }
    std::shuffle(items.begin(), items.end(), rng);
    auto w = randomWeights(rng, m);
    auto schema = schemaFor(maximize);

    auto oracle = oracleUtility(items, w, maximize);
    std::map<std::string, double> oracleByKey;
    for (std::size_t i = 0; i < n; ++i) oracleByKey[items[i].key] = oracle[i];

    auto ranking = rank_candidates(toRankItems(items), weightMap(w), schema);
    require(ranking.ordered.size() == n, "set " + std::to_string(t) + ": size");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = ranking.ordered[i];
      require(std::abs(c.utility - oracleByKey.at(c.serviceKey)) < 1e-9, "set " + std::to_string(t) + ": F differs");
      if (i + 1 < n) {
        double here = oracleByKey.at(c.serviceKey), next = oracleByKey.at(ranking.ordered[i + 1].serviceKey);
        require(here >= next - 1e-9, "set " + std::to_string(t) + ": order differs from oracle");
        if (std::abs(here - next) >= 1e-9) continue;
        // true ties fall back to the key order
        if (here == next)
          require(c.serviceKey < ranking.ordered[i + 1].serviceKey, "set " + std::to_string(t) + ": tie order");
      }
    }

    double minWeight = 0, meanF = 0;
    for (std::size_t a = 0; a < m; ++a)
      if (!maximize[a]) minWeight += w[a];
    for (const auto& c : ranking.ordered) meanF += c.utility;
    meanF /= static_cast<double>(n);
    require(std::abs(meanF - minWeight) < 1e-9, "set " + std::to_string(t) + ": mean F " + fmt(meanF, 12) +
                                                    " vs minimize weight " + fmt(minWeight, 12));

    auto moved = items;
    for (std::size_t a = 0; a < m; ++a) {
      double s = scale(rng), b = shift(rng);
      for (auto& it : moved) it.q[a] = s * it.q[a] + b;
    }
    auto affine = rank_candidates(toRankItems(moved), weightMap(w), schema);
    std::map<std::string, double> before;
    for (const auto& c : ranking.ordered) before[c.serviceKey] = c.utility;
    for (const auto& c : affine.ordered)
      require(std::abs(c.utility - before.at(c.serviceKey)) < 1e-9, "set " + std::to_string(t) + ": affine change");
  }
  return {true, std::to_string(kSets) + " sets (" + std::to_string(flatAttrs) +
                    " constant attributes): order, mean F and affine invariance agree"};
}

Outcome dominance() {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> nDist(1, 9), mDist(1, 4);
  std::uniform_real_distribution<double> val(0.0, 500.0), margin(0.0, 50.0), coin(0.0, 1.0);
  const int kInstances = 1000;
  double worstGap = INFINITY;
  for (int t = 0; t < kInstances; ++t) {
    std::size_t n = static_cast<std::size_t>(nDist(rng)), m = static_cast<std::size_t>(mDist(rng));
    std::vector<bool> maximize(m);
    for (std::size_t a = 0; a < m; ++a) maximize[a] = coin(rng) < 0.5;
    std::vector<OracleItem> items(n);
    for (std::size_t i = 0; i < n; ++i) {
      items[i].key = "y" + std::to_string(i);
      items[i].q.resize(m);
      for (auto& x : items[i].q) x = val(rng);
    }
    OracleItem dom{"x", std::vector<double>(m)};
    for (std::size_t a = 0; a < m; ++a) {
      double best = items[0].q[a];
      for (const auto& it : items) best = maximize[a] ? std::max(best, it.q[a]) : std::min(best, it.q[a]);
      double extra = coin(rng) < 0.3 ? 0.0 : margin(rng);
      dom.q[a] = maximize[a] ? best + extra : best - extra;
    }
    items.push_back(dom);
    std::shuffle(items.begin(), items.end(), rng);
    auto w = randomWeights(rng, m);
    auto ranking = rank_candidates(toRankItems(items), weightMap(w), schemaFor(maximize));
    double fx = 0;
    for (const auto& c : ranking.ordered)
      if (c.serviceKey == "x") fx = c.utility;
    for (const auto& c : ranking.ordered) {
      if (c.serviceKey == "x") continue;
      worstGap = std::min(worstGap, fx - c.utility);
      require(fx >= c.utility - 1e-12, "instance " + std::to_string(t) + ": dominated candidate " + c.serviceKey +
                                           " scores above the dominator");
    }
  }
  return {true, std::to_string(kInstances) + " instances, smallest F(dominator) - F(other) = " + fmt(worstGap, 3)};
}

// ---------------------------------------------------------------------------

AnnotatedProcess flowPair(SimpleKind out, SimpleKind in) {
  AnnotatedProcess p;
  p.graph.processId = "p";
  p.graph.nodes = {{"s", NodeKind::StartEvent}, {"A", NodeKind::ServiceTask}, {"B", NodeKind::ServiceTask}};
  p.graph.edges = {{"f1", "s", "A"}, {"f2", "A", "B"}};
  p.specs["A"] = TaskSpec{"A", "", {}, {{"value", DataType::of(out)}}, {}};
  p.specs["B"] = TaskSpec{"B", "", {{"value", DataType::of(in)}}, {}, {}};
  return p;
}

Outcome typeConsistency() {
  // The widening chain as edges, closed reflexively and transitively.
  constexpr std::size_t K = std::size(kAllSimpleKinds);
  auto idx = [](SimpleKind k) { return static_cast<std::size_t>(std::find(std::begin(kAllSimpleKinds),
                                                                          std::end(kAllSimpleKinds), k) -
                                                                std::begin(kAllSimpleKinds)); };
  bool reach[K][K] = {};
  for (std::size_t i = 0; i < K; ++i) reach[i][i] = true;
  const std::pair<SimpleKind, SimpleKind> chain[] = {{SimpleKind::Integer, SimpleKind::Long},
                                                     {SimpleKind::Long, SimpleKind::Float},
                                                     {SimpleKind::Float, SimpleKind::Double},
                                                     {SimpleKind::Date, SimpleKind::DateTime}};
  for (auto [a, b] : chain) reach[idx(a)][idx(b)] = true;
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);

  int accepted = 0;
  for (auto out : kAllSimpleKinds)
    for (auto in : kAllSimpleKinds) {
      bool expected = reach[idx(out)][idx(in)];
      std::string pair = std::string(to_string(out)) + "->" + std::string(to_string(in));
      require(compatible_type(DataType::of(out), DataType::of(in)) == expected, "compatible_type " + pair);
      auto reports = check_flows(flowPair(out, in), {});
      require(is_consistent(reports) == expected, "check_flows " + pair);
      if (!expected) {
        require(reports.size() == 1 && reports[0].kind == InconsistencyReport::Kind::TypeMismatch &&
                    reports[0].upstreamTask == "A" && reports[0].downstreamTask == "B",
                "report shape " + pair);
      }
      accepted += expected;
    }

  auto stringToFloat = check_flows(flowPair(SimpleKind::String, SimpleKind::Float), {});
  require(!is_consistent(stringToFloat), "string->float accepted");
  require(is_consistent(check_flows(flowPair(SimpleKind::Integer, SimpleKind::Float), {})), "integer->float flagged");
  return {true, "string->float flagged, integer->float accepted, " + std::to_string(K * K) + " pairs match closure (" +
                    std::to_string(accepted) + " compatible)"};
}

// ---------------------------------------------------------------------------

Outcome keywordPipeline() {
  for (const auto& [word, expected] : tw_test::kPorterVectors)
    require(text::stem(word) == expected, "stem(" + word + ") = " + text::stem(word) + ", reference " + expected);

  using V = std::vector<std::string>;
  const std::pair<std::string, V> splits[] = {
      {"getFlightPrice", {"get", "flight", "price"}},
      {"HTTPServer", {"http", "server"}},
      {"flight_number", {"flight", "number"}},
      {"order-id", {"order", "id"}},
      {"SOAPAction", {"soap", "action"}},
      {"WSDLFile", {"wsdl", "file"}},
  };
  for (const auto& [token, expected] : splits) require(text::split_compound(token) == expected, "split " + token);

  const V banned{"service", "operation", "wsdl", "soap"};
  std::set<std::string> bannedStems;
  for (const auto& w : banned) {
    bannedStems.insert(w);
    bannedStems.insert(text::stem(w));
  }
  const V variants{"service",  "Services",     "SERVICE",     "operation", "operations",  "Operation",
                   "wsdl",     "WSDL",         "soap",        "SOAP",      "FlightService", "getOperation",
                   "SoapAction", "WsdlFile",   "web-service", "service's", "serviceOperation", "SOAP/WSDL"};
  const V content{"flight", "booking", "payment", "invoice",  "customer", "hotel", "price",  "currency",
                  "reserve", "cancel", "search",  "passenger", "ticket",  "mail",  "notify", "account"};
  const V filler{"the", "a", "for", "with", "via", "and", "of", "to", "is", "this"};

  const auto lexicon = text::load_lexicon(tw_test::slurp(tw_test::demo_dir() / "lexicon.txt"));
  auto stop = text::StopWords::defaults();
  std::mt19937_64 rng(3003);
  std::size_t nonEmpty = 0;
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<int> len(5, 14);
    int words = len(rng);
    std::string sentence;
    for (int i = 0; i < words; ++i) {
      std::uniform_int_distribution<int> pick(0, 2);
      const V& pool = pick(rng) == 0 ? variants : (pick(rng) == 1 ? content : filler);
      std::uniform_int_distribution<std::size_t> at(0, pool.size() - 1);
      if (!sentence.empty()) sentence += ' ';
      sentence += pool[at(rng)];
    }
    sentence += '.';
    const text::SynonymLexicon noLexicon;
    for (const auto* lex : {&lexicon, &noLexicon}) {
      auto kw = text::extract_keywords(sentence, stop, *lex);
      if (!kw.empty()) ++nonEmpty;
      for (const auto& k : kw)
        require(!bannedStems.contains(k), "keyword '" + k + "' extracted from: " + sentence);
    }
  }
  return {true, std::to_string(tw_test::kPorterVectors.size()) + " stem vectors, " + std::to_string(std::size(splits)) +
                    " split vectors, 50 fuzz texts (" + std::to_string(nonEmpty) + "/100 extractions non-empty)"};
}

// ---------------------------------------------------------------------------
// Degree lattice over concept sets. Each concept has several spellings that
// must normalize to the same name.

const std::vector<std::vector<std::string>> kConcepts{
    {"orderId", "order_id", "OrderId", "order-id"},
    {"price", "Price", "prices"},
    {"customerName", "customer_name", "CustomerName"},
    {"deliveryDate", "delivery-date", "DeliveryDate", "delivery_dates"},
    {"invoiceNumber", "invoice_number", "InvoiceNumbers"},
    {"hotelCode", "hotel_code", "HotelCode"},
    {"currency", "Currency", "currencies"},
    {"seatClass", "seat_class", "SeatClass"},
};

using ConceptSet = unsigned;

std::vector<Param> spell(ConceptSet set, std::size_t universe, std::mt19937_64& rng) {
  std::vector<Param> out;
  for (std::size_t c = 0; c < universe; ++c) {
    if (!(set >> c & 1u)) continue;
    std::uniform_int_distribution<std::size_t> at(0, kConcepts[c].size() - 1);
    out.push_back(Param{kConcepts[c][at(rng)], DataType::of(SimpleKind::String)});
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

bool subsetOf(ConceptSet a, ConceptSet b) { return (a & ~b) == 0; }

MatchDegree degreeOracle(ConceptSet sIn, ConceptSet sOut, ConceptSet oIn, ConceptSet oOut) {
  if (oIn == sIn && oOut == sOut) return MatchDegree::Exact;
  if (subsetOf(oIn, sIn) && subsetOf(sOut, oOut)) return MatchDegree::Plugin;
  if ((oOut & sOut) != 0 && subsetOf(oOut, sOut) && oOut != sOut) return MatchDegree::Subsume;
  if ((oOut & sOut) != 0) return MatchDegree::Intersection;
  return MatchDegree::Disjoint;
}

Outcome degreeLattice() {
  std::mt19937_64 rng(4004);
  std::map<MatchDegree, std::size_t> counts;
  std::size_t pairs = 0;
  for (std::size_t universe = 0; universe <= 4; ++universe) {
    ConceptSet full = (1u << universe);
    for (ConceptSet sIn = 0; sIn < full; ++sIn)
      for (ConceptSet sOut = 0; sOut < full; ++sOut)
        for (ConceptSet oIn = 0; oIn < full; ++oIn)
          for (ConceptSet oOut = 0; oOut < full; ++oOut) {
            TaskSpec spec{"t", "", spell(sIn, universe, rng), spell(sOut, universe, rng), {}};
            OperationSig op{"op", "", spell(oIn, universe, rng), spell(oOut, universe, rng)};
            auto expected = degreeOracle(sIn, sOut, oIn, oOut);
            auto got = io_degree(spec, op, {});
            if (got != expected) {
              std::ostringstream os;
              os << "universe " << universe << " sIn=" << sIn << " sOut=" << sOut << " oIn=" << oIn
                 << " oOut=" << oOut << ": got " << to_string(got) << ", expected " << to_string(expected);
              throw Failure(os.str());
            }
            ++counts[expected];
            ++pairs;
          }
  }
  std::ostringstream os;
  os << pairs << " spec/op pairs;";
  for (auto d : {MatchDegree::Exact, MatchDegree::Plugin, MatchDegree::Subsume, MatchDegree::Intersection,
                 MatchDegree::Disjoint})
    os << ' ' << to_string(d) << '=' << counts[d];
  return {true, os.str()};
}

// ---------------------------------------------------------------------------
// Composition against exhaustive sequence search.

struct OracleOp {
  PlanStep step;
  ConceptSet in = 0, out = 0;
};

struct SearchVerdict {
  bool found = false;
  std::vector<PlanStep> steps;
};

SearchVerdict exhaustive(const std::vector<OracleOp>& ops, ConceptSet inputs, ConceptSet goal, int maxDepth) {
  if (subsetOf(goal, inputs)) return {};
  std::vector<std::size_t> order(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ops[a].step < ops[b].step; });
  for (int len = 1; len <= maxDepth; ++len) {
    std::vector<std::size_t> seq(static_cast<std::size_t>(len), 0);
    // odometer over sorted op indices enumerates sequences lexicographically
    for (;;) {
      ConceptSet have = inputs;
      bool runnable = true;
      for (auto i : seq) {
        const auto& op = ops[order[i]];
        if (!subsetOf(op.in, have)) {
          runnable = false;
          break;
        }
        have |= op.out;
      }
      if (runnable && subsetOf(goal, have)) {
        SearchVerdict v{true, {}};
        for (auto i : seq) v.steps.push_back(ops[order[i]].step);
        return v;
      }
      std::size_t pos = seq.size();
      while (pos > 0 && seq[pos - 1] + 1 == ops.size()) seq[--pos] = 0;
      if (pos == 0) break;
      ++seq[pos - 1];
    }
  }
  return {};
}

Outcome composition() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(5005);
  const std::size_t universe = kConcepts.size();
  std::uniform_int_distribution<int> opCount(1, 8), svcCount(1, 4), small(1, 2), coin(0, 3);
  std::uniform_int_distribution<std::size_t> conceptPick(0, universe - 1);
  auto randomSet = [&](int size) {
    ConceptSet s = 0;
    for (int i = 0; i < size; ++i) s |= 1u << conceptPick(rng);
    return s;
  };
  int found = 0, none = 0, trivial = 0;
  std::map<std::size_t, int> lengths;
  for (int r = 0; r < 200; ++r) {
    int nOps = opCount(rng), nSvc = svcCount(rng);
    std::vector<OracleOp> ops;
    ServiceRegistry reg;
    for (int i = 0; i < nOps; ++i) {
      std::string key = "svc" + std::to_string(std::uniform_int_distribution<int>(1, nSvc)(rng));
      OracleOp op{{key, "op" + std::to_string(i)}, coin(rng) == 0 ? 0u : randomSet(small(rng)), randomSet(small(rng))};
      ops.push_back(op);
      auto& entry = reg.services[key];
      entry.record.serviceKey = key;
      entry.description.operations.push_back(
          OperationSig{op.step.operationName, "", spell(op.in, universe, rng), spell(op.out, universe, rng)});
    }
    ConceptSet inputs = randomSet(small(rng)), goal = randomSet(small(rng));
    TaskSpec spec{"t", "", spell(inputs, universe, rng), spell(goal, universe, rng), {}};

    auto expected = exhaustive(ops, inputs, goal, 3);
    auto got = compose_chain(reg, spec, {}, 3);
    std::string where = "registry " + std::to_string(r);
    require(got.has_value() == expected.found, where + ": verdict differs");
    if (subsetOf(goal, inputs)) ++trivial;
    if (!expected.found) {
      ++none;
      continue;
    }
    require(got->steps.size() == expected.steps.size(),
            where + ": length " + std::to_string(got->steps.size()) + " vs " + std::to_string(expected.steps.size()));
    require(got->steps == expected.steps, where + ": not the lexicographically first shortest plan");
    ++found;
    ++lengths[expected.steps.size()];
  }
  double elapsed = secondsSince(t0);
  require(elapsed < 10.0, "took " + fmt(elapsed) + " s");
  std::ostringstream os;
  os << "200 registries: " << found << " plans (";
  for (auto [len, n] : lengths) os << "len" << len << '=' << n << ' ';
  os << "), " << none << " none (" << trivial << " already satisfied), " << fmt(elapsed, 3) << " s";
  return {true, os.str()};
}

// ---------------------------------------------------------------------------

Outcome endToEnd() {
  tw_test::TempDir tmp;
  ProjectStore store(tmp.path());
  tw_test::ingest_demo(store, "demo");
  auto project = store.create_or_load_project("demo");
  require(project.registry && project.process, "demo did not build");
  require(project.registry->services.size() == 12, "expected 12 services");
  require(project.registry->categories.size() == 3, "expected 3 categories");
  std::size_t tasks = 0;
  for (const auto& [id, kind] : project.process->graph.nodes) tasks += kind == NodeKind::ServiceTask;
  require(tasks == 5, "expected 5 service tasks");

  auto response = store.run_match("demo");
  require(response["bindings"]["unresolved"].empty(), "unresolved tasks: " + response["bindings"]["unresolved"].dump());
  auto exe = store.export_artifact("demo", ExportKind::ExecutableBpmn);
  auto original = parse_bpmn(tw_test::slurp(tw_test::demo_dir() / "process.bpmn")).value;
  auto reread = read_bpmn(exe);
  require(isomorphic(reread.graph, original), "executable BPMN is not isomorphic to the input");
  for (const auto& [id, marker] : reread.markers) require(marker.hasBinding, "task " + id + " lacks a binding");
  auto validation = json::parse(store.export_artifact("demo", ExportKind::Validation));
  require(validation["findings"].empty(), "unexpected findings: " + validation["findings"].dump());

  // A second, independent run must give the same bytes.
  tw_test::TempDir tmp2;
  ProjectStore store2(tmp2.path());
  tw_test::ingest_demo(store2, "demo");
  store2.run_match("demo");
  for (auto kind : {ExportKind::ExecutableBpmn, ExportKind::WsOnto, ExportKind::BpOnto, ExportKind::Validation})
    require(store2.export_artifact("demo", kind) == store.export_artifact("demo", kind),
            std::string(to_string(kind)) + " differs between runs");

  // Make T5 ask for something nobody offers: it must be the only finding.
  auto specs = json::parse(tw_test::slurp(tw_test::demo_dir() / "specs.json"));
  for (auto& t : specs["tasks"])
    if (t["taskId"] == "T5") t["outputs"] = json::array({{{"name", "weatherForecast"}, {"type", "string"}}});
  tw_test::TempDir tmp3;
  ProjectStore store3(tmp3.path());
  tw_test::ingest_demo(store3, "demo");
  auto accepted = store3.submit_artifact("demo", ArtifactKind::Specs, specs.dump());
  require(accepted.accepted, "variant specs rejected");
  auto variant = store3.run_match("demo");
  require(variant["bindings"]["unresolved"] == json::array({"T5"}), "variant: T5 should be the only unresolved task");
  auto findings = json::parse(store3.export_artifact("demo", ExportKind::Validation))["findings"];
  require(findings.size() == 1 && findings[0]["ruleId"] == "R4" && findings[0]["nodeId"] == "T5",
          "variant findings: " + findings.dump());

  return {true, "12 services, 3 categories, 5 tasks bound; round trip isomorphic; no findings; "
                "repeat byte-identical; unresolvable T5 gives one unbound-task finding"};
}

Outcome persistence() {
  tw_test::TempDir tmp;
  json first, second;
  Project saved;
  {
    ProjectStore store(tmp.path());
    tw_test::ingest_demo(store, "demo");
    first = store.run_match("demo");
    second = store.run_match("demo");
    saved = store.create_or_load_project("demo");
  }
  require(first.dump() == second.dump(), "run_match bodies differ");
  ProjectStore reopened(tmp.path());
  auto loaded = reopened.create_or_load_project("demo");
  require(loaded == saved, "reloaded project differs from the saved one");
  require(loaded.lastBindings.has_value(), "bindings were not persisted");
  require(reopened.run_match("demo").dump() == first.dump(), "run_match after reload differs");
  return {true, "reloaded project equals saved (registry, process, bindings); run_match bodies identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"utility-worked-example", utilityWorkedExample},
      {"ranking-oracle", rankingOracle},
      {"dominance", dominance},
      {"type-consistency", typeConsistency},
      {"keyword-pipeline", keywordPipeline},
      {"degree-lattice", degreeLattice},
      {"composition-search", composition},
      {"end-to-end-demo", endToEnd},
      {"persistence", persistence},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const Failure& f) {
      o = {false, f.what()};
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
