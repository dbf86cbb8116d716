#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "mwav/core.hpp"
#include "mwav/parallel.hpp"
#include "mwav/rational.hpp"

namespace mwav {

// A deterministic total order over committees. The default is the canonical
// order of enumerate_committees; an explicit list promotes committees to the
// front, in list order, with everything else following canonically.
struct TieOrder {
  std::vector<Committee> preferred;

  std::uint64_t rank(const Committee& c, int m, int k) const {
    for (std::size_t i = 0; i < preferred.size(); ++i)
      if (preferred[i] == c) return i;
    return preferred.size() + committee_rank(c, m, k);
  }
  bool before(const Committee& a, const Committee& b, int m, int k) const {
    return rank(a, m, k) < rank(b, m, k);
  }
};

// Which objective minisum breaks ties with. The two documented schemes
// coincide under the canonical committee order but both are selectable so the
// strategyproofness suite can record which one it verified.
enum class MinisumTieScheme { CommitteeOrder, AlternativePriority };

// An explicit profile -> committee function over a fully enumerated profile
// space. Also the output object of rule synthesis.
struct RuleTable {
  ElectionParams params;
  BallotRestriction restriction = BallotRestriction::All;
  std::vector<Committee> outcomes;  // indexed by ProfileSpace index

  void validate() const {
    params.validate();
    ProfileSpace space(params, restriction);
    if (outcomes.size() != space.size()) throw DimensionError("rule table: outcome count != profile space size");
    for (const Committee& c : outcomes)
      if (c.size() != params.k || (c.bits & ~full_mask(params.m)))
        throw DimensionError("rule table: invalid committee entry");
  }
};

enum class RuleKind { Minisum, Minimax, KCompletion, SerialDictatorship, Constant, Table };

struct RuleSpec {
  RuleKind kind = RuleKind::Minisum;
  TieOrder tie;
  MinisumTieScheme minisum_scheme = MinisumTieScheme::CommitteeOrder;
  int dictator = 0;                          // KCompletion
  std::vector<int> agent_order;              // SerialDictatorship; empty = identity
  Committee constant;                        // Constant
  std::shared_ptr<const RuleTable> table;    // Table

  std::string name() const {
    switch (kind) {
      case RuleKind::Minisum: return "minisum";
      case RuleKind::Minimax: return "minimax";
      case RuleKind::KCompletion: return "kcompletion:" + std::to_string(dictator);
      case RuleKind::SerialDictatorship: {
        std::string s = "serial:";
        for (std::size_t i = 0; i < agent_order.size(); ++i)
          s += (i ? "," : "") + std::to_string(agent_order[i]);
        return s;
      }
      case RuleKind::Constant: return "constant";
      case RuleKind::Table: return "table";
    }
    return "?";
  }
};

inline RuleSpec make_minisum(TieOrder tie = {}) { return RuleSpec{RuleKind::Minisum, std::move(tie)}; }
inline RuleSpec make_minimax(TieOrder tie = {}) { return RuleSpec{RuleKind::Minimax, std::move(tie)}; }
inline RuleSpec make_constant(Committee c) {
  RuleSpec r;
  r.kind = RuleKind::Constant;
  r.constant = c;
  return r;
}
inline RuleSpec make_table(RuleTable t) {
  RuleSpec r;
  r.kind = RuleKind::Table;
  r.table = std::make_shared<const RuleTable>(std::move(t));
  return r;
}

inline int max_distance(const Committee& c, const ApprovalProfile& profile) {
  int worst = 0;
  for (const Ballot& b : profile.ballots) worst = std::max(worst, hamming(c, b));
  return worst;
}

namespace detail {

// Scans committees in canonical order and keeps the objective-minimal one,
// breaking objective ties by the tie order.
template <typename Objective>
Committee argmin_committee(const ElectionParams& p, const TieOrder& tie, Objective&& objective) {
  std::optional<Committee> best;
  long long best_obj = 0;
  std::uint64_t best_tie = 0;
  std::uint64_t canon = 0;
  for (const Committee& c : enumerate_committees(p.m, p.k)) {
    long long obj = objective(c);
    std::uint64_t tr = tie.preferred.empty() ? canon : tie.rank(c, p.m, p.k);
    if (!best || obj < best_obj || (obj == best_obj && tr < best_tie)) {
      best = c;
      best_obj = obj;
      best_tie = tr;
    }
    ++canon;
  }
  return *best;
}

}  // namespace detail

// Committee with the k highest approval scores, equivalently minimal total
// Hamming distance.
inline Committee minisum(const ApprovalProfile& profile, const TieOrder& tie = {},
                         MinisumTieScheme scheme = MinisumTieScheme::CommitteeOrder) {
  profile.validate();
  const ElectionParams& p = profile.params;
  std::vector<int> score(p.m, 0);
  for (const Ballot& b : profile.ballots)
    for (int a : members_of(b.bits)) ++score[a];

  if (scheme == MinisumTieScheme::AlternativePriority) {
    // score-descending, index-ascending selection; this scheme is
    // alternative-level and ignores any committee-level preference list
    (void)tie;
    std::vector<int> order(p.m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score[a] > score[b]; });
    Mask bits = 0;
    for (int i = 0; i < p.k; ++i) bits |= Mask{1} << order[i];
    return Committee{bits};
  }
  return detail::argmin_committee(p, tie, [&](const Committee& c) {
    long long total = 0;
    for (int a : members_of(c.bits)) total -= score[a];
    return total;
  });
}

// Committee minimizing the maximum Hamming distance from the ballots,
// computed by exhaustive search over the committee enumeration.
inline Committee minimax(const ApprovalProfile& profile, const TieOrder& tie = {}) {
  profile.validate();
  return detail::argmin_committee(profile.params, tie,
                                  [&](const Committee& c) { return static_cast<long long>(max_distance(c, profile)); });
}

inline RuleSpec k_completion(int dictator, TieOrder tie = {}) {
  RuleSpec r;
  r.kind = RuleKind::KCompletion;
  r.dictator = dictator;
  r.tie = std::move(tie);
  return r;
}

inline RuleSpec serial_dictatorship(std::vector<int> order = {}) {
  RuleSpec r;
  r.kind = RuleKind::SerialDictatorship;
  r.agent_order = std::move(order);
  return r;
}

namespace detail {

inline Committee apply_k_completion(const RuleSpec& rule, const ApprovalProfile& profile) {
  const ElectionParams& p = profile.params;
  if (rule.dictator < 0 || rule.dictator >= p.n) throw DimensionError("kcompletion: dictator index out of range");
  Ballot pd = profile.ballots[rule.dictator];
  int sz = pd.size();
  if (sz == p.k) return Committee{pd.bits};
  if (sz < p.k) {
    // pad with the lowest-index alternatives outside the ballot
    Mask bits = pd.bits;
    for (int a = 0; a < p.m && std::popcount(bits) < p.k; ++a)
      if (!pd.contains(a)) bits |= Mask{1} << a;
    return Committee{bits};
  }
  // trim: first k-subset of the ballot in tie order
  std::vector<int> mem = members_of(pd.bits);
  std::vector<int> idx(p.k);
  std::iota(idx.begin(), idx.end(), 0);
  std::optional<Committee> best;
  std::uint64_t best_rank = 0;
  while (true) {
    Mask bits = 0;
    for (int i : idx) bits |= Mask{1} << mem[i];
    Committee c{bits};
    std::uint64_t r = rule.tie.rank(c, p.m, p.k);
    if (!best || r < best_rank) {
      best = c;
      best_rank = r;
    }
    int i = p.k - 1;
    while (i >= 0 && idx[i] == sz - p.k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < p.k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return *best;
}

inline Committee apply_serial_dictatorship(const RuleSpec& rule, const ApprovalProfile& profile) {
  const ElectionParams& p = profile.params;
  std::vector<int> order = rule.agent_order;
  if (order.empty()) {
    order.resize(p.n);
    std::iota(order.begin(), order.end(), 0);
  }
  if (static_cast<int>(order.size()) != p.n) throw DimensionError("serial: order must list all agents");
  {
    Mask seen = 0;
    for (int a : order) {
      if (a < 0 || a >= p.n || (seen & (Mask{1} << a))) throw DimensionError("serial: order is not a permutation");
      seen |= Mask{1} << a;
    }
  }
  std::vector<Committee> pool = enumerate_committees(p.m, p.k);
  for (int agent : order) {
    int best = INT32_MAX;
    for (const Committee& c : pool) best = std::min(best, hamming(c, profile.ballots[agent]));
    std::vector<Committee> next;
    for (const Committee& c : pool)
      if (hamming(c, profile.ballots[agent]) == best) next.push_back(c);
    pool = std::move(next);
  }
  return pool.front();  // pool keeps canonical order; final ties resolve to its head
}

}  // namespace detail

inline Committee apply_rule(const RuleSpec& rule, const ApprovalProfile& profile) {
  profile.validate();
  const ElectionParams& p = profile.params;
  switch (rule.kind) {
    case RuleKind::Minisum: return minisum(profile, rule.tie, rule.minisum_scheme);
    case RuleKind::Minimax: return minimax(profile, rule.tie);
    case RuleKind::KCompletion: return detail::apply_k_completion(rule, profile);
    case RuleKind::SerialDictatorship: return detail::apply_serial_dictatorship(rule, profile);
    case RuleKind::Constant:
      if (rule.constant.size() != p.k || (rule.constant.bits & ~full_mask(p.m)))
        throw DimensionError("constant rule committee does not fit election parameters");
      return rule.constant;
    case RuleKind::Table: {
      const RuleTable& t = *rule.table;
      if (!(t.params == p)) throw DimensionError("table rule: parameter mismatch");
      ProfileSpace space(t.params, t.restriction);
      return t.outcomes[space.index_of(profile)];
    }
  }
  throw std::logic_error("apply_rule: unreachable");
}

enum class SweepMode { Exhaustive, Sampled };

struct ApproxReport {
  ExtRatio ratio;
  ApprovalProfile worst_profile;
  int rule_cost = 0;
  int optimal_cost = 0;
  SweepMode mode = SweepMode::Exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
};

// Worst case, over the visited profiles, of D(R(P),P) / D(C*,P). A profile
// with zero optimum and positive rule cost certifies an infinite ratio.
inline ApproxReport approx_ratio(const RuleSpec& rule, const ElectionParams& params,
                                 BallotRestriction restriction = BallotRestriction::All,
                                 SweepMode mode = SweepMode::Exhaustive, std::uint64_t sample_count = 0,
                                 std::uint64_t seed = kDefaultSeed, std::uint64_t eval_cap = kDefaultEvalCap) {
  params.validate();
  ProfileSpace space(params, restriction);

  std::vector<std::uint64_t> sampled;
  std::uint64_t count;
  if (mode == SweepMode::Exhaustive) {
    if (space.size() > eval_cap)
      throw CapExceededError("approx_ratio: profile space exceeds evaluation cap; use sampled mode");
    count = space.size();
  } else {
    Rng rng(seed);
    sampled.reserve(sample_count);
    for (std::uint64_t i = 0; i < sample_count; ++i) sampled.push_back(rng.below(space.size()));
    count = sample_count;
  }

  struct Entry {
    ExtRatio ratio;
    int rule_cost;
    int opt_cost;
  };
  auto evaluate = [&](std::uint64_t i) -> Entry {
    ApprovalProfile prof = space.at(mode == SweepMode::Exhaustive ? i : sampled[i]);
    Committee out = apply_rule(rule, prof);
    int rc = max_distance(out, prof);
    int oc = INT32_MAX;
    for (const Committee& c : enumerate_committees(params.m, params.k)) oc = std::min(oc, max_distance(c, prof));
    ExtRatio ratio;
    if (oc == 0)
      ratio = rc > 0 ? ExtRatio::inf() : ExtRatio(Ratio(1));
    else
      ratio = ExtRatio(Ratio(rc, oc));
    return Entry{ratio, rc, oc};
  };

  auto [arg, worst] =
      max_over<Entry>(count, evaluate, [](const Entry& a, const Entry& b) { return a.ratio < b.ratio; });

  ApproxReport report;
  report.ratio = worst.ratio;
  report.worst_profile = space.at(mode == SweepMode::Exhaustive ? arg : sampled[arg]);
  report.rule_cost = worst.rule_cost;
  report.optimal_cost = worst.opt_cost;
  report.mode = mode;
  report.sample_count = sample_count;
  report.seed = seed;
  return report;
}

}  // namespace mwav
