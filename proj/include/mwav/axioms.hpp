#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mwav/core.hpp"
#include "mwav/parallel.hpp"
#include "mwav/ranking_rules.hpp"
#include "mwav/rules.hpp"

namespace mwav {

// What a verdict actually covered. Only an exhaustive verdict is a proof over
// the declared space; everything else means "no violation found".
struct CoverageInfo {
  enum class Kind { Exhaustive, Sampled, BoundedCoalition } kind = Kind::Exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  int max_coalition = 0;

  std::string str() const {
    switch (kind) {
      case Kind::Exhaustive: return "exhaustive";
      case Kind::Sampled:
        return "sampled count=" + std::to_string(sample_count) + " seed=" + std::to_string(seed);
      case Kind::BoundedCoalition: return "bounded-coalition max=" + std::to_string(max_coalition);
    }
    return "?";
  }
};

// A concrete coalition manipulation: the coalition swaps in the misreports,
// the outcome moves from `before` to `after`, and the recorded distance pairs
// (true ballot vs outcome) certify the improvement pattern.
struct ManipulationWitness {
  ApprovalProfile profile;
  std::vector<int> coalition;          // ascending agent indices
  std::vector<Ballot> misreports;      // parallel to coalition
  Committee before;
  Committee after;
  std::vector<std::pair<int, int>> distances;  // (before, after) per coalition member
};

struct UnanimityWitness {
  ApprovalProfile profile;   // all agents approve exactly `approved`
  Committee approved;
  Committee outcome;
};

struct ParetoWitness {
  ApprovalProfile profile;
  Committee outcome;
  Committee dominating;
  std::vector<std::pair<int, int>> distances;  // (to outcome, to dominating) per agent
};

struct RankingManipulationWitness {
  RankingProfile profile;
  int agent = 0;
  Ranking misreport;
  int before = 0;      // truthful winner
  int after = 0;       // winner under the misreport
  int pos_before = 0;  // positions in the agent's true ranking
  int pos_after = 0;
};

struct OntoWitness {
  int alternative = 0;  // never wins on the enumerated space
};

using Witness = std::variant<std::monostate, ManipulationWitness, UnanimityWitness, ParetoWitness,
                             RankingManipulationWitness, OntoWitness>;

struct AxiomVerdict {
  std::string axiom;
  bool holds = true;
  Witness witness;
  CoverageInfo coverage;
};

struct SpaceOptions {
  BallotRestriction restriction = BallotRestriction::All;
  enum class Mode { Auto, Exhaustive, Sampled } mode = Mode::Auto;
  std::uint64_t sample_count = 100'000;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t eval_cap = kDefaultEvalCap;
  // Definitions 1-3 quantify deviations over arbitrary subsets of A; set this
  // to keep deviations inside the profile restriction instead. Table-backed
  // rules force it, since they are undefined outside their space.
  bool deviations_within_space = false;
};

namespace detail {

inline BallotSpace deviation_space(const RuleSpec& rule, const ElectionParams& p, const SpaceOptions& opt) {
  bool restrict = opt.deviations_within_space || rule.kind == RuleKind::Table;
  return BallotSpace{p.m, restrict ? opt.restriction : BallotRestriction::All};
}

inline std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}
inline std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

// per-profile deviation evaluations for coalition checks
inline std::uint64_t coalition_devs(int n, int max_coalition, std::uint64_t dev_size) {
  std::uint64_t total = 0;
  for (int c = 1; c <= max_coalition; ++c)
    total = add_sat(total, mul_sat(binomial(n, c), pow_saturating(dev_size, c)));
  return total;
}

struct SweepPlan {
  bool sampled = false;
  std::vector<std::uint64_t> sample;  // profile indices when sampled
  std::uint64_t count = 0;            // indices to visit
};

inline SweepPlan plan_sweep(std::uint64_t space_size, std::uint64_t per_profile_cost, const SpaceOptions& opt) {
  std::uint64_t est = mul_sat(space_size, per_profile_cost);
  SweepPlan plan;
  if (opt.mode == SpaceOptions::Mode::Exhaustive ||
      (opt.mode == SpaceOptions::Mode::Auto && est <= opt.eval_cap)) {
    if (est > opt.eval_cap)
      throw CapExceededError("exhaustive check exceeds evaluation cap (" + std::to_string(est) + " > " +
                             std::to_string(opt.eval_cap) + ")");
    plan.count = space_size;
    return plan;
  }
  plan.sampled = true;
  Rng rng(opt.seed);
  plan.sample.reserve(opt.sample_count);
  for (std::uint64_t i = 0; i < opt.sample_count; ++i) plan.sample.push_back(rng.below(space_size));
  plan.count = opt.sample_count;
  return plan;
}

template <typename Probe>
std::optional<Witness> run_sweep(const SweepPlan& plan, const ProfileSpace& space, Probe&& probe) {
  auto at = [&](std::uint64_t i) { return plan.sampled ? plan.sample[i] : i; };
  auto result = find_first<Witness>(plan.count, [&](std::uint64_t i) { return probe(space.at(at(i))); });
  if (result) return std::move(result->second);
  return std::nullopt;
}

inline CoverageInfo sweep_coverage(const SweepPlan& plan, const SpaceOptions& opt, int max_coalition = 0, int n = 0) {
  CoverageInfo cov;
  if (plan.sampled) {
    cov.kind = CoverageInfo::Kind::Sampled;
    cov.sample_count = opt.sample_count;
    cov.seed = opt.seed;
  } else if (max_coalition > 0 && max_coalition < n) {
    cov.kind = CoverageInfo::Kind::BoundedCoalition;
    cov.max_coalition = max_coalition;
  }
  return cov;
}

}  // namespace detail

// Definition of unanimity: on every profile where all agents approve exactly
// the same k-set, the rule must return that set. The profile family is tiny,
// so this check is always exhaustive.
inline AxiomVerdict check_unanimity(const RuleSpec& rule, const ElectionParams& params) {
  params.validate();
  AxiomVerdict v{"unanimity", true, {}, {}};
  for (const Committee& s : enumerate_committees(params.m, params.k)) {
    ApprovalProfile prof;
    prof.params = params;
    prof.ballots.assign(params.n, Ballot{s.bits});
    Committee out = apply_rule(rule, prof);
    if (out != s) {
      v.holds = false;
      v.witness = UnanimityWitness{prof, s, out};
      return v;
    }
  }
  return v;
}

inline AxiomVerdict check_pareto(const RuleSpec& rule, const ElectionParams& params, const SpaceOptions& opt = {}) {
  params.validate();
  ProfileSpace space(params, opt.restriction);
  std::vector<Committee> committees = enumerate_committees(params.m, params.k);
  detail::SweepPlan plan = detail::plan_sweep(space.size(), committees.size(), opt);

  auto probe = [&](const ApprovalProfile& prof) -> std::optional<Witness> {
    Committee out = apply_rule(rule, prof);
    std::vector<int> base(params.n);
    for (int i = 0; i < params.n; ++i) base[i] = hamming(out, prof.ballots[i]);
    for (const Committee& alt : committees) {
      if (alt == out) continue;
      bool weak = true, strict = false;
      for (int i = 0; i < params.n && weak; ++i) {
        int d = hamming(alt, prof.ballots[i]);
        if (d > base[i]) weak = false;
        if (d < base[i]) strict = true;
      }
      if (weak && strict) {
        ParetoWitness w{prof, out, alt, {}};
        for (int i = 0; i < params.n; ++i)
          w.distances.emplace_back(base[i], hamming(alt, prof.ballots[i]));
        return Witness{w};
      }
    }
    return std::nullopt;
  };

  AxiomVerdict v{"pareto", true, {}, detail::sweep_coverage(plan, opt)};
  if (auto w = detail::run_sweep(plan, space, probe)) {
    v.holds = false;
    v.witness = std::move(*w);
  }
  return v;
}

namespace detail {

// Shared engine for SP and the two GSP notions: enumerate coalitions up to
// max_coalition and joint misreports over the deviation space. `strong`
// selects all-weakly-better-one-strict, otherwise all-strictly-better.
inline std::optional<Witness> coalition_probe(const RuleSpec& rule, const ApprovalProfile& prof,
                                              const BallotSpace& devs, int max_coalition, bool strong) {
  const ElectionParams& p = prof.params;
  Committee out = apply_rule(rule, prof);
  std::vector<int> base(p.n);
  for (int i = 0; i < p.n; ++i) base[i] = hamming(out, prof.ballots[i]);

  const std::uint64_t dev_size = devs.size();
  for (Mask coalition = 1; coalition < (Mask{1} << p.n); ++coalition) {
    int size = std::popcount(coalition);
    if (size > max_coalition) continue;
    std::vector<int> members = members_of(coalition);

    // members at distance 0 cannot strictly improve
    bool skip = false, all_zero = true;
    for (int i : members) {
      if (base[i] == 0 && !strong) skip = true;
      if (base[i] != 0) all_zero = false;
    }
    if (skip || (strong && all_zero)) continue;

    std::uint64_t combos = pow_saturating(dev_size, size);
    ApprovalProfile deviated = prof;
    for (std::uint64_t combo = 0; combo < combos; ++combo) {
      std::uint64_t c = combo;
      for (int j = size - 1; j >= 0; --j) {
        deviated.ballots[members[j]] = devs.at(c % dev_size);
        c /= dev_size;
      }
      Committee out2 = apply_rule(rule, deviated);
      if (out2 == out) continue;
      bool all_weak = true, all_strict = true, any_strict = false;
      for (int i : members) {
        int d = hamming(out2, prof.ballots[i]);
        if (d > base[i]) all_weak = false;
        if (d >= base[i]) all_strict = false;
        if (d < base[i]) any_strict = true;
      }
      bool violated = strong ? (all_weak && any_strict) : all_strict;
      if (violated) {
        ManipulationWitness w;
        w.profile = prof;
        w.coalition = members;
        for (int i : members) w.misreports.push_back(deviated.ballots[i]);
        w.before = out;
        w.after = out2;
        for (int i : members) w.distances.emplace_back(base[i], hamming(out2, prof.ballots[i]));
        return Witness{std::move(w)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Definition of strategyproofness: no single agent can strictly reduce her
// Hamming distance by misreporting.
inline AxiomVerdict check_sp(const RuleSpec& rule, const ElectionParams& params, const SpaceOptions& opt = {}) {
  params.validate();
  ProfileSpace space(params, opt.restriction);
  BallotSpace devs = detail::deviation_space(rule, params, opt);
  detail::SweepPlan plan =
      detail::plan_sweep(space.size(), detail::mul_sat(params.n, devs.size()), opt);

  auto probe = [&](const ApprovalProfile& prof) {
    return detail::coalition_probe(rule, prof, devs, 1, /*strong=*/false);
  };
  AxiomVerdict v{"sp", true, {}, detail::sweep_coverage(plan, opt)};
  if (auto w = detail::run_sweep(plan, space, probe)) {
    v.holds = false;
    v.witness = std::move(*w);
  }
  return v;
}

inline AxiomVerdict check_weak_gsp(const RuleSpec& rule, const ElectionParams& params, const SpaceOptions& opt = {},
                                   int max_coalition = -1) {
  params.validate();
  if (max_coalition < 0 || max_coalition > params.n) max_coalition = params.n;
  ProfileSpace space(params, opt.restriction);
  BallotSpace devs = detail::deviation_space(rule, params, opt);
  detail::SweepPlan plan =
      detail::plan_sweep(space.size(), detail::coalition_devs(params.n, max_coalition, devs.size()), opt);

  auto probe = [&](const ApprovalProfile& prof) {
    return detail::coalition_probe(rule, prof, devs, max_coalition, /*strong=*/false);
  };
  AxiomVerdict v{"weak-gsp", true, {}, detail::sweep_coverage(plan, opt, max_coalition, params.n)};
  if (auto w = detail::run_sweep(plan, space, probe)) {
    v.holds = false;
    v.witness = std::move(*w);
  }
  return v;
}

inline AxiomVerdict check_strong_gsp(const RuleSpec& rule, const ElectionParams& params,
                                     const SpaceOptions& opt = {}, int max_coalition = -1) {
  params.validate();
  if (max_coalition < 0 || max_coalition > params.n) max_coalition = params.n;
  ProfileSpace space(params, opt.restriction);
  BallotSpace devs = detail::deviation_space(rule, params, opt);
  detail::SweepPlan plan =
      detail::plan_sweep(space.size(), detail::coalition_devs(params.n, max_coalition, devs.size()), opt);

  auto probe = [&](const ApprovalProfile& prof) {
    return detail::coalition_probe(rule, prof, devs, max_coalition, /*strong=*/true);
  };
  AxiomVerdict v{"strong-gsp", true, {}, detail::sweep_coverage(plan, opt, max_coalition, params.n)};
  if (auto w = detail::run_sweep(plan, space, probe)) {
    v.holds = false;
    v.witness = std::move(*w);
  }
  return v;
}

// Ranking-side checks. These enumerate the full (m!)^n profile space; there
// is no sampled mode because a sampled "holds" would certify nothing useful
// for the reduction machinery built on top.

inline AxiomVerdict check_onto(const RankingRuleSpec& rule, int m, int n, const SpaceOptions& opt = {}) {
  RankingSpace space(m, n);
  if (space.size() > opt.eval_cap) throw CapExceededError("onto: ranking space exceeds evaluation cap");
  std::vector<bool> covered(m, false);
  for (std::uint64_t i = 0; i < space.size(); ++i) covered[apply_ranking_rule(rule, space.at(i))] = true;
  AxiomVerdict v{"onto", true, {}, {}};
  for (int a = 0; a < m; ++a)
    if (!covered[a]) {
      v.holds = false;
      v.witness = OntoWitness{a};
      return v;
    }
  return v;
}

struct DictatorshipReport {
  std::vector<int> dictators;
  // for each agent, a profile where her top loses (empty for dictators)
  std::vector<std::optional<RankingProfile>> counterexamples;
  CoverageInfo coverage;
};

inline DictatorshipReport check_dictatorship(const RankingRuleSpec& rule, int m, int n,
                                             const SpaceOptions& opt = {}) {
  RankingSpace space(m, n);
  if (detail::mul_sat(space.size(), n) > opt.eval_cap)
    throw CapExceededError("dictatorship: ranking space exceeds evaluation cap");
  DictatorshipReport report;
  report.counterexamples.resize(n);
  for (int agent = 0; agent < n; ++agent) {
    bool dictator = true;
    for (std::uint64_t i = 0; i < space.size() && dictator; ++i) {
      RankingProfile prof = space.at(i);
      if (apply_ranking_rule(rule, prof) != top_of(prof.rankings[agent])) {
        dictator = false;
        report.counterexamples[agent] = std::move(prof);
      }
    }
    if (dictator) report.dictators.push_back(agent);
  }
  return report;
}

// Strategyproofness for ranking ballots, in the standard reading: no
// misreport yields an outcome the agent strictly prefers under her true
// ranking.
inline AxiomVerdict check_sp_ranking(const RankingRuleSpec& rule, int m, int n, const SpaceOptions& opt = {}) {
  RankingSpace space(m, n);
  std::uint64_t per_profile = detail::mul_sat(n, space.perms.size());
  if (detail::mul_sat(space.size(), per_profile) > opt.eval_cap)
    throw CapExceededError("sp-ranking: ranking space exceeds evaluation cap");

  auto probe = [&](std::uint64_t idx) -> std::optional<Witness> {
    RankingProfile prof = space.at(idx);
    int before = apply_ranking_rule(rule, prof);
    for (int agent = 0; agent < n; ++agent) {
      const Ranking& truth = prof.rankings[agent];
      int pos_before = position_of(truth, before);
      if (pos_before == 0) continue;  // already gets her top
      RankingProfile deviated = prof;
      for (const Ranking& misreport : space.perms) {
        deviated.rankings[agent] = misreport;
        int after = apply_ranking_rule(rule, deviated);
        int pos_after = position_of(truth, after);
        if (pos_after < pos_before)
          return Witness{RankingManipulationWitness{prof, agent, misreport, before, after, pos_before, pos_after}};
      }
    }
    return std::nullopt;
  };

  AxiomVerdict v{"sp-ranking", true, {}, {}};
  auto found = find_first<Witness>(space.size(), probe);
  if (found) {
    v.holds = false;
    v.witness = std::move(found->second);
  }
  return v;
}

// Witness replay: rebuilds the deviated profile, re-applies the rule, and
// reclassifies the improvement pattern from scratch.
struct ReplayResult {
  bool outcomes_match = false;
  bool distances_match = false;
  bool all_weak = false;    // every coalition member weakly improves
  bool any_strict = false;  // at least one strictly improves
  bool all_strict = false;  // every member strictly improves
};

inline ReplayResult replay(const RuleSpec& rule, const ManipulationWitness& w) {
  ReplayResult r;
  Committee before = apply_rule(rule, w.profile);
  ApprovalProfile deviated = w.profile;
  for (std::size_t j = 0; j < w.coalition.size(); ++j) deviated.ballots[w.coalition[j]] = w.misreports[j];
  Committee after = apply_rule(rule, deviated);
  r.outcomes_match = before == w.before && after == w.after;
  r.all_weak = r.all_strict = true;
  r.any_strict = false;
  r.distances_match = true;
  for (std::size_t j = 0; j < w.coalition.size(); ++j) {
    int db = hamming(before, w.profile.ballots[w.coalition[j]]);
    int da = hamming(after, w.profile.ballots[w.coalition[j]]);
    if (std::pair{db, da} != w.distances[j]) r.distances_match = false;
    if (da > db) r.all_weak = false;
    if (da < db) r.any_strict = true;
    if (da >= db) r.all_strict = false;
  }
  return r;
}

// true iff the witness replays exactly and certifies a violation of `axiom`
// (one of "sp", "weak-gsp", "strong-gsp").
inline bool witness_certifies(const RuleSpec& rule, const ManipulationWitness& w, const std::string& axiom) {
  ReplayResult r = replay(rule, w);
  if (!r.outcomes_match || !r.distances_match) return false;
  if (axiom == "sp") return w.coalition.size() == 1 && r.all_strict;
  if (axiom == "weak-gsp") return r.all_strict;
  if (axiom == "strong-gsp") return r.all_weak && r.any_strict;
  return false;
}

}  // namespace mwav
