#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mwav/core.hpp"
#include "mwav/reduction.hpp"

namespace mwav {

// Explicit profile -> alternative function over the full ranking space.
struct RankingRuleTable {
  int m = 0, n = 0;
  std::vector<int> outcomes;  // indexed by RankingSpace index

  void validate() const {
    RankingSpace space(m, n);
    if (outcomes.size() != space.size())
      throw DimensionError("ranking rule table: outcome count != profile space size");
    for (int a : outcomes)
      if (a < 0 || a >= m) throw DimensionError("ranking rule table: outcome out of range");
  }
};

enum class RankingRuleKind { Dictatorship, ConstantWinner, Borda, Plurality, Induced, Table };

// Single-winner rules over ranking ballots. Borda and plurality break score
// ties toward the smaller alternative index; Induced wraps a multi-winner
// approval rule through the reduction.
struct RankingRuleSpec {
  RankingRuleKind kind = RankingRuleKind::Dictatorship;
  int agent = 0;      // Dictatorship
  int winner = 0;     // ConstantWinner
  RuleSpec base;      // Induced
  int k = 1;          // Induced committee size
  std::shared_ptr<const RankingRuleTable> table;

  std::string name() const {
    switch (kind) {
      case RankingRuleKind::Dictatorship: return "dictatorship:" + std::to_string(agent);
      case RankingRuleKind::ConstantWinner: return "constant:" + std::to_string(winner);
      case RankingRuleKind::Borda: return "borda";
      case RankingRuleKind::Plurality: return "plurality";
      case RankingRuleKind::Induced: return "induced:" + base.name();
      case RankingRuleKind::Table: return "table";
    }
    return "?";
  }
};

inline RankingRuleSpec ranking_dictatorship(int agent) {
  RankingRuleSpec r;
  r.kind = RankingRuleKind::Dictatorship;
  r.agent = agent;
  return r;
}
inline RankingRuleSpec ranking_constant(int winner) {
  RankingRuleSpec r;
  r.kind = RankingRuleKind::ConstantWinner;
  r.winner = winner;
  return r;
}
inline RankingRuleSpec ranking_borda() { return RankingRuleSpec{RankingRuleKind::Borda}; }
inline RankingRuleSpec ranking_plurality() { return RankingRuleSpec{RankingRuleKind::Plurality}; }
inline RankingRuleSpec induced_rule(RuleSpec base, int k) {
  RankingRuleSpec r;
  r.kind = RankingRuleKind::Induced;
  r.base = std::move(base);
  r.k = k;
  return r;
}
inline RankingRuleSpec make_ranking_table(RankingRuleTable t) {
  RankingRuleSpec r;
  r.kind = RankingRuleKind::Table;
  r.table = std::make_shared<const RankingRuleTable>(std::move(t));
  return r;
}

inline int apply_ranking_rule(const RankingRuleSpec& rule, const RankingProfile& profile) {
  profile.validate();
  const int m = profile.params.m;
  const int n = profile.params.n;
  switch (rule.kind) {
    case RankingRuleKind::Dictatorship:
      if (rule.agent < 0 || rule.agent >= n) throw DimensionError("dictatorship: agent out of range");
      return top_of(profile.rankings[rule.agent]);
    case RankingRuleKind::ConstantWinner:
      if (rule.winner < 0 || rule.winner >= m) throw DimensionError("constant winner out of range");
      return rule.winner;
    case RankingRuleKind::Borda: {
      std::vector<int> score(m, 0);
      for (const Ranking& r : profile.rankings)
        for (int pos = 0; pos < m; ++pos) score[r[pos]] += m - 1 - pos;
      int best = 0;
      for (int a = 1; a < m; ++a)
        if (score[a] > score[best]) best = a;
      return best;
    }
    case RankingRuleKind::Plurality: {
      std::vector<int> votes(m, 0);
      for (const Ranking& r : profile.rankings) ++votes[top_of(r)];
      int best = 0;
      for (int a = 1; a < m; ++a)
        if (votes[a] > votes[best]) best = a;
      return best;
    }
    case RankingRuleKind::Induced:
      return induced_winner(rule.base, profile, rule.k);
    case RankingRuleKind::Table: {
      const RankingRuleTable& t = *rule.table;
      if (t.m != m || t.n != n) throw DimensionError("ranking table: dimension mismatch");
      RankingSpace space(m, n);
      return t.outcomes[space.index_of(profile)];
    }
  }
  throw std::logic_error("apply_ranking_rule: unreachable");
}

}  // namespace mwav
