#pragma once

#include <string>

#include "mwav/core.hpp"
#include "mwav/rules.hpp"

namespace mwav {

// Raised when a multi-winner rule applied to a constructed approval election
// leaves more than one non-dummy alternative in the committee. Carries the
// offending outcome for diagnosis; Pareto-efficient rules never trigger it.
struct NotSingletonError : std::runtime_error {
  Committee outcome;
  explicit NotSingletonError(Committee c)
      : std::runtime_error("induced winner undefined: committee keeps several non-dummy alternatives"), outcome(c) {}
};

// Approval election built from a ranking election: one agent copy per prefix
// length, plus k-1 dummy alternatives approved by everyone. Dummies take the
// top indices m..m+k-2 so that source alternatives keep their indices.
struct ReductionOutput {
  ApprovalProfile approval;
  Mask dummies = 0;     // the set D
  int source_n = 0;     // ranking-side agents
  int source_m = 0;     // ranking-side alternatives
  int k = 0;

  int copy_agent(int source_agent, int level) const {
    // level j in 1..m-1: ballot = top-j prefix union D
    return source_agent * (source_m - 1) + (level - 1);
  }
  std::pair<int, int> source_of(int approval_agent) const {
    return {approval_agent / (source_m - 1), approval_agent % (source_m - 1) + 1};
  }
};

inline ReductionOutput build_approval_election(const RankingProfile& ranking, int k) {
  ranking.validate();
  const int m = ranking.params.m;
  const int n = ranking.params.n;
  if (m < 2) throw std::invalid_argument("reduction: needs m >= 2 ranking alternatives");
  if (k < 1 || m + k - 1 > kMaxAlternatives) throw std::invalid_argument("reduction: committee size out of range");

  ReductionOutput out;
  out.source_n = n;
  out.source_m = m;
  out.k = k;
  out.dummies = full_mask(m + k - 1) & ~full_mask(m);

  out.approval.params = ElectionParams{m + k - 1, k, (m - 1) * n};
  out.approval.ballots.reserve(out.approval.params.n);
  for (int i = 0; i < n; ++i) {
    Mask prefix = 0;
    for (int j = 1; j <= m - 1; ++j) {
      prefix |= Mask{1} << ranking.rankings[i][j - 1];
      out.approval.ballots.push_back(Ballot{prefix | out.dummies});
    }
  }
  out.approval.validate();
  return out;
}

// T(>) = the unique member of R(P(>)) \ D.
inline int induced_winner(const RuleSpec& rule, const RankingProfile& ranking, int k) {
  ReductionOutput red = build_approval_election(ranking, k);
  Committee outcome = apply_rule(rule, red.approval);
  Mask non_dummy = outcome.bits & ~red.dummies;
  if (std::popcount(non_dummy) != 1) throw NotSingletonError(outcome);
  return std::countr_zero(non_dummy);
}

}  // namespace mwav
