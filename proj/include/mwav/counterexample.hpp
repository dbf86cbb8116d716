#pragma once

#include <optional>
#include <string>

#include "mwav/axioms.hpp"
#include "mwav/reduction.hpp"

namespace mwav {

// Runs onto and strategyproofness on the induced single-winner rule; when SP
// fails, converts the single-agent ranking deviation into the coalition
// deviation of that agent's copies and certifies it as a strong-GSP witness
// against the base rule.
struct TransferReport {
  AxiomVerdict onto;
  AxiomVerdict sp_ranking;
  std::optional<ManipulationWitness> base_witness;
};

inline TransferReport transfer_check(const RuleSpec& base, int m, int n, int k, const SpaceOptions& opt = {}) {
  RankingRuleSpec induced = induced_rule(base, k);
  TransferReport report;
  report.onto = check_onto(induced, m, n, opt);
  report.sp_ranking = check_sp_ranking(induced, m, n, opt);
  if (report.sp_ranking.holds) return report;

  const auto& rw = std::get<RankingManipulationWitness>(report.sp_ranking.witness);
  ReductionOutput truthful = build_approval_election(rw.profile, k);
  RankingProfile deviated_ranking = rw.profile;
  deviated_ranking.rankings[rw.agent] = rw.misreport;
  ReductionOutput deviated = build_approval_election(deviated_ranking, k);

  ManipulationWitness w;
  w.profile = truthful.approval;
  for (int j = 1; j <= m - 1; ++j) {
    int idx = truthful.copy_agent(rw.agent, j);
    w.coalition.push_back(idx);
    w.misreports.push_back(deviated.approval.ballots[idx]);
  }
  w.before = apply_rule(base, truthful.approval);
  w.after = apply_rule(base, deviated.approval);
  for (int idx : w.coalition)
    w.distances.emplace_back(hamming(w.before, truthful.approval.ballots[idx]),
                             hamming(w.after, truthful.approval.ballots[idx]));

  if (!witness_certifies(base, w, "strong-gsp"))
    throw std::logic_error("transfer_check: converted witness failed replay");
  report.base_witness = std::move(w);
  return report;
}

// The final step of the impossibility argument, run mechanically: build the
// two rankings that differ only in their top two positions, derive the three
// profiles P_x, P_y, P_xy, and extract the deviating coalition dictated by
// whichever case the rule's outcome on P_xy falls in.
struct CounterexampleResult {
  enum class Status { ViolationFound, PremiseFailedX, PremiseFailedY };
  Status status = Status::ViolationFound;

  ApprovalProfile px, py, pxy;
  Committee out_x, out_y, out_xy;      // out_xy meaningful only when premises hold
  Committee expected_x, expected_y;    // {x} u D and {y} u D
  Mask dummies = 0;
  int x = 0, y = 0;
  std::optional<ManipulationWitness> witness;  // profile = pxy
};

inline CounterexampleResult counterexample_run(const RuleSpec& rule, int m_prime, int k, int x = 0, int y = 1) {
  const int m = m_prime - k + 1;  // ranking-side alternatives; the proof fixes n = 3
  if (m < 3) throw std::invalid_argument("counterexample: needs k <= m' - 2");
  if (x == y || x < 0 || y < 0 || x >= m || y >= m)
    throw std::invalid_argument("counterexample: x and y must be distinct ranking-side alternatives");

  Ranking rank_x{x, y}, rank_y{y, x};
  for (int a = 0; a < m; ++a)
    if (a != x && a != y) {
      rank_x.push_back(a);
      rank_y.push_back(a);
    }

  RankingProfile prof_x{ElectionParams{m, 0, 3}, {rank_x, rank_x, rank_y}};
  RankingProfile prof_y{ElectionParams{m, 0, 3}, {rank_y, rank_x, rank_y}};

  ReductionOutput red_x = build_approval_election(prof_x, k);
  ReductionOutput red_y = build_approval_election(prof_y, k);

  CounterexampleResult res;
  res.px = red_x.approval;
  res.py = red_y.approval;
  res.dummies = red_x.dummies;
  res.x = x;
  res.y = y;
  res.expected_x = Committee{(Mask{1} << x) | red_x.dummies};
  res.expected_y = Committee{(Mask{1} << y) | red_x.dummies};

  // P_xy: same as P_x except agent (1,1) approves {x,y} u D
  res.pxy = res.px;
  const int a11 = red_x.copy_agent(0, 1);
  res.pxy.ballots[a11] = Ballot{(Mask{1} << x) | (Mask{1} << y) | red_x.dummies};

  res.out_x = apply_rule(rule, res.px);
  res.out_y = apply_rule(rule, res.py);
  if (res.out_x != res.expected_x) {
    res.status = CounterexampleResult::Status::PremiseFailedX;
    return res;
  }
  if (res.out_y != res.expected_y) {
    res.status = CounterexampleResult::Status::PremiseFailedY;
    return res;
  }

  res.out_xy = apply_rule(rule, res.pxy);
  const int a21 = red_x.copy_agent(1, 1);
  const int a31 = red_x.copy_agent(2, 1);

  ManipulationWitness w;
  w.profile = res.pxy;
  if ((res.out_xy.bits & ~red_x.dummies) != (Mask{1} << x)) {
    // case R(P_xy) \ D != {x}: agents (1,1) and (2,1) deviate to their P_x ballots
    w.coalition = {a11, a21};
    w.misreports = {res.px.ballots[a11], res.px.ballots[a21]};
    w.before = res.out_xy;
    w.after = res.expected_x;
  } else {
    // case R(P_xy) = {x} u D: agents (1,1) and (3,1) deviate to their P_y ballots
    w.coalition = {a11, a31};
    w.misreports = {res.py.ballots[a11], res.py.ballots[a31]};
    w.before = res.out_xy;
    w.after = res.expected_y;
  }
  for (std::size_t j = 0; j < w.coalition.size(); ++j)
    w.distances.emplace_back(hamming(w.before, res.pxy.ballots[w.coalition[j]]),
                             hamming(w.after, res.pxy.ballots[w.coalition[j]]));

  if (!witness_certifies(rule, w, "strong-gsp"))
    throw std::logic_error("counterexample_run: constructed witness failed replay");
  res.witness = std::move(w);
  res.status = CounterexampleResult::Status::ViolationFound;
  return res;
}

}  // namespace mwav
