#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwav {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kMaxAlternatives = 31;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::uint64_t kDefaultEvalCap = 100'000'000;  // rule evaluations

struct ParseError : std::runtime_error {
  std::string origin;
  int line;
  ParseError(const std::string& org, int ln, const std::string& msg)
      : std::runtime_error(org + ":" + std::to_string(ln) + ": " + msg), origin(org), line(ln) {}
};

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Alternatives are indices 0..m-1; sets of alternatives are bit masks with
// bit a set iff alternative a is in the set.
using Mask = std::uint32_t;

inline Mask full_mask(int m) { return m >= 32 ? ~Mask{0} : (Mask{1} << m) - 1; }

inline std::vector<int> members_of(Mask bits) {
  std::vector<int> out;
  while (bits) {
    out.push_back(std::countr_zero(bits));
    bits &= bits - 1;
  }
  return out;
}

struct ElectionParams {
  int m = 0;  // alternatives
  int k = 0;  // committee size
  int n = 0;  // agents

  void validate() const {
    if (m < 1 || m > kMaxAlternatives)
      throw std::invalid_argument("params: m must be in 1.." + std::to_string(kMaxAlternatives));
    if (k < 1 || k > m) throw std::invalid_argument("params: k must satisfy 1 <= k <= m");
    if (n < 1) throw std::invalid_argument("params: n must be >= 1");
  }
  friend bool operator==(const ElectionParams&, const ElectionParams&) = default;
};

// An approval ballot: any subset of the alternatives, empty and full included.
struct Ballot {
  Mask bits = 0;

  int size() const { return std::popcount(bits); }
  bool contains(int a) const { return (bits >> a) & 1u; }
  friend auto operator<=>(const Ballot&, const Ballot&) = default;
};

// A committee: a set of exactly k alternatives. The size constraint is
// enforced where committees are produced, not by the type itself.
struct Committee {
  Mask bits = 0;

  int size() const { return std::popcount(bits); }
  bool contains(int a) const { return (bits >> a) & 1u; }
  friend auto operator<=>(const Committee&, const Committee&) = default;
};

// d(Q,T) = |Q\T| + |T\Q|, the Hamming distance of the bit-vector encodings.
inline int hamming(Mask a, Mask b) { return std::popcount(a ^ b); }
inline int hamming(const Ballot& a, const Ballot& b) { return hamming(a.bits, b.bits); }
inline int hamming(const Ballot& a, const Committee& b) { return hamming(a.bits, b.bits); }
inline int hamming(const Committee& a, const Ballot& b) { return hamming(a.bits, b.bits); }
inline int hamming(const Committee& a, const Committee& b) { return hamming(a.bits, b.bits); }

struct ApprovalProfile {
  ElectionParams params;
  std::vector<Ballot> ballots;

  void validate() const {
    params.validate();
    if (static_cast<int>(ballots.size()) != params.n)
      throw DimensionError("profile: expected " + std::to_string(params.n) + " ballots, got " +
                           std::to_string(ballots.size()));
    for (const Ballot& b : ballots)
      if (b.bits & ~full_mask(params.m)) throw DimensionError("profile: ballot indexes alternative >= m");
  }
  friend bool operator==(const ApprovalProfile&, const ApprovalProfile&) = default;
};

// A strict ranking: permutation of 0..m-1, most-preferred first.
using Ranking = std::vector<int>;

inline int position_of(const Ranking& r, int alt) {
  for (int i = 0; i < static_cast<int>(r.size()); ++i)
    if (r[i] == alt) return i;
  throw std::invalid_argument("ranking does not contain alternative " + std::to_string(alt));
}

inline int top_of(const Ranking& r) { return r.front(); }

// Ranking-based election input. params.k is carried but unused on this side.
struct RankingProfile {
  ElectionParams params;
  std::vector<Ranking> rankings;

  void validate() const {
    if (params.m < 1 || params.m > kMaxAlternatives) throw std::invalid_argument("ranking profile: bad m");
    if (params.n < 1) throw std::invalid_argument("ranking profile: bad n");
    if (static_cast<int>(rankings.size()) != params.n)
      throw DimensionError("ranking profile: expected " + std::to_string(params.n) + " rankings");
    for (const Ranking& r : rankings) {
      if (static_cast<int>(r.size()) != params.m) throw DimensionError("ranking is not a permutation of 0..m-1");
      Mask seen = 0;
      for (int a : r) {
        if (a < 0 || a >= params.m || (seen & (Mask{1} << a)))
          throw DimensionError("ranking is not a permutation of 0..m-1");
        seen |= Mask{1} << a;
      }
    }
  }
  friend bool operator==(const RankingProfile&, const RankingProfile&) = default;
};

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// All k-subsets of 0..m-1 exactly once, in lexicographic order of the sorted
// member lists. This is the global canonical committee order; tie-breaking
// and rule-table indexing both derive from it.
inline std::vector<Committee> enumerate_committees(int m, int k) {
  if (m < 1 || m > kMaxAlternatives || k < 1 || k > m)
    throw std::invalid_argument("enumerate_committees: need 1 <= k <= m <= " + std::to_string(kMaxAlternatives));
  std::vector<Committee> out;
  out.reserve(binomial(m, k));
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Mask mask = 0;
    for (int v : idx) mask |= Mask{1} << v;
    out.push_back(Committee{mask});
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline std::vector<Committee> enumerate_committees(const ElectionParams& p) {
  p.validate();
  return enumerate_committees(p.m, p.k);
}

// Rank of a committee in the canonical order, without materializing the list.
inline std::uint64_t committee_rank(const Committee& c, int m, int k) {
  if (c.size() != k) throw std::invalid_argument("committee_rank: wrong committee size");
  std::uint64_t rank = 0;
  int prev = -1, rem = k;
  for (int a : members_of(c.bits)) {
    for (int v = prev + 1; v < a; ++v) rank += binomial(m - 1 - v, rem - 1);
    prev = a;
    --rem;
  }
  return rank;
}

enum class BallotRestriction { All, NonEmpty, ProperNonEmpty };

inline std::string restriction_name(BallotRestriction r) {
  switch (r) {
    case BallotRestriction::All: return "all";
    case BallotRestriction::NonEmpty: return "nonempty";
    case BallotRestriction::ProperNonEmpty: return "proper";
  }
  return "?";
}

inline BallotRestriction parse_restriction(const std::string& s) {
  if (s == "all") return BallotRestriction::All;
  if (s == "nonempty") return BallotRestriction::NonEmpty;
  if (s == "proper" || s == "proper-nonempty") return BallotRestriction::ProperNonEmpty;
  throw std::invalid_argument("unknown ballot restriction: " + s);
}

// Indexable view of a ballot space. Canonical ballot order is ascending mask
// value; the restrictions drop the empty and/or the full set from the front
// and back of that range. An optional approval-size cap (used to model
// budget-feasible ballots) switches to a materialized list, same order.
struct BallotSpace {
  int m = 0;
  BallotRestriction restriction = BallotRestriction::All;
  int max_size = -1;  // -1: no cap
  std::vector<Ballot> capped;

  BallotSpace() = default;
  BallotSpace(int m_, BallotRestriction r, int cap = -1) : m(m_), restriction(r) {
    if (cap >= m) cap = -1;
    max_size = cap;
    if (max_size >= 0) {
      if (m > 20) throw CapExceededError("capped ballot space too large to materialize");
      for (Mask bits = 0; bits <= full_mask(m); ++bits) {
        Ballot b{bits};
        if (in_restriction(b) && b.size() <= max_size) capped.push_back(b);
      }
    }
  }

  std::uint64_t size() const {
    if (max_size >= 0) return capped.size();
    std::uint64_t all = std::uint64_t{1} << m;
    switch (restriction) {
      case BallotRestriction::All: return all;
      case BallotRestriction::NonEmpty: return all - 1;
      case BallotRestriction::ProperNonEmpty: return all - 2;
    }
    return 0;
  }
  Ballot at(std::uint64_t idx) const {
    if (idx >= size()) throw std::out_of_range("BallotSpace::at");
    if (max_size >= 0) return capped[idx];
    Mask base = restriction == BallotRestriction::All ? 0u : 1u;
    return Ballot{static_cast<Mask>(idx + base)};
  }
  std::uint64_t index_of(const Ballot& b) const {
    if (!contains(b)) throw std::invalid_argument("ballot not in restricted space");
    if (max_size >= 0) {
      auto it = std::lower_bound(capped.begin(), capped.end(), b);
      return static_cast<std::uint64_t>(it - capped.begin());
    }
    Mask base = restriction == BallotRestriction::All ? 0u : 1u;
    return b.bits - base;
  }
  bool contains(const Ballot& b) const {
    if (!in_restriction(b)) return false;
    return max_size < 0 || b.size() <= max_size;
  }

 private:
  bool in_restriction(const Ballot& b) const {
    if (b.bits & ~full_mask(m)) return false;
    if (restriction != BallotRestriction::All && b.bits == 0) return false;
    if (restriction == BallotRestriction::ProperNonEmpty && b.bits == full_mask(m)) return false;
    return true;
  }
};

inline std::vector<Ballot> enumerate_ballot_space(const ElectionParams& p, BallotRestriction r) {
  p.validate();
  if (p.m > 20) throw CapExceededError("ballot space too large to materialize");
  BallotSpace space{p.m, r};
  std::vector<Ballot> out;
  out.reserve(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
  return out;
}

inline std::uint64_t pow_saturating(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

// The profile space: n-fold product of a ballot space. Profile index is the
// mixed-radix number whose most significant digit is agent 0's ballot index.
struct ProfileSpace {
  ElectionParams params;
  BallotSpace ballots;

  ProfileSpace(const ElectionParams& p, BallotRestriction r, int max_ballot_size = -1)
      : params(p), ballots{p.m, r, max_ballot_size} {
    p.validate();
  }

  std::uint64_t size() const { return pow_saturating(ballots.size(), params.n); }

  ApprovalProfile at(std::uint64_t idx) const {
    ApprovalProfile prof;
    prof.params = params;
    prof.ballots.resize(params.n);
    std::uint64_t s = ballots.size();
    for (int i = params.n - 1; i >= 0; --i) {
      prof.ballots[i] = ballots.at(idx % s);
      idx /= s;
    }
    return prof;
  }
  std::uint64_t index_of(const ApprovalProfile& p) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < params.n; ++i) idx = idx * ballots.size() + ballots.index_of(p.ballots[i]);
    return idx;
  }
};

// All permutations of 0..m-1 in lexicographic order.
inline std::vector<Ranking> enumerate_rankings(int m) {
  if (m < 1 || m > 8) throw CapExceededError("ranking space only enumerable for m <= 8");
  Ranking r(m);
  std::iota(r.begin(), r.end(), 0);
  std::vector<Ranking> out;
  do {
    out.push_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

struct RankingSpace {
  int m = 0, n = 0;
  std::vector<Ranking> perms;

  RankingSpace(int m_, int n_) : m(m_), n(n_), perms(enumerate_rankings(m_)) {
    if (n < 1) throw std::invalid_argument("RankingSpace: n >= 1 required");
  }

  std::uint64_t size() const { return pow_saturating(perms.size(), n); }

  RankingProfile at(std::uint64_t idx) const {
    RankingProfile prof;
    prof.params = ElectionParams{m, 0, n};
    prof.rankings.resize(n);
    std::uint64_t s = perms.size();
    for (int i = n - 1; i >= 0; --i) {
      prof.rankings[i] = perms[idx % s];
      idx /= s;
    }
    return prof;
  }
  std::uint64_t perm_index(const Ranking& r) const {
    auto it = std::lower_bound(perms.begin(), perms.end(), r);
    if (it == perms.end() || *it != r) throw std::invalid_argument("not a permutation of 0..m-1");
    return static_cast<std::uint64_t>(it - perms.begin());
  }
  std::uint64_t index_of(const RankingProfile& p) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * perms.size() + perm_index(p.rankings[i]);
    return idx;
  }
};

// Deterministic bounded draws; mt19937_64 is fully specified by the standard,
// and we avoid distribution classes on purpose.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  std::uint64_t below(std::uint64_t bound) { return engine() % bound; }
};

}  // namespace mwav
