#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netdecomp {

// Round accounting for the synchronous small-message model. Each charge rule
// stands for a primitive that only ever sends O(log n)-bit messages:
//   bfs                 one hop per round, a message carries a distance or id.
//   steiner-aggregate   pipelined converge-cast/broadcast of counters along
//                       trees of depth R that share edges at most L times.
//   leader              BFS tree build, min-id converge-cast and broadcast.
// Constants are fixed (depth d costs exactly d rounds and so on) so that
// ledgers are reproducible rather than merely asymptotic.

struct LedgerEntry {
  std::string label;
  std::uint64_t rounds = 0;

  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

class RoundLedger {
 public:
  std::uint64_t total() const { return total_; }
  const std::vector<LedgerEntry>& breakdown() const { return breakdown_; }

  void charge(std::string label, std::uint64_t rounds) {
    total_ += rounds;
    breakdown_.push_back({std::move(label), rounds});
  }

  void charge_bfs(std::uint64_t depth) { charge("bfs", depth); }

  void charge_steiner_aggregate(std::uint64_t depth, std::uint64_t congestion) {
    if (congestion < 1) throw std::invalid_argument("congestion must be >= 1");
    charge("steiner-aggregate", depth * congestion);
  }

  /// Leader election, min-id or in-order labeling on a diameter-D component.
  void charge_leader(std::uint64_t diameter) { charge("leader", 3 * diameter); }

  /// Sequential composition.
  void append(const RoundLedger& other) {
    total_ += other.total_;
    breakdown_.insert(breakdown_.end(), other.breakdown_.begin(), other.breakdown_.end());
  }

  friend bool operator==(const RoundLedger&, const RoundLedger&) = default;

 private:
  std::uint64_t total_ = 0;
  std::vector<LedgerEntry> breakdown_;
};

/// Parallel composition over independent components: the slowest one
/// dominates. The first maximal ledger wins ties.
inline RoundLedger merge_parallel(std::span<const RoundLedger> ledgers) {
  if (ledgers.empty()) throw std::invalid_argument("merge_parallel: empty ledger list");
  if (ledgers.size() == 1) return ledgers.front();
  std::size_t best = 0;
  for (std::size_t i = 1; i < ledgers.size(); ++i) {
    if (ledgers[i].total() > ledgers[best].total()) best = i;
  }
  RoundLedger out = ledgers[best];
  out.charge("parallel-over-" + std::to_string(ledgers.size()) + "-components", 0);
  return out;
}

}  // namespace netdecomp
