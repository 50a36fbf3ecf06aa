#ifndef WSMAN_TRIM_HPP
#define WSMAN_TRIM_HPP

// Sparsification of a weakly secure SMAN: drop source-relay links, keeping the
// weak security condition, until every source is linked to exactly n - k + 2
// relays. The row-form condition with I = {i} makes that the least any source
// can have. Committing the first valid removal can strand a source above the
// target, and some weakly secure networks admit no such sub-network at all
// (k = n = 4, rows 1100 1010 1111 1001), so the scan backtracks out of dead
// ends and reports infeasibility only after exhausting every choice.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "wsman/errors.hpp"
#include "wsman/flow.hpp"
#include "wsman/sman.hpp"

namespace wsman {

enum class TrimVerifier { flow, brute_force };

struct TrimOptions {
  TrimVerifier verifier = TrimVerifier::flow;
  /// Re-check every committed intermediate matrix with both verifiers.
  bool audit = false;
};

struct Removal {
  std::size_t source;
  std::size_t relay;

  friend bool operator==(const Removal&, const Removal&) = default;
};

struct TrimResult {
  Sman trimmed;
  std::vector<Removal> removals;
  std::size_t verifier_calls = 0;
  /// Tentative removals undone because they led to a dead end.
  std::size_t backtracks = 0;
};

struct TrimStep {
  Sman sman;
  Verdict verdict;
};

inline Verdict verify_weak_security(const Sman& s, TrimVerifier verifier) {
  if (verifier == TrimVerifier::flow) return check_min_cut_condition(s).verdict;
  return check_weak_security_condition(s);
}

/// Copy of `s` without the link (source, relay), plus the verifier's verdict on it.
inline TrimStep trim_step(const Sman& s, std::size_t source, std::size_t relay,
                          TrimVerifier verifier = TrimVerifier::flow) {
  if (!s.link(source, relay)) {
    throw UsageError("no link between source " + std::to_string(source + 1) + " and relay " +
                     std::to_string(relay + 1));
  }
  Sman next = s;
  next.set_link(source, relay, false);
  Verdict v = verify_weak_security(next, verifier);
  return {std::move(next), std::move(v)};
}

namespace detail {

class TrimSearch {
 public:
  TrimSearch(const TrimOptions& options, std::size_t target, TrimResult& result)
      : options_(options), target_(target), result_(result) {}

  /// Trims sources from `source` on; relays below `first_relay` of that source
  /// were already decided. Leaves `current` untouched when no completion exists.
  bool extend(Sman& current, std::size_t source, std::size_t first_relay) {
    while (source < current.k() && current.row_support(source).size() == target_) {
      ++source;
      first_relay = 0;
    }
    if (source == current.k()) return true;

    const auto members = current.row_support(source).members();
    const std::size_t excess = members.size() - target_;
    std::size_t remaining = static_cast<std::size_t>(
        std::count_if(members.begin(), members.end(), [&](std::size_t j) { return j >= first_relay; }));
    for (auto relay : members) {
      if (relay < first_relay) continue;
      if (remaining-- < excess) break;
      auto step = trim_step(current, source, relay, options_.verifier);
      ++result_.verifier_calls;
      if (!step.verdict.holds) continue;
      if (options_.audit) {
        const bool brute = check_weak_security_condition(step.sman).holds;
        const bool flow = check_min_cut_condition(step.sman).verdict.holds;
        if (!brute || !flow) throw ConsistencyError("audit: intermediate matrix violates weak security");
      }
      result_.removals.push_back({source, relay});
      if (extend(step.sman, source, relay + 1)) {
        current = std::move(step.sman);
        return true;
      }
      result_.removals.pop_back();
      ++result_.backtracks;
    }
    return false;
  }

 private:
  const TrimOptions& options_;
  std::size_t target_;
  TrimResult& result_;
};

}  // namespace detail

/// Depth-first over removal sets: sources in increasing index, candidate
/// relays in increasing index, the first removal that keeps the condition is
/// tried first. When that never dead-ends the result is the plain greedy one.
inline TrimResult trim(const Sman& s, const TrimOptions& options = {}) {
  TrimResult result{s, {}, 0, 0};
  const Verdict initial = verify_weak_security(s, options.verifier);
  ++result.verifier_calls;
  if (!initial.holds) {
    throw InfeasibleError("weak security condition fails; nothing to trim", initial.witness_kind, initial.witness);
  }
  if (s.k() < 2) return result;

  detail::TrimSearch search(options, s.n() - s.k() + 2, result);
  if (!search.extend(result.trimmed, 0, 0)) {
    throw InfeasibleError("no sub-network with n - k + 2 links per source keeps the weak security condition",
                          WitnessKind::none, {});
  }
  return result;
}

}  // namespace wsman

#endif  // WSMAN_TRIM_HPP
