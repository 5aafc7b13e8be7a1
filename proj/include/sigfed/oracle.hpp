#pragma once

// Brute-force references for tests. Deliberately share nothing with the
// discovery code beyond the data types.

#include "sigfed/fed.hpp"
#include "sigfed/folding.hpp"
#include "sigfed/sid.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sigfed::oracle {

/// Enumerates every window over the folded points, keeps those meeting
/// min_conf and (when given) max_len, then drops any kept window that strictly
/// contains another kept window. Sorted by (start, end).
std::vector<SignificantInterval> brute_force_si(const FoldedSeries& series, const Percent& min_conf,
                                                std::optional<Offset> max_len);

/// Checks every episode against the input: a base interval and members in
/// input order that satisfy the window rule, distinct entities, level within
/// [2, n], start = base start, end = max member end, PC = min member confidence.
bool check_episode_set(const FedInput& input, Offset window, Semantics semantics,
                       std::span<const Episode> episodes);

}  // namespace sigfed::oracle
