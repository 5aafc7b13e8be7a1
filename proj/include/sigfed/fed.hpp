#pragma once

#include "sigfed/config.hpp"
#include "sigfed/sid.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sigfed {

/// Entities in accretion order (base first), the pattern interval and its
/// Pattern Confidence (minimum member confidence).
struct Episode {
    std::vector<std::string> entities;
    Offset start = 0;
    Offset end = 0;
    Percent confidence;

    std::size_t level() const { return entities.size(); }

    friend bool operator==(const Episode&, const Episode&) = default;
};

/// Significant intervals of all entities, stably sorted by start, and the
/// number of distinct entities among them.
struct FedInput {
    std::vector<SignificantInterval> intervals;
    std::size_t distinct_entities = 0;

    /// Stable-sorts by start and counts entities.
    static FedInput from_intervals(std::vector<SignificantInterval> intervals);

    /// Throws DataError when intervals are unsorted or the entity count is off.
    void validate() const;
};

/// Minimum of the member confidences. Throws std::invalid_argument when empty.
Percent pattern_confidence(std::span<const Percent> confidences);

/// One pass over the sorted intervals. Each interval acts once as the base of a
/// chain; later intervals starting within `window` of the base start join the
/// chain in encounter order (entities already in the chain are skipped) and
/// every join emits an episode one level higher. The chain stops at the first
/// interval starting beyond the window or once every entity has joined.
///
/// Under Semantics::E a joiner must also end within `window` of the base
/// start; the first joiner that does not ends the chain, so E episodes are
/// always a prefix of the S episodes grown from the same base.
///
/// Output is grouped by level, each level in base order. Throws DataError on
/// unsorted input and ConfigError on a negative window.
std::vector<Episode> one_pass_fed(const FedInput& input, Offset window, Semantics semantics);

/// One CSV per level: entity1..entityK,startPoint,endPoint,patternConfidence,startClock,endClock.
void write_episodes_csv(std::ostream& out, std::span<const Episode> episodes, std::size_t level,
                        Periodicity periodicity, Granularity granularity);

}  // namespace sigfed
