#pragma once

#include "sigfed/folding.hpp"
#include "sigfed/percent.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace sigfed {

enum class Semantics { S, E };

Semantics parse_semantics(std::string_view text);
std::string_view to_string(Semantics semantics);

/// Every user parameter of a mining run. Thresholds have no defaults.
struct MiningConfig {
    std::optional<Percent> min_conf;
    std::optional<Offset> max_len;  // One-Pass-SI only; absent means unbounded
    Periodicity periodicity = Periodicity::Daily;
    Granularity granularity = Granularity::Minute;
    std::optional<std::int64_t> n_override;
    std::optional<Offset> window;
    Semantics semantics = Semantics::S;

    /// Checks ranges of whatever is set: 0 < min_conf <= 100, max_len >= 0,
    /// window >= 0, n_override > 0. Throws ConfigError.
    void validate() const;

    friend bool operator==(const MiningConfig&, const MiningConfig&) = default;
};

void check_min_conf(const Percent& min_conf);

}  // namespace sigfed
