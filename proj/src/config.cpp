#include "sigfed/config.hpp"

#include "csv.hpp"
#include "sigfed/errors.hpp"

#include <string>

namespace sigfed {

Semantics parse_semantics(std::string_view text) {
    const auto key = csv::lower(csv::trim(text));
    if (key == "s") return Semantics::S;
    if (key == "e") return Semantics::E;
    throw std::invalid_argument("unknown semantics '" + std::string(text) + "' (expected s or e)");
}

std::string_view to_string(Semantics semantics) { return semantics == Semantics::S ? "s" : "e"; }

void check_min_conf(const Percent& min_conf) {
    if (min_conf <= Percent(0) || min_conf > Percent(100))
        throw ConfigError("min-conf must be in (0, 100], got " + min_conf.format());
}

void MiningConfig::validate() const {
    if (min_conf) check_min_conf(*min_conf);
    if (max_len && *max_len < 0) throw ConfigError("max-len must be non-negative");
    if (window && *window < 0) throw ConfigError("window must be non-negative");
    if (n_override && *n_override <= 0) throw ConfigError("n must be positive");
}

}  // namespace sigfed
