#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sigfed {

/// An exact percentage. Confidence thresholds are compared on this type so that
/// no decision ever goes through floating point.
class Percent {
public:
    using Rep = boost::rational<std::int64_t>;

    Percent() = default;
    explicit Percent(Rep value) : value_(value) {}
    explicit Percent(std::int64_t whole) : value_(whole) {}

    /// 100 * part / whole. `whole` must be positive.
    static Percent of(std::int64_t part, std::int64_t whole);

    /// Parses a non-negative decimal such as "60", "71.42" or "85.7143".
    /// Throws ConfigError when the text is not a decimal or has more than
    /// `max_decimals` fractional digits.
    static Percent parse(std::string_view text, int max_decimals = 9);

    const Rep& value() const noexcept { return value_; }
    double to_double() const { return boost::rational_cast<double>(value_); }

    /// Half-up rounding to `decimals` fractional digits, always printing them.
    std::string format(int decimals = 2) const;

    friend bool operator==(const Percent& a, const Percent& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Percent& a, const Percent& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (b.value_ < a.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    Rep value_{0};
};

/// Exact value formatted like Percent::format (shared by density output).
std::string format_rational(const Percent::Rep& value, int decimals);

}  // namespace sigfed
