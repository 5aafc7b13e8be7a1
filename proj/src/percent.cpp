#include "sigfed/percent.hpp"

#include "sigfed/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

namespace sigfed {

Percent Percent::of(std::int64_t part, std::int64_t whole) {
    if (whole <= 0) throw std::invalid_argument("percentage of a non-positive whole");
    return Percent(Rep(part * 100, whole));
}

Percent Percent::parse(std::string_view text, int max_decimals) {
    const std::string original(text);
    const auto fail = [&](const char* why) {
        return ConfigError("invalid percentage '" + original + "': " + why);
    };
    if (text.empty()) throw fail("empty");
    if (text.back() == '%') text.remove_suffix(1);

    std::int64_t whole = 0;
    std::int64_t frac = 0;
    std::int64_t scale = 1;
    bool seen_digit = false;
    bool in_frac = false;
    for (char c : text) {
        if (c == '.' && !in_frac) {
            in_frac = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) throw fail("not a decimal number");
        seen_digit = true;
        if (in_frac) {
            if (scale >= 1'000'000'000) throw fail("too many decimals");
            frac = frac * 10 + (c - '0');
            scale *= 10;
        } else {
            if (whole > 1'000'000'000) throw fail("out of range");
            whole = whole * 10 + (c - '0');
        }
    }
    if (!seen_digit) throw fail("no digits");
    std::int64_t allowed = 1;
    for (int i = 0; i < max_decimals; ++i) allowed *= 10;
    if (scale > allowed) throw fail("too many decimals");
    return Percent(Rep(whole * scale + frac, scale));
}

std::string format_rational(const Percent::Rep& value, int decimals) {
    std::int64_t pow10 = 1;
    for (int i = 0; i < decimals; ++i) pow10 *= 10;
    const bool negative = value < 0;
    const Percent::Rep magnitude = negative ? -value : value;
    // round half up on |value| * 10^decimals
    const std::int64_t num = magnitude.numerator();
    const std::int64_t den = magnitude.denominator();
    const __int128 scaled = (static_cast<__int128>(num) * pow10 * 2 + den) / (static_cast<__int128>(den) * 2);
    const auto units = static_cast<std::int64_t>(scaled);

    std::string out = negative && units != 0 ? "-" : "";
    out += std::to_string(units / pow10);
    if (decimals > 0) {
        std::string digits = std::to_string(units % pow10);
        out += '.';
        out += std::string(static_cast<std::size_t>(decimals) - digits.size(), '0') + digits;
    }
    return out;
}

std::string Percent::format(int decimals) const { return format_rational(value_, decimals); }

}  // namespace sigfed
