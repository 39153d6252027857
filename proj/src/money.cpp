#include "contagion/money.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace contagion {

Money Money::from_euros(double euros) {
    const double cents = std::round(euros * 100.0);
    if (!std::isfinite(cents) || std::abs(cents) > 9.0e18) {
        throw std::out_of_range("currency amount out of range");
    }
    return Money(static_cast<std::int64_t>(cents));
}

Money parse_money(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("malformed amount '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();

    bool negative = false;
    std::string_view rest = text;
    if (rest.front() == '-') {
        negative = true;
        rest.remove_prefix(1);
    }

    const auto dot = rest.find('.');
    const std::string_view whole = rest.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
    if (whole.empty() || frac.size() > 2 || (dot != std::string_view::npos && frac.empty())) throw fail();

    std::int64_t units = 0;
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), units);
    if (ec != std::errc{} || ptr != whole.data() + whole.size()) throw fail();

    std::int64_t cents = 0;
    if (!frac.empty()) {
        auto [p2, ec2] = std::from_chars(frac.data(), frac.data() + frac.size(), cents);
        if (ec2 != std::errc{} || p2 != frac.data() + frac.size()) throw fail();
        if (frac.size() == 1) cents *= 10;
    }

    constexpr auto kMax = std::numeric_limits<std::int64_t>::max() / 100 - 1;
    if (units > kMax) throw std::out_of_range("amount too large '" + std::string(text) + "'");
    const std::int64_t total = units * 100 + cents;
    return Money(negative ? -total : total);
}

std::string format_money(Money amount) {
    std::int64_t c = amount.cents();
    std::string out;
    if (c < 0) {
        out.push_back('-');
        c = -c;
    }
    out += std::to_string(c / 100);
    out.push_back('.');
    const auto rem = c % 100;
    if (rem < 10) out.push_back('0');
    out += std::to_string(rem);
    return out;
}

}  // namespace contagion
