#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace contagion {

// Currency amount in integer cents. Arithmetic is exact; conversion to
// floating point is explicit.
class Money {
public:
    constexpr Money() = default;
    constexpr explicit Money(std::int64_t cents) : cents_(cents) {}

    static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }
    // Rounds to the nearest cent.
    static Money from_euros(double euros);

    constexpr std::int64_t cents() const { return cents_; }
    constexpr double to_double() const { return static_cast<double>(cents_); }
    double euros() const { return static_cast<double>(cents_) / 100.0; }

    constexpr Money& operator+=(Money other) {
        cents_ += other.cents_;
        return *this;
    }
    constexpr Money& operator-=(Money other) {
        cents_ -= other.cents_;
        return *this;
    }
    friend constexpr Money operator+(Money a, Money b) { return Money(a.cents_ + b.cents_); }
    friend constexpr Money operator-(Money a, Money b) { return Money(a.cents_ - b.cents_); }
    friend constexpr Money operator-(Money a) { return Money(-a.cents_); }
    friend constexpr auto operator<=>(Money, Money) = default;

private:
    std::int64_t cents_ = 0;
};

constexpr Money min(Money a, Money b) { return a < b ? a : b; }
constexpr Money max(Money a, Money b) { return a < b ? b : a; }

// Parses "123", "123.4" or "123.45" (optionally negative) into cents.
// Throws std::invalid_argument on anything else, including more than two
// decimals.
Money parse_money(std::string_view text);

// Canonical decimal rendering with exactly two decimals, e.g. "12.30".
std::string format_money(Money amount);

}  // namespace contagion
