#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qss {

/// Exact fraction for enumeration tallies. Always reduced, denominator > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) throw std::domain_error("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const auto g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    /// Exact value of p when p == k / 2^m for some m <= max_log2_den (within
    /// 1e-12); throws std::domain_error otherwise.
    static Rational from_dyadic(double p, int max_log2_den = 24);

    [[nodiscard]] constexpr double to_double() const { return double(num) / double(den); }
    [[nodiscard]] std::string to_string() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend constexpr Rational operator+(Rational a, Rational b) {
        const auto g = std::gcd(a.den, b.den);
        return Rational(a.num * (b.den / g) + b.num * (a.den / g), a.den / g * b.den);
    }
    friend constexpr Rational operator-(Rational a, Rational b) { return a + Rational(-b.num, b.den); }
    friend constexpr Rational operator*(Rational a, Rational b) {
        const auto g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
        const auto g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
        return Rational((a.num / (g1 ? g1 : 1)) * (b.num / (g2 ? g2 : 1)),
                        (a.den / (g2 ? g2 : 1)) * (b.den / (g1 ? g1 : 1)));
    }
    friend constexpr Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw std::domain_error("division by zero");
        return a * Rational(b.den, b.num);
    }
    Rational& operator+=(Rational o) { return *this = *this + o; }
    Rational& operator*=(Rational o) { return *this = *this * o; }

    friend constexpr bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend constexpr auto operator<=>(Rational a, Rational b) {
        // Denominators stay small in practice (powers of two up to 2^24).
        return a.num * b.den <=> b.num * a.den;
    }
};

}  // namespace qss
