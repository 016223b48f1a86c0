#pragma once

#include <map>
#include <string>
#include <string_view>

#include "arp/numeric.hpp"

namespace arp {

/// Exact value of the form  q0 + q_pi * pi + sum_d q_d * sqrt(d)
/// with rational coefficients and d ranging over squarefree integers >= 2.
///
/// Values of this form are rationally independent bases, so a symbolically
/// nonzero combination is numerically nonzero and sign queries terminate.
/// Signs of irrational values are resolved by interval refinement (MPFR,
/// directed rounding) with precision doubling up to a bit cap; if the cap is
/// hit before the interval excludes zero, PrecisionExhausted is raised
/// instead of guessing.
class Scalar {
public:
    static constexpr unsigned kDefaultBitCap = 4096;

    Scalar() = default;
    Scalar(long long v) : rat_(v) {}
    explicit Scalar(Rat r) : rat_(std::move(r)) {}

    static Scalar pi();
    static Scalar sqrt(long long n);  // n >= 0; perfect-square parts fold into the rational term

    /// Parses one coordinate expression: integers, decimals, fractions p/q,
    /// `pi` and `sqrt(n)` with optional rational coefficient, combined with + and -.
    static Scalar parse(std::string_view text);

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Rat& c, const Scalar& s);
    friend Scalar operator*(long long c, const Scalar& s) { return Rat(c) * s; }

    bool is_rational() const { return pi_.is_zero() && sqrt_.empty(); }
    const Rat& rational_part() const { return rat_; }
    Rat as_rational() const;  // throws if not rational

    /// -1, 0 or +1. Throws PrecisionExhausted if the interval oracle cannot
    /// separate the value from zero within `bit_cap` bits of precision.
    int sign(unsigned bit_cap = kDefaultBitCap) const;
    bool is_zero() const;  // exact, symbolic

    int compare(const Scalar& o, unsigned bit_cap = kDefaultBitCap) const {
        return (*this - o).sign(bit_cap);
    }

    /// Decimal approximation (round to nearest) with the given fraction digits.
    std::string decimal(int digits = 12) const;
    double approx() const;

    std::string to_string() const;  // exact symbolic form

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.rat_ == b.rat_ && a.pi_ == b.pi_ && a.sqrt_ == b.sqrt_;
    }

private:
    Rat rat_{0};
    Rat pi_{0};
    std::map<long long, Rat> sqrt_;  // squarefree radicand -> coefficient

    void prune();
    friend class ScalarEval;
};

}  // namespace arp
