#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace uppnc {

/// Raised when an operation is evaluated on an undefined form, e.g. (+inf) + (-inf) or x / 0.
class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact number in Q extended with +inf and -inf.
///
/// Finite values are kept in canonical form (coprime numerator and positive
/// denominator). Values whose parts fit in 64 bits are stored inline; larger
/// ones are promoted to GMP rationals and demoted again whenever they fit.
class Rational {
public:
    enum class Kind : std::uint8_t { Finite, PlusInfinity, MinusInfinity };

    Rational() noexcept = default;
    template <std::signed_integral I>
    Rational(I value) noexcept : num_(static_cast<std::int64_t>(value)) {}  // NOLINT(google-explicit-constructor)
    Rational(long long numerator, long long denominator);
    explicit Rational(const mpq_class& value);
    explicit Rational(const mpz_class& numerator, const mpz_class& denominator = 1);

    static Rational plusInfinity() noexcept { return Rational(Kind::PlusInfinity); }
    static Rational minusInfinity() noexcept { return Rational(Kind::MinusInfinity); }

    /// Accepts "p", "p/q", "inf", "+inf", "-inf" and plain decimals such as "3.25".
    static Rational parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    bool isFinite() const noexcept { return kind_ == Kind::Finite; }
    bool isInfinite() const noexcept { return kind_ != Kind::Finite; }
    bool isPlusInfinity() const noexcept { return kind_ == Kind::PlusInfinity; }
    bool isMinusInfinity() const noexcept { return kind_ == Kind::MinusInfinity; }
    bool isZero() const noexcept { return isFinite() && !big_ && num_ == 0; }
    bool isInteger() const;
    int sign() const noexcept;

    mpz_class numerator() const;
    mpz_class denominator() const;
    mpq_class toMpq() const;
    double toDouble() const;

    Rational floor() const;
    Rational ceil() const;
    Rational abs() const;

    /// Canonical text: "p" when the denominator is 1, else "p/q"; "inf" / "-inf".
    std::string toString() const;
    /// Always "p/q", including "2/1" for integers.
    std::string toFractionString() const;
    /// Decimal approximation with the given number of significant digits, round-half-even.
    std::string toDecimalString(int significantDigits = 10) const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    explicit Rational(Kind kind) noexcept : kind_(kind) {}
    static Rational fromMpq(mpq_class value);
    bool isSmall() const noexcept { return !big_; }

    Kind kind_ = Kind::Finite;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Smallest positive rational m such that m / a and m / b are both integers.
Rational rationalLcm(const Rational& a, const Rational& b);
/// Largest positive rational g such that a / g and b / g are both integers.
Rational rationalGcd(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace uppnc
