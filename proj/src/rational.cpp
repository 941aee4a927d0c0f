#include "uppnc/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>

namespace uppnc {

namespace {

using i128 = __int128;
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

std::uint64_t absU(std::int64_t v) { return v < 0 ? std::uint64_t(-(v + 1)) + 1 : std::uint64_t(v); }

std::uint64_t gcdU(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

mpz_class toMpz(std::int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

bool mpzFits(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) && z != toMpz(std::numeric_limits<std::int64_t>::min()); }

std::int64_t mpzToI64(const mpz_class& z) { return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t())); }

}  // namespace

Rational::Rational(long long numerator, long long denominator) {
    if (denominator == 0)
        throw ArithmeticError("rational with zero denominator");
    *this = fromMpq(mpq_class(toMpz(numerator), toMpz(denominator)));
}

Rational::Rational(const mpq_class& value) { *this = fromMpq(value); }

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0)
        throw ArithmeticError("rational with zero denominator");
    *this = fromMpq(mpq_class(numerator, denominator));
}

Rational Rational::fromMpq(mpq_class value) {
    value.canonicalize();
    Rational r;
    if (mpzFits(value.get_num()) && mpzFits(value.get_den())) {
        r.num_ = mpzToI64(value.get_num());
        r.den_ = mpzToI64(value.get_den());
    } else {
        r.big_ = std::make_shared<const mpq_class>(std::move(value));
    }
    return r;
}

Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text == "inf" || text == "+inf" || text == "infinity" || text == "+infinity")
        return plusInfinity();
    if (text == "-inf" || text == "-infinity")
        return minusInfinity();
    if (text.empty())
        throw std::invalid_argument("empty rational literal");

    auto parseInteger = [](std::string_view s) {
        std::string str(s);
        if (!str.empty() && str.front() == '+') str.erase(0, 1);
        bool ok = !str.empty();
        for (std::size_t i = 0; i < str.size(); ++i) {
            char ch = str[i];
            if (!(std::isdigit(static_cast<unsigned char>(ch)) || (i == 0 && ch == '-' && str.size() > 1))) ok = false;
        }
        if (!ok)
            throw std::invalid_argument("malformed rational literal '" + std::string(s) + "'");
        return mpz_class(str, 10);
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class n = parseInteger(trim(text.substr(0, slash)));
        mpz_class d = parseInteger(trim(text.substr(slash + 1)));
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(n, d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string whole(text.substr(0, dot));
        std::string frac(text.substr(dot + 1));
        bool negative = !whole.empty() && whole.front() == '-';
        if (negative) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        mpz_class n = parseInteger(whole + frac);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
        if (negative) n = -n;
        return Rational(n, d);
    }
    return Rational(parseInteger(text), mpz_class(1));
}

bool Rational::isInteger() const {
    if (!isFinite()) return false;
    if (isSmall()) return den_ == 1;
    return big_->get_den() == 1;
}

int Rational::sign() const noexcept {
    switch (kind_) {
    case Kind::PlusInfinity: return 1;
    case Kind::MinusInfinity: return -1;
    case Kind::Finite: break;
    }
    if (isSmall()) return (num_ > 0) - (num_ < 0);
    return sgn(*big_);
}

mpz_class Rational::numerator() const {
    if (!isFinite()) throw ArithmeticError("numerator of an infinite value");
    return isSmall() ? toMpz(num_) : mpz_class(big_->get_num());
}

mpz_class Rational::denominator() const {
    if (!isFinite()) throw ArithmeticError("denominator of an infinite value");
    return isSmall() ? toMpz(den_) : mpz_class(big_->get_den());
}

mpq_class Rational::toMpq() const {
    if (!isFinite()) throw ArithmeticError("infinite value has no finite rational form");
    if (isSmall()) return mpq_class(toMpz(num_), toMpz(den_));
    return *big_;
}

double Rational::toDouble() const {
    if (isPlusInfinity()) return std::numeric_limits<double>::infinity();
    if (isMinusInfinity()) return -std::numeric_limits<double>::infinity();
    if (isSmall()) return static_cast<double>(num_) / static_cast<double>(den_);
    return big_->get_d();
}

Rational Rational::floor() const {
    if (!isFinite()) return *this;
    if (isSmall()) {
        std::int64_t q = num_ / den_;
        if ((num_ % den_ != 0) && (num_ < 0)) --q;
        return Rational(static_cast<long long>(q));
    }
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return Rational(q);
}

Rational Rational::ceil() const {
    if (!isFinite()) return *this;
    return -((-*this).floor());
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::string Rational::toString() const {
    if (isPlusInfinity()) return "inf";
    if (isMinusInfinity()) return "-inf";
    if (isSmall())
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    return big_->get_den() == 1 ? big_->get_num().get_str() : big_->get_str();
}

std::string Rational::toFractionString() const {
    if (!isFinite()) return toString();
    if (isSmall()) return std::to_string(num_) + "/" + std::to_string(den_);
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
}

std::string Rational::toDecimalString(int significantDigits) const {
    if (!isFinite()) return toString();
    if (isZero()) return "0";
    mpq_class q = toMpq();
    bool negative = q < 0;
    if (negative) q = -q;

    // Find e with 10^e <= q < 10^(e+1).
    long e = 0;
    mpq_class scaled = q;
    while (scaled >= 10) { scaled /= 10; ++e; }
    while (scaled < 1) { scaled *= 10; --e; }

    long shift = significantDigits - 1 - e;
    mpq_class v = q;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
    if (shift >= 0) v *= p10; else v /= p10;

    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    mpq_class rem = v - mpq_class(fl);
    int cmpHalf = cmp(rem, mpq_class(1, 2));
    if (cmpHalf > 0 || (cmpHalf == 0 && mpz_odd_p(fl.get_mpz_t()))) fl += 1;

    std::string digits = fl.get_str();
    std::string out;
    if (shift <= 0) {
        out = digits + std::string(static_cast<std::size_t>(-shift), '0');
    } else if (static_cast<long>(digits.size()) > shift) {
        out = digits.substr(0, digits.size() - shift) + "." + digits.substr(digits.size() - shift);
    } else {
        out = "0." + std::string(static_cast<std::size_t>(shift - digits.size()), '0') + digits;
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return negative ? "-" + out : out;
}

Rational Rational::operator-() const {
    switch (kind_) {
    case Kind::PlusInfinity: return minusInfinity();
    case Kind::MinusInfinity: return plusInfinity();
    case Kind::Finite: break;
    }
    if (isSmall()) {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    return fromMpq(-*big_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.isInfinite() || b.isInfinite()) {
        if (a.isInfinite() && b.isInfinite() && a.kind_ != b.kind_)
            throw ArithmeticError("undefined form: (+inf) + (-inf)");
        return a.isInfinite() ? a : b;
    }
    if (a.isSmall() && b.isSmall()) {
        if (a.den_ == 1 && b.den_ == 1) {
            i128 s = i128(a.num_) + b.num_;
            if (fits(s)) return Rational(static_cast<long long>(s));
        } else {
            std::uint64_t d1 = gcdU(std::uint64_t(a.den_), std::uint64_t(b.den_));
            if (d1 == 1) {
                i128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
                i128 d = i128(a.den_) * b.den_;
                if (fits(n) && fits(d)) {
                    Rational r;
                    r.num_ = static_cast<std::int64_t>(n);
                    r.den_ = static_cast<std::int64_t>(d);
                    return r;
                }
            } else {
                std::int64_t bd = a.den_ / std::int64_t(d1);
                std::int64_t dd = b.den_ / std::int64_t(d1);
                i128 t = i128(a.num_) * dd + i128(b.num_) * bd;
                i128 tm = t % i128(d1);
                if (tm < 0) tm = -tm;
                std::uint64_t d2 = gcdU(std::uint64_t(tm), d1);
                i128 n = t / i128(d2);
                i128 d = i128(bd) * (b.den_ / std::int64_t(d2));
                if (fits(n) && fits(d)) {
                    Rational r;
                    r.num_ = static_cast<std::int64_t>(n);
                    r.den_ = static_cast<std::int64_t>(d);
                    return r;
                }
            }
        }
    }
    return Rational::fromMpq(a.toMpq() + b.toMpq());
}

Rational operator-(const Rational& a, const Rational& b) {
    if (a.isInfinite() && b.isInfinite() && a.kind_ == b.kind_)
        throw ArithmeticError("undefined form: infinity minus infinity of the same sign");
    return a + (-b);
}

Rational operator*(const Rational& a, const Rational& b) {
    if (a.isInfinite() || b.isInfinite()) {
        int s = a.sign() * b.sign();
        if (s == 0) throw ArithmeticError("undefined form: 0 * infinity");
        return s > 0 ? Rational::plusInfinity() : Rational::minusInfinity();
    }
    if (a.isSmall() && b.isSmall()) {
        std::uint64_t g1 = gcdU(absU(a.num_), std::uint64_t(b.den_));
        std::uint64_t g2 = gcdU(absU(b.num_), std::uint64_t(a.den_));
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        i128 n = i128(a.num_ / std::int64_t(g1)) * (b.num_ / std::int64_t(g2));
        i128 d = i128(a.den_ / std::int64_t(g2)) * (b.den_ / std::int64_t(g1));
        if (fits(n) && fits(d)) {
            Rational r;
            r.num_ = static_cast<std::int64_t>(n);
            r.den_ = static_cast<std::int64_t>(d);
            if (r.num_ == 0) r.den_ = 1;
            return r;
        }
    }
    return Rational::fromMpq(a.toMpq() * b.toMpq());
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.isZero()) throw ArithmeticError("division by zero");
    if (a.isInfinite() && b.isInfinite()) throw ArithmeticError("undefined form: infinity / infinity");
    if (b.isInfinite()) return Rational(0);
    if (a.isInfinite()) return b.sign() > 0 ? a : -a;
    if (b.isSmall()) {
        Rational inv;
        inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
        inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
        return a * inv;
    }
    return Rational::fromMpq(a.toMpq() / b.toMpq());
}

bool operator==(const Rational& a, const Rational& b) noexcept {
    if (a.kind_ != b.kind_) return false;
    if (a.isInfinite()) return true;
    if (a.isSmall() != b.isSmall()) return false;  // canonical storage: small values never live in big_
    if (a.isSmall()) return a.num_ == b.num_ && a.den_ == b.den_;
    return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    auto rank = [](Rational::Kind k) {
        switch (k) {
        case Rational::Kind::MinusInfinity: return 0;
        case Rational::Kind::Finite: return 1;
        case Rational::Kind::PlusInfinity: return 2;
        }
        return 1;
    };
    if (a.kind_ != b.kind_ || a.isInfinite()) return rank(a.kind_) <=> rank(b.kind_);
    if (a.isSmall() && b.isSmall()) {
        if (a.den_ == b.den_) return a.num_ <=> b.num_;
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }
    int c = cmp(a.toMpq(), b.toMpq());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational rationalLcm(const Rational& a, const Rational& b) {
    if (!a.isFinite() || !b.isFinite() || a.sign() <= 0 || b.sign() <= 0)
        throw ArithmeticError("rationalLcm requires positive finite arguments");
    if (a == b) return a;
    mpz_class n, d;
    mpz_lcm(n.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
    mpz_gcd(d.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
    return Rational(n, d);
}

Rational rationalGcd(const Rational& a, const Rational& b) {
    if (!a.isFinite() || !b.isFinite() || a.sign() <= 0 || b.sign() <= 0)
        throw ArithmeticError("rationalGcd requires positive finite arguments");
    mpz_class n, d;
    mpz_gcd(n.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
    mpz_lcm(d.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
    return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.toString(); }

}  // namespace uppnc
