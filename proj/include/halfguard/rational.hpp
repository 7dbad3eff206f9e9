#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace halfguard {

/// Exact rational scalar. Always canonical: reduced, denominator > 0.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den) : v_(num, den) { v_.canonicalize(); }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Accepts "7", "-3/4", "2.50", "-.5". Returns nullopt on anything else.
    static std::optional<Rational> parse(std::string_view s);

    /// Canonical text: integer when den == 1, otherwise "num/den".
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_str();
    }

    double to_double() const { return v_.get_d(); }

    int sign() const { return sgn(v_); }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    const mpq_class& raw() const { return v_; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    mpq_class v_;
};

inline std::optional<Rational> Rational::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; i = 1; }
    if (i == s.size()) return std::nullopt;

    auto digits_ok = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };

    std::string_view body = s.substr(i);
    mpq_class val;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!digits_ok(num) || !digits_ok(den)) return std::nullopt;
        mpz_class n(std::string(num), 10), d(std::string(den), 10);
        if (d == 0) return std::nullopt;
        val = mpq_class(n) / mpq_class(d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if (ip.empty() && fp.empty()) return std::nullopt;
        if (!ip.empty() && !digits_ok(ip)) return std::nullopt;
        if (!fp.empty() && !digits_ok(fp)) return std::nullopt;
        mpz_class whole = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip), 10);
        mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(std::string(fp), 10);
        mpz_class scale = 1;
        for (size_t k = 0; k < fp.size(); ++k) scale *= 10;
        val = mpq_class(whole * scale + frac) / mpq_class(scale);
    } else {
        if (!digits_ok(body)) return std::nullopt;
        val = mpq_class(mpz_class(std::string(body), 10));
    }
    if (neg) val = -val;
    val.canonicalize();
    return Rational(val);
}

}  // namespace halfguard
