#pragma once

#include <variant>

#include "steinhaus/rational.hpp"

namespace steinhaus {

enum class NumericMode { Exact, Float };

/// Session-wide absolute tolerance used for float-mode equality.
double float_tolerance();
void set_float_tolerance(double tau);

/// A number that is either an exact rational or a binary64 float.
/// Arithmetic promotes to Float as soon as either operand is Float.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(const Rational& q) : v_(q) {}
    Scalar(Rational&& q) : v_(std::move(q)) {}
    Scalar(long long n) : v_(Rational(n)) {}
    Scalar(int n) : v_(Rational(n)) {}
    static Scalar exact(const Rational& q) { return Scalar(q); }
    static Scalar flt(double x) {
        Scalar s;
        s.v_ = x;
        return s;
    }

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    NumericMode mode() const { return is_exact() ? NumericMode::Exact : NumericMode::Float; }

    const Rational& rational() const {
        if (!is_exact()) fail(ErrorCode::InvalidArgument, "float-mode scalar has no exact value");
        return std::get<Rational>(v_);
    }
    double value() const {
        return is_exact() ? to_double(std::get<Rational>(v_)) : std::get<double>(v_);
    }

    /// Exact rational view; floats are dyadic rationals, so this is lossless.
    Rational as_rational() const {
        return is_exact() ? std::get<Rational>(v_) : rational_from_double(std::get<double>(v_));
    }

    Scalar operator-() const {
        return is_exact() ? Scalar(-std::get<Rational>(v_)) : flt(-std::get<double>(v_));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return Scalar(a.rational() + b.rational());
        return flt(a.value() + b.value());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return Scalar(a.rational() - b.rational());
        return flt(a.value() - b.value());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return Scalar(a.rational() * b.rational());
        return flt(a.value() * b.value());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) {
            if (b.rational() == 0) fail(ErrorCode::InvalidArgument, "division by zero");
            return Scalar(a.rational() / b.rational());
        }
        return flt(a.value() / b.value());
    }

    /// Equality: exact when both exact, within the session tolerance otherwise.
    friend bool eq(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
        double d = a.value() - b.value();
        return d <= float_tolerance() && -d <= float_tolerance();
    }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
        return a.value() < b.value();
    }
    friend bool operator<=(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) return a.rational() <= b.rational();
        return a.value() <= b.value();
    }

    std::string str() const {
        return is_exact() ? rational_to_string(rational()) : std::to_string(value());
    }

private:
    std::variant<Rational, double> v_;
};

} // namespace steinhaus
