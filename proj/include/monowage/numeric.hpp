#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace monowage {

// Exact scalar used by the rational instantiation of the library.
using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_fraction(long long num, long long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double to_double(double x) { return x; }
    static double abs(double x) { return x < 0 ? -x : x; }
    static std::string to_string(double x) { return std::to_string(x); }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_fraction(long long num, long long den) { return Rational(num, den); }
    static double to_double(const Rational& x) { return x.template convert_to<double>(); }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static std::string to_string(const Rational& x) { return x.str(); }
};

// Comparison tolerances. Mass ("weak") comparisons allow feas slack; strict
// wage comparisons demand a margin of wage_strict in floating point and exact
// inequality in rational mode. eta is the finite outbid increment used when
// constructing wages that must strictly exceed a rival's.
template <class T>
struct Tol {
    T feas;
    T wage_strict;
    T eta;

    static Tol standard() {
        if constexpr (ScalarTraits<T>::exact) {
            return Tol{T(0), T(0), ScalarTraits<T>::from_fraction(1, 1000000000)};
        } else {
            return Tol{T(1e-12), T(1e-9), T(1e-9)};
        }
    }

    // a <= b up to feas slack.
    bool leq(const T& a, const T& b) const { return a <= b + feas; }
    // a < b with the strict-wage margin.
    bool strictly_less(const T& a, const T& b) const {
        if constexpr (ScalarTraits<T>::exact)
            return a < b;
        else
            return a + wage_strict <= b;
    }
    // strict profit improvement: after > before by more than feas.
    bool strict_gain(const T& before, const T& after) const { return after > before + feas; }
};

template <class T>
T abs_diff(const T& a, const T& b) {
    return a >= b ? T(a - b) : T(b - a);
}

}  // namespace monowage
