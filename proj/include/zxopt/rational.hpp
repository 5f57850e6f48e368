#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace zxopt {

class ZxError : public std::runtime_error {
public:
    explicit ZxError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact rational multiple of pi, reduced mod 2 (so the value is num/den * pi
/// with 0 <= num < 2*den and gcd(num, den) = 1). All phase arithmetic in the
/// rewrite engine goes through this type; floating point appears only in the
/// verification oracle.
struct Phase {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Phase() = default;

    static Phase of(std::int64_t num, std::int64_t den) {
        if (den == 0)
            throw ZxError("phase denominator must be nonzero");
        if (den < 0) {
            den = -den;
            num = -num;
        }
        const std::int64_t period = 2 * den;
        num %= period;
        if (num < 0)
            num += period;
        const std::int64_t g = std::gcd(num, den);
        Phase p;
        p.num = num / g;
        p.den = den / g;
        return p;
    }

    static Phase zero() { return {}; }
    static Phase pi() { return of(1, 1); }
    static Phase half_pi() { return of(1, 2); }
    static Phase quarter_pi() { return of(1, 4); }

    friend Phase operator+(Phase a, Phase b) {
        return of(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Phase operator-(Phase a, Phase b) {
        return of(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    Phase operator-() const { return of(-num, den); }
    Phase& operator+=(Phase other) { return *this = *this + other; }

    friend bool operator==(Phase a, Phase b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Phase a, Phase b) { return !(a == b); }

    bool is_zero() const { return num == 0; }
    /// Multiple of pi (0 or pi).
    bool is_pauli() const { return num == 0 || (num == den); }
    /// Exactly +pi/2 or -pi/2.
    bool is_proper_clifford() const {
        return den == 2 && (num == 1 || num == 3);
    }
    /// Multiple of pi/2.
    bool is_clifford() const { return den == 1 || den == 2; }

    double radians() const;

    /// Canonical text form: "0", "pi", "pi/2", "3pi/4", ...
    std::string str() const;
    /// QASM expression form: "0", "pi", "pi/4", "3*pi/4", "7*pi/4", ...
    std::string qasm_str() const;
};

} // namespace zxopt
