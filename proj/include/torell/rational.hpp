#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <numeric>
#include <string>

#include "torell/errors.hpp"

namespace torell {

using Q = mpq_class;

inline Q q_of(std::int64_t n) { return Q(static_cast<long>(n)); }
inline Q q_of(std::int64_t num, std::int64_t den) {
    Q q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

// Prints reduced, "p/q" with the sign on the numerator, plain integer when q = 1.
inline std::string q_str(const Q& q) { return q.get_str(); }

// Residue class in Q/Z, stored as a reduced fraction in [0, 1).
class QmodZ {
  public:
    QmodZ() : num_(0), den_(1) {}
    QmodZ(std::int64_t num, std::int64_t den) {
        if (den == 0)
            throw DomainError("QmodZ: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        num %= den;
        if (num < 0)
            num += den;
        const std::int64_t g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    // Order as an element of Q/Z.
    std::int64_t order() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    QmodZ operator+(const QmodZ& o) const {
        const std::int64_t d = std::lcm(den_, o.den_);
        return QmodZ(num_ * (d / den_) + o.num_ * (d / o.den_), d);
    }
    QmodZ operator-() const { return QmodZ(-num_, den_); }
    QmodZ operator-(const QmodZ& o) const { return *this + (-o); }
    // Integer scaling n * x in Q/Z.
    friend QmodZ operator*(std::int64_t n, const QmodZ& x) {
        return QmodZ(n * x.num_, x.den_);
    }

    auto operator<=>(const QmodZ& o) const = default;

  private:
    std::int64_t num_, den_;
};

// Element of (Q/Z)^2; doubles as a torsion point of the curve and as a
// generator of a finite subgroup of the 2-torus.
struct QmodZ2 {
    QmodZ x, y;
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    QmodZ2 operator+(const QmodZ2& o) const { return {x + o.x, y + o.y}; }
    QmodZ2 operator-() const { return {-x, -y}; }
    friend QmodZ2 operator*(std::int64_t n, const QmodZ2& p) {
        return {n * p.x, n * p.y};
    }
    auto operator<=>(const QmodZ2& o) const = default;
};

} // namespace torell
