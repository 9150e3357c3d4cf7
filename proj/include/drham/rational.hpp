#ifndef DRHAM_RATIONAL_HPP
#define DRHAM_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace drham {

/// Exact rational coefficient. Thin wrapper around mpq_class that keeps the
/// value canonical (lowest terms, positive denominator) at all times.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class &q) : v_(q) { v_.canonicalize(); }

    /// Parses "p", "-p", or "p/q".
    static Rat parse(const std::string &s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat: bad literal '" + s + "'");
        if (q.get_den() == 0) throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
        q.canonicalize();
        return Rat(q);
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat &operator+=(const Rat &o) { v_ += o.v_; return *this; }
    Rat &operator-=(const Rat &o) { v_ -= o.v_; return *this; }
    Rat &operator*=(const Rat &o) { v_ *= o.v_; return *this; }
    Rat &operator/=(const Rat &o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat &b) { return a += b; }
    friend Rat operator-(Rat a, const Rat &b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat &b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat &b) { return a /= b; }

    friend bool operator==(const Rat &a, const Rat &b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat &a, const Rat &b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat &a, const Rat &b) { return a.v_ < b.v_; }

    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    Rat pow(long e) const {
        if (e == 0) return Rat(1);
        Rat base = e > 0 ? *this : inv();
        long n = e > 0 ? e : -e;
        Rat r(1);
        while (n > 0) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    /// Canonical text form: "p" or "p/q" with q > 1.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    const mpq_class &raw() const { return v_; }

  private:
    mpq_class v_;
};

/// Binomial coefficient with arbitrary (possibly negative) integer top.
inline Rat binom(long n, long k) {
    if (k < 0) return Rat(0);
    Rat r(1);
    for (long i = 0; i < k; ++i) r *= Rat(n - i, i + 1);
    return r;
}

} // namespace drham

#endif
