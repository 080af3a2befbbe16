#pragma once

#include <array>
#include <cstdint>

#include "ssmass/error.hpp"

namespace ssmass {

// F_p or F_{p^2} with machine-word coefficients; the quadratic extension is
// Z/p[x]/(x^2 - red_b*x - red_c) for an explicit irreducible quadratic.
// Elements are coefficient pairs (c0, c1) with 0 <= ci < p.
class FiniteField {
  public:
    using Elem = std::array<long, 2>;

    FiniteField(long p, int deg) : p_(p), deg_(deg) {
        if (p < 2 || (deg != 1 && deg != 2))
            throw ValidationError("finite field tower supports prime base and extension degree <= 2");
        q_ = deg == 1 ? p : p * p;
        if (deg == 2) {
            if (p == 2) {
                // x^2 + x + 1, i.e. x^2 = x + 1
                red_b_ = 1;
                red_c_ = 1;
            } else {
                // x^2 = a for the least quadratic non-residue a
                long a = 2;
                while (is_square_mod_p(a)) ++a;
                red_b_ = 0;
                red_c_ = a;
            }
            xp_ = pow({0, 1}, p_); // Frobenius image of x
        }
    }

    long p() const { return p_; }
    int deg() const { return deg_; }
    long q() const { return q_; }

    Elem zero() const { return {0, 0}; }
    Elem one() const { return {1, 0}; }
    Elem from_base(long a) const { return {mod(a), 0}; }

    Elem from_index(long idx) const { return {idx % p_, deg_ == 2 ? idx / p_ : 0}; }
    long index(const Elem& e) const { return e[0] + p_ * e[1]; }

    bool is_zero(const Elem& e) const { return e[0] == 0 && e[1] == 0; }

    Elem add(const Elem& a, const Elem& b) const { return {mod(a[0] + b[0]), mod(a[1] + b[1])}; }
    Elem sub(const Elem& a, const Elem& b) const { return {mod(a[0] - b[0]), mod(a[1] - b[1])}; }
    Elem neg(const Elem& a) const { return {mod(-a[0]), mod(-a[1])}; }

    Elem mul(const Elem& a, const Elem& b) const {
        if (deg_ == 1) return {mod(a[0] * b[0]), 0};
        const long c0 = a[0] * b[0];
        const long c1 = a[0] * b[1] + a[1] * b[0];
        const long c2 = a[1] * b[1]; // coefficient of x^2 = red_b*x + red_c
        return {mod(c0 + c2 % p_ * red_c_), mod(c1 + c2 % p_ * red_b_)};
    }

    Elem pow(Elem a, long e) const {
        Elem acc = one();
        while (e > 0) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }

    Elem inv(const Elem& a) const {
        if (is_zero(a))
            throw ValidationError("inverse of zero field element");
        return pow(a, q_ - 2);
    }

    // a -> a^p, the nontrivial automorphism when deg = 2.
    Elem frobenius(const Elem& a) const {
        if (deg_ == 1) return a;
        // (c0 + c1 x)^p = c0 + c1 * x^p
        Elem r = from_base(a[0]);
        return add(r, mul({a[1], 0}, xp_));
    }

  private:
    long mod(long a) const {
        a %= p_;
        return a < 0 ? a + p_ : a;
    }

    bool is_square_mod_p(long a) const {
        for (long y = 0; y < p_; ++y)
            if ((y * y) % p_ == a % p_) return true;
        return false;
    }

    long p_, q_;
    int deg_;
    long red_b_ = 0, red_c_ = 0;
    Elem xp_ = {0, 0};
};

} // namespace ssmass
