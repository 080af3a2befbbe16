#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "ssmass/error.hpp"

namespace ssmass {

// Exact carriers for everything numeric. Rat is always stored in lowest terms
// with positive denominator (mpq_class canonical form); no floating point
// appears anywhere in the library.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0)
        throw ValidationError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

// Accepts "a/b" or "a"; used by the JSON deck loader and CLI flags.
inline Rat parse_rat(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return make_rat(Int(s), Int(1));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw ValidationError("cannot parse rational \"" + s + "\" (expected \"num\" or \"num/den\")");
    }
}

inline std::string to_string(const Int& n) { return n.get_str(); }

inline std::string to_string(const Rat& r) {
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// base^e for possibly negative e; exact as a rational.
inline Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    const unsigned long a = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    Int num = pow_int(Int(base.get_num()), a);
    Int den = pow_int(Int(base.get_den()), a);
    return e > 0 ? make_rat(num, den) : make_rat(den, num);
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Deterministic trial division; inputs here stay desk-scale.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::map<Int, unsigned> factorize(Int n) {
    if (n <= 0)
        throw ValidationError("factorize expects a positive integer");
    std::map<Int, unsigned> f;
    for (Int d = 2; d * d <= n; ++d)
        while (n % d == 0) { ++f[d]; n /= d; }
    if (n > 1) ++f[n];
    return f;
}

// Writes n as prime^e; returns false if n is not a prime power.
inline bool is_prime_power(const Int& n, Int* prime = nullptr, unsigned* exp = nullptr) {
    if (n < 2) return false;
    auto f = factorize(n);
    if (f.size() != 1) return false;
    if (prime) *prime = f.begin()->first;
    if (exp) *exp = f.begin()->second;
    return true;
}

// pi-adic valuation; val(0) is not defined and raises.
inline long val_p(const Int& n, const Int& pi) {
    if (n == 0)
        throw ValidationError("valuation of zero");
    long v = 0;
    Int m = n;
    while (m % pi == 0) { m /= pi; ++v; }
    return v;
}

inline long val_p(const Rat& r, const Int& pi) {
    return val_p(Int(r.get_num()), pi) - val_p(Int(r.get_den()), pi);
}

} // namespace ssmass
