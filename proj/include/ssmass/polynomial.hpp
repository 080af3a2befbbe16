#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssmass/rational.hpp"

namespace ssmass {

// Dense univariate polynomial over Q in the indeterminate q. Degrees in this
// project stay below ~4m^2, so no sparse representation.
class RationalPolynomial {
  public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(const Rat& constant) : coef_{constant} { trim(); }
    explicit RationalPolynomial(std::vector<Rat> coef) : coef_(std::move(coef)) { trim(); }

    static RationalPolynomial variable() { return RationalPolynomial({Rat(0), Rat(1)}); }

    // c * q^k
    static RationalPolynomial monomial(const Rat& c, unsigned k) {
        std::vector<Rat> v(k + 1, Rat(0));
        v[k] = c;
        return RationalPolynomial(std::move(v));
    }

    bool is_zero() const { return coef_.empty(); }
    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(coef_.size()) - 1; }

    Rat coeff(unsigned k) const { return k < coef_.size() ? coef_[k] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return coef_; }

    bool integer_coefficients() const {
        for (const auto& c : coef_)
            if (!is_integral(c)) return false;
        return true;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rat> v(std::max(a.coef_.size(), b.coef_.size()), Rat(0));
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return RationalPolynomial(std::move(v));
    }

    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rat> v(std::max(a.coef_.size(), b.coef_.size()), Rat(0));
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return RationalPolynomial(std::move(v));
    }

    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return RationalPolynomial();
        std::vector<Rat> v(a.coef_.size() + b.coef_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.coef_.size(); ++i)
            for (size_t j = 0; j < b.coef_.size(); ++j)
                v[i + j] += a.coef_[i] * b.coef_[j];
        return RationalPolynomial(std::move(v));
    }

    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.coef_ == b.coef_;
    }

    std::string str(const std::string& var = "q") const {
        if (is_zero()) return "0";
        std::string out;
        for (long k = degree(); k >= 0; --k) {
            const Rat c = coeff(static_cast<unsigned>(k));
            if (c == 0) continue;
            const bool first = out.empty();
            const Rat mag = c < 0 ? Rat(-c) : c;
            if (first)
                out += (c < 0 ? "-" : "");
            else
                out += (c < 0 ? " - " : " + ");
            const bool unit = (mag == 1) && k > 0;
            if (!unit) out += to_string(mag);
            if (k > 0) {
                if (!unit) out += "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
    }

    std::vector<Rat> coef_;
};

struct PolyDivMod {
    RationalPolynomial quotient;
    RationalPolynomial remainder;
};

inline PolyDivMod poly_divmod(const RationalPolynomial& num, const RationalPolynomial& den) {
    if (den.is_zero())
        throw ValidationError("polynomial division by zero");
    RationalPolynomial r = num;
    std::vector<Rat> q(static_cast<size_t>(num.degree() + 1), Rat(0));
    const Rat lead = den.coeff(static_cast<unsigned>(den.degree()));
    while (!r.is_zero() && r.degree() >= den.degree()) {
        const unsigned shift = static_cast<unsigned>(r.degree() - den.degree());
        const Rat c = r.coeff(static_cast<unsigned>(r.degree())) / lead;
        q[shift] = c;
        r = r - RationalPolynomial::monomial(c, shift) * den;
    }
    return {RationalPolynomial(std::move(q)), r};
}

// Exact quotient, or nothing when the remainder is nonzero. A failed division
// is a reported outcome, not a fault.
inline std::optional<RationalPolynomial> poly_div_exact(const RationalPolynomial& num,
                                                        const RationalPolynomial& den) {
    auto dm = poly_divmod(num, den);
    if (!dm.remainder.is_zero()) return std::nullopt;
    return dm.quotient;
}

} // namespace ssmass
