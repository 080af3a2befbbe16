#pragma once

#include <cstdint>
#include <vector>

#include "ssmass/arith_data.hpp"
#include "ssmass/parallel.hpp"
#include "ssmass/rational.hpp"

namespace ssmass {

// The index set Psi = union over v | p of Z/f_v, plus the rank m. Fixed by
// the input; places keep their deck order.
struct AdlvShape {
    std::vector<int> f;
    int m = 1;

    int total_f() const {
        int t = 0;
        for (int fv : f) t += fv;
        return t;
    }
};

inline AdlvShape adlv_shape(const PELInput& in) {
    require_sec4_gate(in);
    AdlvShape s;
    s.m = in.m;
    for (const auto& v : places_over(in.field, in.p)) s.f.push_back(v.inertia_f);
    return s;
}

struct PsiIndex {
    int place = 0;
    int j = 0;
};

// Integer (or rational) cocharacter in the basis {omega*, eps^{j*}_i}:
// coefficient c of omega* and a[v][j][i] of eps^{j*}_i.
template <class T>
struct BasicCochar {
    AdlvShape shape;
    T c{};
    std::vector<std::vector<std::vector<T>>> a; // [place][j][i]

    T& at(int place, int j, int i) { return a[place][j][i]; }
    const T& at(int place, int j, int i) const { return a[place][j][i]; }

    friend bool operator==(const BasicCochar& x, const BasicCochar& y) {
        return x.c == y.c && x.a == y.a;
    }
};

using Cochar = BasicCochar<Int>;
using RationalCochar = BasicCochar<Rat>;

template <class T>
BasicCochar<T> cochar_zero(const AdlvShape& shape) {
    BasicCochar<T> x;
    x.shape = shape;
    x.c = T(0);
    x.a.resize(shape.f.size());
    for (size_t v = 0; v < shape.f.size(); ++v)
        x.a[v].assign(static_cast<size_t>(shape.f[v]), std::vector<T>(static_cast<size_t>(shape.m), T(0)));
    return x;
}

template <class T>
BasicCochar<T> cochar_sub(const BasicCochar<T>& x, const BasicCochar<T>& y) {
    BasicCochar<T> r = x;
    r.c -= y.c;
    for (size_t v = 0; v < r.a.size(); ++v)
        for (size_t j = 0; j < r.a[v].size(); ++j)
            for (size_t i = 0; i < r.a[v][j].size(); ++i) r.a[v][j][i] -= y.a[v][j][i];
    return r;
}

inline RationalCochar to_rational(const Cochar& x) {
    RationalCochar r = cochar_zero<Rat>(x.shape);
    r.c = Rat(x.c);
    for (size_t v = 0; v < x.a.size(); ++v)
        for (size_t j = 0; j < x.a[v].size(); ++j)
            for (size_t i = 0; i < x.a[v][j].size(); ++i) r.a[v][j][i] = Rat(x.a[v][j][i]);
    return r;
}

/// Frobenius action: omega* is fixed, eps^{j*}_i moves to eps^{j+1*}_i with
/// j + 1 taken mod f_v.
template <class T>
BasicCochar<T> sigma_act(const BasicCochar<T>& x) {
    BasicCochar<T> r = cochar_zero<T>(x.shape);
    r.c = x.c;
    for (size_t v = 0; v < x.a.size(); ++v) {
        const size_t fv = x.a[v].size();
        for (size_t j = 0; j < fv; ++j)
            for (size_t i = 0; i < x.a[v][j].size(); ++i) r.a[v][(j + 1) % fv][i] = x.a[v][j][i];
    }
    return r;
}

/// The dominant minuscule cocharacter mu = omega*.
inline Cochar mu(const AdlvShape& shape) {
    Cochar x = cochar_zero<Int>(shape);
    x.c = 1;
    return x;
}

/// Newton point of the basic class: omega* - (1/2) sum eps^{j*}_i.
inline RationalCochar newton_point(const AdlvShape& shape) {
    RationalCochar x = cochar_zero<Rat>(shape);
    x.c = 1;
    for (auto& place : x.a)
        for (auto& row : place)
            for (auto& e : row) e = make_rat(-1, 2);
    return x;
}

// The identification pi_1(G)_sigma = Z sends c*omega* + sum a*eps to c.
template <class T>
T kappa_of(const BasicCochar<T>& x) {
    return x.c;
}

/// Kottwitz point of the basic class in B(G, mu): equals kappa(mu) = 1.
inline Int kottwitz_point(const AdlvShape& shape) { return kappa_of(mu(shape)); }

// Membership in (1 - sigma) X_*(T): c = 0 and each (v, i)-coefficient block
// sums to zero around its Frobenius orbit.
template <class T>
bool in_one_minus_sigma(const BasicCochar<T>& x) {
    if (x.c != T(0)) return false;
    for (size_t v = 0; v < x.a.size(); ++v)
        for (size_t i = 0; i < static_cast<size_t>(x.shape.m); ++i) {
            T sum{};
            for (size_t j = 0; j < x.a[v].size(); ++j) sum += x.a[v][j][i];
            if (sum != T(0)) return false;
        }
    return true;
}

struct CocharClass {
    Cochar representative;
};

inline bool cochar_class_equal(const Cochar& x, const Cochar& y) {
    return in_one_minus_sigma(cochar_sub(x, y));
}

/// Best integral approximation of the Newton point, as a sigma-coinvariant
/// class: omega* minus ceil(f_v/2) at odd i and floor(f_v/2) at even i, all
/// concentrated in the j = 0 slot of each place.
inline CocharClass lambda_Gb(const AdlvShape& shape) {
    Cochar x = mu(shape);
    for (size_t v = 0; v < shape.f.size(); ++v) {
        const int fv = shape.f[v];
        for (int i = 0; i < shape.m; ++i) {
            const bool odd = (i + 1) % 2 == 1;
            x.a[v][0][i] = -(odd ? (fv + 1) / 2 : fv / 2);
        }
    }
    return CocharClass{x};
}

/// sigma-average: lambda^diamond spreads each (v, i) coefficient sum evenly
/// over the orbit (and fixes c).
inline RationalCochar diamond(const Cochar& x) {
    RationalCochar r = cochar_zero<Rat>(x.shape);
    r.c = Rat(x.c);
    for (size_t v = 0; v < x.a.size(); ++v) {
        const Int fv(static_cast<long>(x.a[v].size()));
        for (size_t i = 0; i < static_cast<size_t>(x.shape.m); ++i) {
            Int sum(0);
            for (size_t j = 0; j < x.a[v].size(); ++j) sum += x.a[v][j][i];
            const Rat avg = make_rat(sum, fv);
            for (size_t j = 0; j < x.a[v].size(); ++j) r.a[v][j][i] = avg;
        }
    }
    return r;
}

// Expansion of a cocharacter with c = 0 in the simple coroots: the
// coefficient of alpha^{j v}_i is the partial sum of the first i epsilon
// coefficients in slot (v, j). Exact because the coroot system is triangular.
inline std::vector<std::vector<std::vector<Rat>>> coroot_expansion(const RationalCochar& x) {
    if (x.c != 0)
        throw ValidationError("coroot expansion needs a trivial omega* coefficient");
    auto out = x.a;
    for (auto& place : out)
        for (auto& row : place)
            for (size_t i = 1; i < row.size(); ++i) row[i] += row[i - 1];
    return out;
}

/// Component count of X_mu(b) modulo J_b, closed form: prod_v C(f_v,
/// floor(f_v/2))^m.
inline Int count_components_closed(const AdlvShape& shape) {
    Int r(1);
    for (int fv : shape.f) {
        const Int b = binomial(static_cast<unsigned long>(fv), static_cast<unsigned long>(fv / 2));
        for (int i = 0; i < shape.m; ++i) r *= b;
    }
    return r;
}

inline Int count_components_closed(const PELInput& in) {
    return count_components_closed(adlv_shape(in));
}

/// The same count by exhausting the Weyl orbit shape: assignments a in
/// {-1,0}^(Psi x m) whose (v, i)-sums hit -ceil(f_v/2) at odd i and
/// -floor(f_v/2) at even i.
inline Int count_components_enum(const AdlvShape& shape) {
    const int bits = shape.m * shape.total_f();
    if (bits > 24)
        throw ValidationError("enumeration needs 2^(m * sum f_v) <= 2^24");
    // bit layout: lexicographic over (place, j, i)
    std::vector<int> targets; // per (place, i): required count of -1 entries
    for (size_t v = 0; v < shape.f.size(); ++v)
        for (int i = 0; i < shape.m; ++i)
            targets.push_back((i + 1) % 2 == 1 ? (shape.f[v] + 1) / 2 : shape.f[v] / 2);
    std::vector<int> offset(shape.f.size(), 0); // first bit of each place block
    for (size_t v = 1; v < shape.f.size(); ++v)
        offset[v] = offset[v - 1] + shape.f[v - 1] * shape.m;
    const std::uint64_t total = 1ull << bits;
    const std::uint64_t count = parallel_count(total, [&](std::uint64_t mask) -> std::uint64_t {
        for (size_t v = 0; v < shape.f.size(); ++v)
            for (int i = 0; i < shape.m; ++i) {
                int ones = 0;
                for (int j = 0; j < shape.f[v]; ++j)
                    ones += (mask >> (offset[v] + j * shape.m + i)) & 1;
                if (ones != targets[v * static_cast<size_t>(shape.m) + i]) return 0;
            }
        return 1;
    });
    return Int(static_cast<unsigned long>(count));
}

inline Int count_components_enum(const PELInput& in) {
    return count_components_enum(adlv_shape(in));
}

// Decode an enumeration mask into the cocharacter omega* + sum a eps (used by
// the Weyl-orbit characterization tests).
inline Cochar cochar_from_mask(const AdlvShape& shape, std::uint64_t mask) {
    Cochar x = mu(shape);
    int bit = 0;
    for (size_t v = 0; v < shape.f.size(); ++v)
        for (int j = 0; j < shape.f[v]; ++j)
            for (int i = 0; i < shape.m; ++i, ++bit)
                if ((mask >> bit) & 1) x.a[v][j][i] = -1;
    return x;
}

} // namespace ssmass
