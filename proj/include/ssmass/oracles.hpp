#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "ssmass/finite_field.hpp"
#include "ssmass/parallel.hpp"
#include "ssmass/rational.hpp"

// Brute-force verifiers for the closed-form paths. Each one exhausts its
// search space with the defining condition tested entry-wise and shares no
// machinery with the formulas it checks (beyond the exact carriers).
namespace ssmass::oracle {

enum class GroupKind { sp, u, gsp, gu_stab };

namespace detail {

constexpr std::uint64_t kCap = 1ull << 20;

inline std::uint64_t checked_space(std::uint64_t base, int cells) {
    std::uint64_t total = 1;
    for (int i = 0; i < cells; ++i) {
        if (total > kCap / base)
            throw ValidationError("enumeration search space exceeds the 2^20 cap");
        total *= base;
    }
    return total;
}

} // namespace detail

/// Exhaustive order of a finite classical group. sp counts A^T J A = J over
/// F_q (q a prime or prime square); u counts conj(A)^T A = I over F_{q^2}
/// (q prime); gsp counts A^T J A = c J over Z/q with c a unit (q arbitrary);
/// gu_stab counts conj(A)^T A = c I with c a nonzero base-field scalar.
inline Int enumerate_group_order(GroupKind kind, int n, long q) {
    if (n < 1 || q < 2)
        throw ValidationError("enumerate_group_order: need n >= 1, q >= 2");

    if (kind == GroupKind::gsp) {
        // over the ring Z/q
        const int dim = 2 * n;
        const int cells = dim * dim;
        const std::uint64_t total = detail::checked_space(static_cast<std::uint64_t>(q), cells);
        const std::uint64_t count = parallel_count(total, [&](std::uint64_t code) -> std::uint64_t {
            long a[20];
            for (int i = 0; i < cells; ++i) {
                a[i] = static_cast<long>(code % static_cast<std::uint64_t>(q));
                code /= static_cast<std::uint64_t>(q);
            }
            auto phi = [&](int r, int s) {
                long acc = 0;
                for (int k = 0; k < dim; ++k) {
                    const long ja = k < n ? a[(k + n) * dim + s] : (q - a[(k - n) * dim + s]) % q;
                    acc = (acc + a[k * dim + r] * ja) % q;
                }
                return acc % q;
            };
            const long c = phi(0, n);
            if (c == 0 || std::gcd(c, q) != 1) return 0;
            for (int r = 0; r < dim; ++r)
                for (int s = 0; s < dim; ++s) {
                    long expect = 0;
                    if (s - r == n) expect = c;
                    if (r - s == n) expect = (q - c) % q;
                    if (phi(r, s) != expect) return 0;
                }
            return 1;
        });
        return Int(static_cast<unsigned long>(count));
    }

    if (kind == GroupKind::sp) {
        Int base;
        unsigned e = 0;
        if (!is_prime_power(Int(q), &base, &e) || e > 2)
            throw ValidationError("sp enumeration needs q a prime or prime square");
        const FiniteField F(base.get_si(), static_cast<int>(e));
        const int dim = 2 * n;
        const int cells = dim * dim;
        const std::uint64_t total = detail::checked_space(static_cast<std::uint64_t>(F.q()), cells);
        const std::uint64_t count = parallel_count(total, [&](std::uint64_t code) -> std::uint64_t {
            FiniteField::Elem a[20];
            for (int i = 0; i < cells; ++i) {
                a[i] = F.from_index(static_cast<long>(code % static_cast<std::uint64_t>(F.q())));
                code /= static_cast<std::uint64_t>(F.q());
            }
            auto phi = [&](int r, int s) {
                FiniteField::Elem acc = F.zero();
                for (int k = 0; k < dim; ++k) {
                    const FiniteField::Elem ja =
                        k < n ? a[(k + n) * dim + s] : F.neg(a[(k - n) * dim + s]);
                    acc = F.add(acc, F.mul(a[k * dim + r], ja));
                }
                return acc;
            };
            for (int r = 0; r < dim; ++r)
                for (int s = 0; s < dim; ++s) {
                    FiniteField::Elem expect = F.zero();
                    if (s - r == n) expect = F.one();
                    if (r - s == n) expect = F.neg(F.one());
                    if (phi(r, s) != expect) return 0;
                }
            return 1;
        });
        return Int(static_cast<unsigned long>(count));
    }

    // unitary kinds: entries in F_{q^2}, hermitian form the identity
    if (!is_prime(Int(q)))
        throw ValidationError("unitary enumeration needs prime q");
    const FiniteField F(q, 2);
    const int cells = n * n;
    const std::uint64_t total = detail::checked_space(static_cast<std::uint64_t>(F.q()), cells);
    const bool similitude = kind == GroupKind::gu_stab;
    const std::uint64_t count = parallel_count(total, [&](std::uint64_t code) -> std::uint64_t {
        FiniteField::Elem a[20];
        for (int i = 0; i < cells; ++i) {
            a[i] = F.from_index(static_cast<long>(code % static_cast<std::uint64_t>(F.q())));
            code /= static_cast<std::uint64_t>(F.q());
        }
        auto herm = [&](int r, int s) {
            FiniteField::Elem acc = F.zero();
            for (int k = 0; k < n; ++k)
                acc = F.add(acc, F.mul(F.frobenius(a[k * n + r]), a[k * n + s]));
            return acc;
        };
        const FiniteField::Elem c = herm(0, 0);
        if (similitude) {
            if (F.is_zero(c) || c[1] != 0) return 0; // base-field similitude factor
        } else if (c != F.one()) {
            return 0;
        }
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s)
                if (herm(r, s) != (r == s ? c : F.zero())) return 0;
        return 1;
    });
    return Int(static_cast<unsigned long>(count));
}

// One finite place of the field, as plain data so the oracle is independent
// of the main input model.
struct BrauerPlace {
    long prime = 0;
    int index = 0;
    int f = 1;          // [F_v : Q_ell], equals f_v when v is unramified
    bool in_delta = false;
};

/// Ramification of D with B (x) D_{p,infinity} = Mat_2(D) by local invariant
/// arithmetic in (1/2)Z/Z: inv_v(D) = inv_v(B) + [F_v:Q_p] * inv_p(D_{p,oo})
/// at v | p, and inv_v(B) away from p.
inline std::set<std::pair<long, int>> brauer_delta_prime(const std::vector<BrauerPlace>& places, long p) {
    std::set<std::pair<long, int>> out;
    for (const auto& v : places) {
        Rat inv = v.in_delta ? make_rat(1, 2) : Rat(0);
        if (v.prime == p) inv += Rat(Int(v.f)) * make_rat(1, 2);
        // reduce mod 1
        Rat frac = inv - Rat(Int(inv.get_num() / inv.get_den()));
        if (frac < 0) frac += 1;
        if (frac == make_rat(1, 2)) out.insert({v.prime, v.index});
        else if (frac != 0)
            throw InvariantError("quaternionic Brauer invariant outside (1/2)Z/Z");
    }
    return out;
}

/// Eichler-Deuring mass by exhausting supersingular j-invariants of F_{p^2}:
/// one short Weierstrass model per j, supersingularity read off the Frobenius
/// trace over F_{p^2}, weights 1/6 and 1/4 at j = 0 and 1728 and 1/2 else.
inline Rat eichler_mass(long p) {
    if (p < 5 || p > 50 || !is_prime(Int(p)))
        throw ValidationError("eichler_mass expects a prime 5 <= p <= 50");
    const FiniteField F(p, 2);
    const long q = F.q();

    // chi(u) = +1 / -1 / 0 for nonzero squares / non-squares / zero
    std::vector<int> chi(static_cast<size_t>(q), -1);
    chi[0] = 0;
    for (long y = 1; y < q; ++y) {
        const auto sq = F.mul(F.from_index(y), F.from_index(y));
        chi[static_cast<size_t>(F.index(sq))] = 1;
    }

    const long j1728 = 1728 % p;
    Rat mass(0);
    for (long jidx = 0; jidx < q; ++jidx) {
        const FiniteField::Elem j = F.from_index(jidx);
        FiniteField::Elem a, b;
        if (F.is_zero(j)) {
            a = F.zero();
            b = F.one(); // y^2 = x^3 + 1
        } else if (j == F.from_base(j1728)) {
            a = F.one();
            b = F.zero(); // y^2 = x^3 + x
        } else {
            // y^2 = x^3 + 3j(1728-j) x + 2j(1728-j)^2
            const auto t = F.sub(F.from_base(j1728), j);
            a = F.mul(F.from_base(3), F.mul(j, t));
            b = F.mul(F.from_base(2), F.mul(j, F.mul(t, t)));
        }
        // #E(F_q) = q + 1 + sum_x chi(x^3 + a x + b)
        long sum = 0;
        for (long xi = 0; xi < q; ++xi) {
            const auto x = F.from_index(xi);
            const auto fx = F.add(F.mul(x, F.mul(x, x)), F.add(F.mul(a, x), b));
            sum += chi[static_cast<size_t>(F.index(fx))];
        }
        const long trace = -sum; // t = q + 1 - #E
        if (trace % p != 0) continue; // ordinary
        if (F.is_zero(j))
            mass += make_rat(1, 6);
        else if (j == F.from_base(j1728))
            mass += make_rat(1, 4);
        else
            mass += make_rat(1, 2);
    }
    return mass;
}

/// Weyl-orbit assignment count, re-derived by per-place recursive convolution
/// instead of the flat bitmask sweep: for each place and coordinate, count
/// subsets of Z/f_v of the forced size by the Pascal recursion, then multiply.
inline Int weyl_assignment_count(const std::vector<int>& f, int m) {
    int total_f = 0;
    for (int fv : f) total_f += fv;
    if (m * total_f > 24)
        throw ValidationError("assignment count cap: m * sum f_v <= 24");
    // ways(j, s): choices among coordinates j..f_v with s entries still to set
    struct Rec {
        int fv;
        long operator()(int j, int s) const {
            if (s < 0) return 0;
            if (j == fv) return s == 0 ? 1 : 0;
            return (*this)(j + 1, s) + (*this)(j + 1, s - 1);
        }
    };
    Int out(1);
    for (int fv : f) {
        const Rec rec{fv};
        for (int i = 1; i <= m; ++i) {
            const int target = i % 2 == 1 ? (fv + 1) / 2 : fv / 2;
            out *= Int(rec(0, target));
        }
    }
    return out;
}

} // namespace ssmass::oracle
