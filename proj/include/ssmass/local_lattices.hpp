#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "ssmass/rational.hpp"

namespace ssmass {

using RatMatrix = std::vector<std::vector<Rat>>;

inline RatMatrix mat_identity(size_t n) {
    RatMatrix m(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    const size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    RatMatrix r(n, std::vector<Rat>(c, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < c; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

inline RatMatrix mat_transpose(const RatMatrix& a) {
    if (a.empty()) return a;
    RatMatrix r(a[0].size(), std::vector<Rat>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

// Exact determinant by fraction-free elimination on a working copy.
inline Rat mat_det(RatMatrix a) {
    const size_t n = a.size();
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Rat f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

// Gram matrix of an alternating form on a lattice basis, localized at pi.
// Entries may have negative pi-valuation: lattices live in a vector space.
struct AlternatingGram {
    long pi = 0; // the prime giving the valuation
    RatMatrix entries;
};

// Invariant sequence d_1 <= ... <= d_n plus a basis certificate: columns of
// `basis` express the canonical basis in the input basis, basis^T * G * basis
// is the canonical form, and det(basis) has pi-valuation zero.
struct SymplecticDivisors {
    std::vector<long> d;
    RatMatrix basis;
};

inline RatMatrix symplectic_canonical_form(long pi, const std::vector<long>& d) {
    const size_t n = d.size();
    RatMatrix c(2 * n, std::vector<Rat>(2 * n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        const Rat v = pow_rat(Rat(Int(pi)), d[i]);
        c[i][n + i] = v;
        c[n + i][i] = -v;
    }
    return c;
}

/// Elementary-divisor normal form of an alternating Gram matrix: greedy pivot
/// on an entry of minimal pi-valuation, split off the hyperbolic pair, repeat.
/// Ties break at the lowest (row, column).
inline SymplecticDivisors symplectic_divisors(const AlternatingGram& g) {
    const size_t dim = g.entries.size();
    if (dim == 0 || dim % 2 != 0)
        throw ValidationError("alternating Gram matrix must have positive even dimension");
    for (size_t i = 0; i < dim; ++i) {
        if (g.entries[i].size() != dim)
            throw ValidationError("Gram matrix is not square");
        for (size_t j = 0; j < dim; ++j)
            if (g.entries[i][j] != -g.entries[j][i])
                throw ValidationError("Gram matrix is not alternating");
    }
    if (!is_prime(Int(g.pi)))
        throw ValidationError("localization prime must be prime");

    const size_t n = dim / 2;
    const Int pi(g.pi);
    // u[k] = current basis vectors, as coordinate columns in the input basis
    RatMatrix u = mat_identity(dim);
    auto pair_val = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
        Rat acc(0);
        for (size_t i = 0; i < dim; ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < dim; ++j)
                if (g.entries[i][j] != 0 && y[j] != 0) acc += x[i] * g.entries[i][j] * y[j];
        }
        return acc;
    };
    auto col = [&](size_t k) {
        std::vector<Rat> v(dim);
        for (size_t i = 0; i < dim; ++i) v[i] = u[i][k];
        return v;
    };
    auto set_col = [&](size_t k, const std::vector<Rat>& v) {
        for (size_t i = 0; i < dim; ++i) u[i][k] = v[i];
    };

    std::vector<size_t> active(dim);
    for (size_t i = 0; i < dim; ++i) active[i] = i;
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<long> dseq;

    for (size_t step = 0; step < n; ++step) {
        bool found = false;
        long best_val = 0;
        size_t br = 0, bs = 0;
        for (size_t a = 0; a < active.size(); ++a)
            for (size_t b = a + 1; b < active.size(); ++b) {
                const Rat v = pair_val(col(active[a]), col(active[b]));
                if (v == 0) continue;
                const long w = val_p(v, pi);
                if (!found || w < best_val) {
                    found = true;
                    best_val = w;
                    br = a;
                    bs = b;
                }
            }
        if (!found)
            throw ValidationError("Gram matrix is singular");
        const size_t r = active[br], s = active[bs];
        const Rat pd = pow_rat(Rat(pi), best_val);
        // normalize so the pairing value is exactly pi^d
        {
            const Rat unit = pair_val(col(r), col(s)) / pd;
            auto cs = col(s);
            for (auto& x : cs) x /= unit;
            set_col(s, cs);
        }
        // clear the pair against every other active vector; the pivot has
        // minimal valuation, so the coefficients are pi-integral
        for (size_t a = 0; a < active.size(); ++a) {
            const size_t t = active[a];
            if (t == r || t == s) continue;
            const Rat alpha = pair_val(col(t), col(s)) / pd;
            const Rat beta = pair_val(col(t), col(r)) / pd;
            auto ct = col(t);
            const auto cr = col(r), cs = col(s);
            for (size_t i = 0; i < dim; ++i) ct[i] += -alpha * cr[i] + beta * cs[i];
            set_col(t, ct);
        }
        pairs.push_back({r, s});
        dseq.push_back(best_val);
        active.erase(active.begin() + bs);
        active.erase(active.begin() + br);
    }

    // reorder columns to e_1..e_n, f_1..f_n
    RatMatrix basis(dim, std::vector<Rat>(dim, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t row = 0; row < dim; ++row) {
            basis[row][i] = u[row][pairs[i].first];
            basis[row][n + i] = u[row][pairs[i].second];
        }

    SymplecticDivisors out{dseq, basis};
    for (size_t i = 0; i + 1 < n; ++i)
        if (out.d[i] > out.d[i + 1])
            throw InvariantError("symplectic divisors came out non-monotone");
    if (val_p(mat_det(basis), pi) != 0)
        throw InvariantError("certificate basis has nonzero determinant valuation");
    if (mat_mul(mat_transpose(basis), mat_mul(g.entries, basis)) != symplectic_canonical_form(g.pi, out.d))
        throw InvariantError("certificate identity basis^T G basis = canonical failed");
    return out;
}

// Complete isomorphism invariant of a Hermitian lattice over the local
// division quaternion order: the ranks n_i of the index-i components. Odd
// indices carry only hyperbolic planes, so those ranks are even.
struct JordanType {
    std::map<long, long> ranks; // i -> n_i, only n_i > 0 stored

    long total_rank() const {
        long t = 0;
        for (const auto& [i, n] : ranks) t += n;
        return t;
    }

    friend bool operator==(const JordanType& a, const JordanType& b) { return a.ranks == b.ranks; }
};

inline JordanType make_jordan(std::map<long, long> ranks) {
    for (auto it = ranks.begin(); it != ranks.end();) {
        if (it->second == 0) {
            it = ranks.erase(it);
            continue;
        }
        if (it->second < 0)
            throw ValidationError("Jordan rank must be nonnegative");
        if (it->first % 2 != 0 && it->second % 2 != 0)
            throw ValidationError("odd Jordan index " + std::to_string(it->first) +
                                  " must have even rank (hyperbolic planes only)");
        ++it;
    }
    return JordanType{std::move(ranks)};
}

/// Dual negates Jordan indices: H(i)^dual ~ H(-i), (pi^i)^dual ~ (pi^{-i}).
inline JordanType hermitian_dual(const JordanType& j) {
    std::map<long, long> r;
    for (const auto& [i, n] : j.ranks) r[-i] = n;
    return JordanType{std::move(r)};
}

/// Multiplying the lattice by Pi^k shifts every index by 2k.
inline JordanType scale_by_Pi(const JordanType& j, long k) {
    std::map<long, long> r;
    for (const auto& [i, n] : j.ranks) r[i + 2 * k] = n;
    return JordanType{std::move(r)};
}

/// Lambda = Pi^i * Lambda^dual holds exactly when the whole lattice sits in
/// index i.
inline bool is_Pi_modular(const JordanType& j, long i) {
    return j.ranks.size() == 1 && j.ranks.begin()->first == i;
}

inline bool modular_exists(long n, long i) {
    if (n < 1)
        throw ValidationError("rank must be >= 1");
    return n % 2 == 0 || i % 2 == 0;
}

/// Canonical Pi^i-modular lattice of rank n when one exists: H(i)^{n/2}, with
/// a single (pi^{i/2}) summand left over for odd n.
inline std::optional<JordanType> modular_type(long n, long i) {
    if (!modular_exists(n, i)) return std::nullopt;
    return make_jordan({{i, n}});
}

/// Existence on the skew-Hermitian side reduces to the Hermitian side through
/// the index shift i -> i + ord(gamma) - 1.
inline bool skew_modular_exists(long n, long i, long ord_gamma) {
    return modular_exists(n, i + ord_gamma - 1);
}

/// In the split (matrix-algebra) case a self-dual lattice exists and is
/// unique in every rank.
inline bool split_self_dual_exists(long n) {
    if (n < 1)
        throw ValidationError("rank must be >= 1");
    return true;
}

} // namespace ssmass
