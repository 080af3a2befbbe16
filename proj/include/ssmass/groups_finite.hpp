#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssmass/arith_data.hpp"
#include "ssmass/finite_field.hpp"
#include "ssmass/rational.hpp"

namespace ssmass {

struct GroupOrderReport {
    Int order;
    std::map<Int, unsigned> factorization;
    // (factor value, rule it came from); the product of factors is the order
    std::vector<std::pair<std::string, std::string>> formula_trace;
    std::vector<std::string> notes;
};

inline GroupOrderReport finish_report(Int order, std::vector<std::pair<std::string, std::string>> trace,
                                      std::vector<std::string> notes = {}) {
    GroupOrderReport r;
    r.order = order;
    r.factorization = factorize(order);
    r.formula_trace = std::move(trace);
    r.notes = std::move(notes);
    return r;
}

/// |Sp_{2n}(F_q)| = q^{n^2} prod_{i=1..n} (q^{2i} - 1). Accepts n = 0 (trivial
/// group) so reductive-quotient factors can degenerate.
inline Int order_sp(int n, const Int& q) {
    if (n < 0)
        throw ValidationError("order_sp: n must be >= 0");
    if (n == 0) return 1;
    if (!is_prime_power(q))
        throw ValidationError("order_sp: q = " + to_string(q) + " is not a prime power");
    Int r = pow_int(q, static_cast<unsigned long>(n) * n);
    for (int i = 1; i <= n; ++i)
        r *= pow_int(q, 2 * static_cast<unsigned long>(i)) - 1;
    return r;
}

/// |U_n(F_q)| = q^{n(n-1)/2} prod_{i=1..n} (q^i - (-1)^i).
inline Int order_u(int n, const Int& q) {
    if (n < 0)
        throw ValidationError("order_u: n must be >= 0");
    if (n == 0) return 1;
    if (!is_prime_power(q))
        throw ValidationError("order_u: q = " + to_string(q) + " is not a prime power");
    Int r = pow_int(q, static_cast<unsigned long>(n) * (n - 1) / 2);
    for (int i = 1; i <= n; ++i)
        r *= pow_int(q, static_cast<unsigned long>(i)) - (i % 2 == 0 ? 1 : -1);
    return r;
}

/// Order of the maximal reductive quotient of the parahoric attached to c:
/// Sp_{2c} over the quadratic residue extension times U_{m-2c} over the
/// residue field.
inline Int order_reductive_quotient(int m, int c, const LocalPlace& v) {
    if (c < 0 || 2 * c > m)
        throw ValidationError("order_reductive_quotient: need 0 <= c <= m/2");
    const Int q = residue_q(v);
    return order_sp(c, q * q) * order_u(m - 2 * c, q);
}

/// |GSp_{2g}(Z/NZ)|: multiplicative over the prime factorization of N, with
/// |GSp(F_ell)| = (ell-1) |Sp(F_ell)| (the similitude character is onto) and
/// smooth lifting ell^{(k-1) dim} for dim GSp_{2g} = 2g^2 + g + 1.
inline GroupOrderReport order_gsp_modN(int g, const Int& N) {
    if (g < 1 || N < 1)
        throw ValidationError("order_gsp_modN: need g >= 1 and N >= 1");
    Int order = 1;
    std::vector<std::pair<std::string, std::string>> trace;
    for (const auto& [ell, k] : factorize(N)) {
        const unsigned long dim = 2ul * g * g + g + 1;
        const Int lift = pow_int(ell, (k - 1) * dim);
        const Int sim = ell - 1;
        const Int sp = order_sp(g, ell);
        const Int factor = lift * sim * sp;
        order *= factor;
        trace.push_back({to_string(factor),
                         "ell=" + to_string(ell) + ": lift^" + std::to_string(k - 1) +
                             " * (ell-1) * |Sp_" + std::to_string(2 * g) + "(F_ell)|"});
    }
    return finish_report(order, std::move(trace));
}

namespace detail {

// |G^1_v(F_ell)| at a place v | ell: split places give |Sp_{2m}(F_q_v)|;
// ramified places give the smooth parahoric model, ell^{dim unipotent radical}
// times the reductive-quotient order, with c fixed by the gamma parity.
inline Int order_G1_v(int m, long ell, const LocalPlace& v, std::optional<int> gamma_parity,
                      std::vector<std::pair<std::string, std::string>>* trace) {
    const Int q = residue_q(v);
    if (!gamma_parity) {
        const Int r = order_sp(m, q);
        if (trace)
            trace->push_back({to_string(r), "v|" + std::to_string(ell) + " split: |Sp_" +
                                                std::to_string(2 * m) + "(F_" + to_string(q) + ")|"});
        return r;
    }
    int c;
    if (*gamma_parity == 1) {
        c = 0;
    } else {
        if (m % 2 != 0)
            throw InvariantError(
                "ramified place over " + std::to_string(ell) +
                " has even gamma parity with m odd: no self-dual lattice exists there, so the "
                "integral model is empty (self-dual existence criterion fails)");
        c = m / 2;
    }
    const long f = v.inertia_f;
    const long D = f * (2l * m * m + m);
    const long dim_red = 2 * f * (2l * c * c + c) + f * (m - 2l * c) * (m - 2l * c);
    const Int q2 = q * q;
    const Int red = order_sp(c, q2) * order_u(m - 2 * c, q);
    const Int r = pow_int(Int(ell), static_cast<unsigned long>(D - dim_red)) * red;
    if (trace)
        trace->push_back({to_string(r), "v|" + std::to_string(ell) + " ramified, parahoric c=" +
                                            std::to_string(c) + ": ell^(dim radical) * |Sp_" +
                                            std::to_string(2 * c) + "(F_" + to_string(q2) + ")| * |U_" +
                                            std::to_string(m - 2 * c) + "(F_" + to_string(q) + ")|"});
    return r;
}

} // namespace detail

/// |G(Z/NZ)| for the integral similitude model: multiplicative over ell^k || N,
/// each factor ell^{(k-1)(1 + d(2m^2+m))} * (ell-1) * prod_{v|ell} |G^1_v(F_ell)|.
/// Primes ramified in F are refused; a deck override short-circuits the
/// computation.
inline GroupOrderReport order_G_modN(const PELInput& in) {
    // the group order is defined for any N >= 1; the N >= 3 bound only
    // matters for the moduli counts, so it alone is waived here
    {
        auto bad = validate(in);
        std::erase_if(bad, [](const std::string& b) { return b == "N must be >= 3"; });
        if (!bad.empty()) {
            std::string msg = "invalid input:";
            for (const auto& b : bad) msg += "\n  " + b;
            throw ValidationError(msg);
        }
        if (in.N < 1)
            throw ValidationError("order_G_modN needs N >= 1");
    }
    if (in.order_G_override) {
        if (*in.order_G_override < 1)
            throw ValidationError("order_G_modN override must be positive");
        return finish_report(*in.order_G_override, {{to_string(*in.order_G_override), "user-supplied override"}},
                             {"|G(Z/NZ)| taken from the deck override, not computed"});
    }
    Int order = 1;
    std::vector<std::pair<std::string, std::string>> trace;
    std::vector<std::string> notes;
    for (const auto& [ell, k] : factorize(in.N)) {
        const long ell_l = ell.get_si();
        const auto vs = places_over(in.field, ell_l);
        for (int i = 0; i < static_cast<int>(vs.size()); ++i)
            if (vs[i].ram_e != 1)
                throw GateError("cannot compute |G(Z/NZ)|: prime " + to_string(ell) +
                                " is ramified in F at place " + std::to_string(i) +
                                " (no integral model there); supply overrides.order_G_modN in the deck");
        const unsigned long dim = 1 + static_cast<unsigned long>(in.field.degree_d) * (2ul * in.m * in.m + in.m);
        const Int lift = pow_int(ell, (k - 1) * dim);
        if (k > 1)
            trace.push_back({to_string(lift), "ell=" + to_string(ell) + ": smooth lift ell^((k-1) dim G)"});
        const Int sim = ell - 1;
        trace.push_back({to_string(sim), "ell=" + to_string(ell) + ": similitude index (ell-1)"});
        Int factor = lift * sim;
        for (int i = 0; i < static_cast<int>(vs.size()); ++i) {
            bool ram = is_ramified_at(in.quat, ell_l, i);
            if (ram) notes.push_back("parahoric-model order used at the ramified place over " + to_string(ell));
            factor *= detail::order_G1_v(in.m, ell_l, vs[i], gamma_parity_at(in.quat, ell_l, i), &trace);
        }
        order *= factor;
    }
    return finish_report(order, std::move(trace), std::move(notes));
}

enum class SimKind { symplectic, hermitian_stabilizer };

/// Residue-level check that the similitude character of the lattice
/// stabilizer surjects onto the unit group, by exhausting the finite group.
inline bool verify_similitude_surjective(SimKind kind, int n, long q) {
    if (q > 4 || n < 1 || 2 * n > 4)
        throw ValidationError("similitude check capped at q <= 4, 2n <= 4");
    std::vector<bool> hit(static_cast<size_t>(q), false);

    if (kind == SimKind::symplectic) {
        Int qp;
        unsigned e = 0;
        if (!is_prime_power(Int(q), &qp, &e) || (e != 1 && e != 2))
            throw ValidationError("similitude check needs q a prime or prime square");
        FiniteField F(qp.get_si(), static_cast<int>(e));
        const int dim = 2 * n;
        const long cells = dim * dim;
        long total = 1;
        for (long i = 0; i < cells; ++i) {
            if (total > (1l << 20) / F.q())
                throw ValidationError("similitude enumeration exceeds the 2^20 cap");
            total *= F.q();
        }
        std::vector<FiniteField::Elem> A(cells);
        for (long code = 0; code < total; ++code) {
            long rem = code;
            for (long i = 0; i < cells; ++i) {
                A[i] = F.from_index(rem % F.q());
                rem /= F.q();
            }
            // A^T J A = c J with J the standard symplectic form
            auto phi = [&](int r, int s) {
                // (A^T J A)_{rs} = sum_k A_{k r} (J A)_{k s}
                FiniteField::Elem acc = F.zero();
                for (int k = 0; k < dim; ++k) {
                    // (J A)_{k s}: J has (i, n+i) = 1, (n+i, i) = -1
                    FiniteField::Elem ja = k < n ? A[(k + n) * dim + s] : F.neg(A[(k - n) * dim + s]);
                    acc = F.add(acc, F.mul(A[k * dim + r], ja));
                }
                return acc;
            };
            FiniteField::Elem c = phi(0, n);
            if (F.is_zero(c)) continue; // similitude factor ranges over all of F_q^x
            bool ok = true;
            for (int r = 0; r < dim && ok; ++r)
                for (int s = 0; s < dim && ok; ++s) {
                    FiniteField::Elem expect = F.zero();
                    if (s - r == n) expect = c;
                    if (r - s == n) expect = F.neg(c);
                    if (phi(r, s) != expect) ok = false;
                }
            if (ok) hit[static_cast<size_t>(F.index(c))] = true;
        }
        for (long t = 1; t < q; ++t)
            if (!hit[static_cast<size_t>(t)]) return false;
        return true;
    }

    // hermitian stabilizer: GU_n over F_q at residue level, entries in F_{q^2},
    // condition conj(A)^T A = c I with c in F_q^x
    if (!is_prime(Int(q)))
        throw ValidationError("hermitian similitude check needs prime q");
    FiniteField F(q, 2);
    const long cells = static_cast<long>(n) * n;
    long total = 1;
    for (long i = 0; i < cells; ++i) {
        if (total > (1l << 20) / F.q())
            throw ValidationError("similitude enumeration exceeds the 2^20 cap");
        total *= F.q();
    }
    std::vector<FiniteField::Elem> A(cells);
    for (long code = 0; code < total; ++code) {
        long rem = code;
        for (long i = 0; i < cells; ++i) {
            A[i] = F.from_index(rem % F.q());
            rem /= F.q();
        }
        auto herm = [&](int r, int s) {
            FiniteField::Elem acc = F.zero();
            for (int k = 0; k < n; ++k)
                acc = F.add(acc, F.mul(F.frobenius(A[k * n + r]), A[k * n + s]));
            return acc;
        };
        FiniteField::Elem c = herm(0, 0);
        if (F.is_zero(c) || c[1] != 0) continue;
        bool ok = true;
        for (int r = 0; r < n && ok; ++r)
            for (int s = 0; s < n && ok; ++s)
                if (herm(r, s) != (r == s ? c : F.zero())) ok = false;
        if (ok) hit[static_cast<size_t>(c[0] % q)] = true;
    }
    for (long t = 1; t < q; ++t)
        if (!hit[static_cast<size_t>(t)]) return false;
    return true;
}

} // namespace ssmass
