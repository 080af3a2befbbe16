#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssmass/adlv.hpp"
#include "ssmass/arith_data.hpp"
#include "ssmass/groups_finite.hpp"
#include "ssmass/polynomial.hpp"

namespace ssmass {

/// The parahoric index of maximum volume: c = 0 for odd m, c = m/2 for even m.
inline int max_volume_c(int m) {
    if (m < 1)
        throw ValidationError("max_volume_c: m must be >= 1");
    return m % 2 == 0 ? m / 2 : 0;
}

namespace detail {

template <class T>
T kappa_c_generic(int m, int c, const T& q, const T& one) {
    if (c < 0 || 2 * c > m)
        throw ValidationError("kappa: need 0 <= c <= floor(m/2)");
    T r = one;
    for (int i = 1; i <= c; ++i) {
        T q4i = one;
        for (int t = 0; t < 4 * i; ++t) q4i = q4i * q;
        r = r * (q4i - one);
    }
    for (int i = 1; i <= m - 2 * c; ++i) {
        T qi = one;
        for (int t = 0; t < i; ++t) qi = qi * q;
        T term = i % 2 == 0 ? T(qi - one) : T(qi + one);
        r = r * term;
    }
    return r;
}

template <class T>
T sp_numerator_generic(int m, const T& q, const T& one) {
    T r = one;
    for (int i = 1; i <= m; ++i) {
        T q2i = one;
        for (int t = 0; t < 2 * i; ++t) q2i = q2i * q;
        r = r * (q2i - one);
    }
    return r;
}

} // namespace detail

/// kappa_v(m, c) = prod_{i<=c} (q^{4i} - 1) * prod_{i<=m-2c} (q^i - (-1)^i).
inline Rat kappa_c(int m, int c, const Rat& q) {
    return detail::kappa_c_generic<Rat>(m, c, q, Rat(1));
}

inline RationalPolynomial kappa_c_poly(int m, int c) {
    return detail::kappa_c_generic<RationalPolynomial>(m, c, RationalPolynomial::variable(),
                                                       RationalPolynomial(Rat(1)));
}

/// lambda_v(P^1_c) = prod_{i<=m} (q^{2i} - 1) / kappa_v(m, c): the reciprocal
/// normalized volume of the parahoric attached to c.
inline Rat lambda_parahoric(int m, int c, const Rat& q) {
    return detail::sp_numerator_generic<Rat>(m, q, Rat(1)) / kappa_c(m, c, q);
}

/// Symbolic variant; the division is exact for every legal (m, c), so a
/// nonzero remainder means the formula got transcribed wrong.
inline RationalPolynomial lambda_parahoric_poly(int m, int c) {
    auto quo = poly_div_exact(
        detail::sp_numerator_generic<RationalPolynomial>(m, RationalPolynomial::variable(),
                                                         RationalPolynomial(Rat(1))),
        kappa_c_poly(m, c));
    if (!quo)
        throw InvariantError("lambda_parahoric(m=" + std::to_string(m) + ", c=" + std::to_string(c) +
                             ") is not a polynomial: formula transcription error");
    return *quo;
}

namespace detail {

inline RationalPolynomial alternating_product_poly(int m) {
    // prod_{i=1..m} (q^i + (-1)^i)
    RationalPolynomial r{Rat(1)};
    for (int i = 1; i <= m; ++i) {
        RationalPolynomial t = RationalPolynomial::monomial(Rat(1), static_cast<unsigned>(i));
        r = r * (t + RationalPolynomial(Rat(i % 2 == 0 ? 1 : -1)));
    }
    return r;
}

inline RationalPolynomial even_product_poly(int m) {
    // prod_{i=1..m/2} (q^{4i-2} - 1); m must be even
    RationalPolynomial r{Rat(1)};
    for (int i = 1; i <= m / 2; ++i)
        r = r * (RationalPolynomial::monomial(Rat(1), static_cast<unsigned>(4 * i - 2)) -
                 RationalPolynomial(Rat(1)));
    return r;
}

} // namespace detail

/// Local lambda factor in the component count, for a place dividing the
/// discriminant of D: the alternating product when m is odd or (away from p)
/// gamma has odd valuation, the even product otherwise.
inline RationalPolynomial lambda_component_poly(int m, bool v_over_p, std::optional<int> gamma_parity) {
    if (!v_over_p && !gamma_parity)
        throw ValidationError("lambda factor away from p needs the gamma parity");
    if (v_over_p && gamma_parity)
        throw ValidationError("lambda factor over p takes no gamma parity");
    if (m % 2 == 1 || (!v_over_p && *gamma_parity == 1))
        return detail::alternating_product_poly(m);
    return detail::even_product_poly(m);
}

inline Rat lambda_component(int m, const Rat& q, bool v_over_p, std::optional<int> gamma_parity) {
    return lambda_component_poly(m, v_over_p, gamma_parity).eval(q);
}

/// Local factor in the superspecial count, for v | p or v dividing the
/// discriminant of D.
inline Rat lambda_superspecial(int m, const Rat& q, bool v_over_p, bool in_delta_prime,
                               std::optional<int> gamma_parity) {
    if (!v_over_p && !in_delta_prime)
        throw ValidationError("superspecial lambda factor only exists at v | p or at ramified places of D");
    if (!v_over_p && !gamma_parity)
        throw ValidationError("superspecial lambda factor away from p needs the gamma parity");
    if (v_over_p && !in_delta_prime) {
        // prod (q^i + 1)
        Rat r(1);
        for (int i = 1; i <= m; ++i) r *= pow_rat(q, i) + 1;
        return r;
    }
    if (!v_over_p && *gamma_parity == 0) {
        if (m % 2 != 0)
            throw ValidationError("even gamma parity away from p requires even m (self-dual existence)");
        return detail::even_product_poly(m).eval(q);
    }
    return detail::alternating_product_poly(m).eval(q);
}

// A forced parahoric index at one place; only the expert exploration path
// uses these, never the headline counts.
struct ParahoricChoice {
    long prime = 0;
    int place_index = 0;
    int c = 0;
};

struct LocalFactor {
    long prime = 0;
    int place_index = 0;
    Rat value;
    std::string rule;
};

struct MassReport {
    Rat mass;
    int sign_exponent = 0;   // the zeta product carries sign (-1)^this = (-1)^(dm(m+1)/2)
    Rat zeta_part;           // prod_j zeta_F(1-2j)
    std::vector<LocalFactor> local_factors;
};

/// Mass of I^1 for the level built from the maximum-volume parahorics: signed
/// zeta product over 2^{md} times the lambda factors at the ramified places
/// of D. Optional overrides force the parahoric index at chosen places
/// (exploration only; the headline counts never use them).
inline MassReport mass_I1(const PELInput& in,
                          const std::vector<ParahoricChoice>& parahoric_override = {}) {
    require_valid(in);
    if (!self_dual_exists(in))
        throw GateError("hypothesis violated: no self-dual lattice exists "
                        "(m is odd and some ramified place has even gamma parity)");
    require_sec4_gate(in);
    const auto zetas = zeta_values_for(in);
    const int d = in.field.degree_d;
    const int m = in.m;

    MassReport rep;
    rep.sign_exponent = d * m * (m + 1) / 2;
    rep.zeta_part = 1;
    for (const auto& z : zetas) rep.zeta_part *= z;

    Rat mass = rep.zeta_part * make_rat(1, pow_int(2, static_cast<unsigned long>(m) * d));
    if (rep.sign_exponent % 2 == 1) mass = -mass;

    for (const auto& ov : parahoric_override)
        if (ov.c < 0 || 2 * ov.c > m)
            throw ValidationError("parahoric override c out of range [0, m/2]");

    for (const auto& pr : delta_prime(in).places) {
        const auto vs = places_over(in.field, pr.first);
        const LocalPlace& v = vs[static_cast<size_t>(pr.second)];
        const Rat q(residue_q(v));
        const bool over_p = pr.first == in.p;
        Rat lam;
        std::string rule;
        const ParahoricChoice* forced = nullptr;
        for (const auto& ov : parahoric_override)
            if (ov.prime == pr.first && ov.place_index == pr.second) forced = &ov;
        if (forced) {
            lam = lambda_parahoric(m, forced->c, q);
            rule = "override parahoric c=" + std::to_string(forced->c);
        } else if (over_p) {
            lam = lambda_component(m, q, true, std::nullopt);
            rule = m % 2 == 1 ? "v|p, m odd: alternating product (parahoric c=0)"
                              : "v|p, m even: even product (parahoric c=m/2)";
        } else {
            const auto parity = gamma_parity_at(in.quat, pr.first, pr.second);
            lam = lambda_component(m, q, false, parity);
            rule = *parity == 1 ? "ramified, odd gamma valuation: alternating product (parahoric c=0)"
                                : "ramified, even gamma valuation: even product (parahoric c=m/2)";
        }
        rep.local_factors.push_back({pr.first, pr.second, lam, rule});
        mass *= lam;
    }

    if (mass <= 0)
        throw InvariantError("mass came out nonpositive (" + to_string(mass) +
                             "); check the supplied zeta values");
    rep.mass = mass;
    return rep;
}

struct ComponentFactor {
    std::string name;
    Rat value;
    std::string rule;
};

struct ComponentReport {
    Int count;
    std::vector<ComponentFactor> factors;
    std::vector<std::string> notes;
};

namespace detail {

inline Int require_integral_positive(const Rat& total, const std::string& what) {
    if (!is_integral(total))
        throw InvariantError(what + " came out non-integral (" + to_string(total) +
                             "); this usually means inconsistent user-supplied zeta values");
    if (total <= 0)
        throw InvariantError(what + " came out nonpositive (" + to_string(total) + ")");
    return Int(total.get_num());
}

} // namespace detail

/// Number of irreducible components of the supersingular locus:
/// |G(Z/NZ)| * prod_v C(f_v, floor(f_v/2))^m * Mass(I^1, U^1).
inline ComponentReport count_components(const PELInput& in) {
    require_valid(in);
    const auto g_rep = order_G_modN(in);
    const auto adlv = count_components_closed(in);
    const auto mass = mass_I1(in);

    // the factor list multiplies out to the count exactly: the mass appears
    // through its zeta part and its local lambda factors
    Rat mass_zeta = mass.zeta_part * make_rat(1, pow_int(2, static_cast<unsigned long>(in.m) * in.field.degree_d));
    if (mass.sign_exponent % 2 == 1) mass_zeta = -mass_zeta;

    ComponentReport rep;
    rep.notes = g_rep.notes;
    rep.factors.push_back({"level", Rat(g_rep.order), "|G(Z/NZ)|"});
    rep.factors.push_back({"adlv", Rat(adlv), "components of X_mu(b) mod J_b: prod C(f_v, floor(f_v/2))^m"});
    rep.factors.push_back({"mass-zeta", mass_zeta,
                           "(-1)^(dm(m+1)/2) / 2^(md) * prod_j zeta_F(1-2j)"});
    for (const auto& f : mass.local_factors)
        rep.factors.push_back({"lambda(" + std::to_string(f.prime) + "," + std::to_string(f.place_index) + ")",
                               f.value, f.rule});
    Rat total = Rat(g_rep.order) * Rat(adlv) * mass.mass;
    rep.count = detail::require_integral_positive(total, "component count");
    return rep;
}

/// Cardinality of the superspecial locus: |G(Z/NZ)| times the signed zeta
/// part times the primed lambda factors over v | p and the ramified places
/// of D.
inline ComponentReport count_superspecial(const PELInput& in) {
    require_valid(in);
    if (!self_dual_exists(in))
        throw GateError("hypothesis violated: no self-dual lattice exists "
                        "(m is odd and some ramified place has even gamma parity)");
    require_sec4_gate(in);
    const auto g_rep = order_G_modN(in);
    const auto zetas = zeta_values_for(in);
    const int d = in.field.degree_d;
    const int m = in.m;
    const auto dp = delta_prime(in);

    ComponentReport rep;
    rep.notes = g_rep.notes;
    rep.factors.push_back({"level", Rat(g_rep.order), "|G(Z/NZ)|"});

    Rat zeta_part(1);
    for (const auto& z : zetas) zeta_part *= z;
    Rat mass_zeta = zeta_part * make_rat(1, pow_int(2, static_cast<unsigned long>(m) * d));
    if ((d * m * (m + 1) / 2) % 2 == 1) mass_zeta = -mass_zeta;
    Rat total = Rat(g_rep.order) * mass_zeta;
    rep.factors.push_back({"mass-zeta", mass_zeta, "(-1)^(dm(m+1)/2) / 2^(md) * prod_j zeta_F(1-2j)"});

    // places v | p (all of them) and ramified places of D away from p
    std::set<std::pair<long, int>> support = dp.places;
    {
        const auto vs = places_over(in.field, in.p);
        for (int i = 0; i < static_cast<int>(vs.size()); ++i) support.insert({in.p, i});
    }
    for (const auto& pr : support) {
        const auto vs = places_over(in.field, pr.first);
        const LocalPlace& v = vs[static_cast<size_t>(pr.second)];
        const bool over_p = pr.first == in.p;
        const bool in_dp = dp.places.count(pr) > 0;
        const Rat lam = lambda_superspecial(m, Rat(residue_q(v)), over_p, in_dp,
                                            gamma_parity_at(in.quat, pr.first, pr.second));
        rep.factors.push_back({"lambda'(" + std::to_string(pr.first) + "," + std::to_string(pr.second) + ")",
                               lam,
                               over_p && !in_dp ? "v|p split in D: prod (q^i + 1)"
                                                : "superspecial local factor"});
        total *= lam;
    }
    rep.count = detail::require_integral_positive(total, "superspecial count");
    return rep;
}

struct SiegelCounts {
    Int superspecial;
    Int components;
    int dim = 0;
    std::string note;
};

/// Siegel specialization: C(g, N) = |GSp_{2g}(Z/NZ)| * (-1)^{g(g+1)/2} / 2^g *
/// prod zeta(1-2i); superspecial and component counts follow with the
/// alternating / even lambda products, and the supersingular locus has
/// dimension floor(g^2/4).
inline SiegelCounts siegel_counts(int g, const Int& N, long p) {
    if (g < 1 || N < 3 || !is_prime(Int(p)))
        throw ValidationError("siegel_counts: need g >= 1, N >= 3, p prime");
    if (gcd_int(Int(p), N) != 1)
        throw ValidationError("siegel_counts: gcd(p, N) != 1");
    Rat c(order_gsp_modN(g, N).order);
    c /= Rat(pow_int(2, static_cast<unsigned long>(g)));
    for (int i = 1; i <= g; ++i) c *= zeta_neg(static_cast<unsigned>(i));
    if ((g * (g + 1) / 2) % 2 == 1) c = -c;

    const Rat pr{Int(p)};
    const Rat sp = detail::alternating_product_poly(g).eval(pr);
    const Rat lam = g % 2 == 1 ? sp : detail::even_product_poly(g).eval(pr);

    SiegelCounts out;
    out.superspecial = detail::require_integral_positive(c * sp, "Siegel superspecial count");
    out.components = detail::require_integral_positive(c * lam, "Siegel component count");
    out.dim = g * g / 4;
    out.note = "sign convention: (-1)^(g(g+1)/2)";
    return out;
}

/// dim of the supersingular locus: sum over v | p of floor(f_v/2) m(m+1)/2 +
/// (f_v - 2 floor(f_v/2)) floor(m^2/4).
inline Int supersingular_dimension(const PELInput& in) {
    require_valid(in);
    require_sec4_gate(in);
    Int dim(0);
    for (const auto& v : places_over(in.field, in.p)) {
        const long half = v.inertia_f / 2;
        dim += Int(half) * (static_cast<long>(in.m) * (in.m + 1) / 2);
        dim += Int(v.inertia_f - 2 * half) * (static_cast<long>(in.m) * in.m / 4);
    }
    return dim;
}

} // namespace ssmass
