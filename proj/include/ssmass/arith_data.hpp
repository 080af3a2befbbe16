#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ssmass/bernoulli.hpp"
#include "ssmass/rational.hpp"

namespace ssmass {

// Local shape of a finite place: residue characteristic ell, inertia degree f,
// ramification index e. The residue cardinality is q = ell^f.
struct LocalPlace {
    long residue_char = 0;
    int inertia_f = 1;
    int ram_e = 1;
};

inline Int residue_q(const LocalPlace& v) {
    return pow_int(Int(v.residue_char), static_cast<unsigned long>(v.inertia_f));
}

// The totally real field F is carried only through its degree, the local
// shapes at the primes a computation touches, and (for d > 1, user-supplied)
// the values zeta_F(1-2j). A defining polynomial is never needed.
struct FieldDatum {
    int degree_d = 1;
    std::map<long, std::vector<LocalPlace>> places;
    std::optional<std::vector<Rat>> zeta_values; // zeta_F(1-2j) for j = 1..size
};

struct RamifiedPlace {
    long prime = 0;
    int place_index = 0;
    int gamma_parity = 0; // ord_{Pi_v}(gamma) mod 2
};

struct QuaternionDatum {
    std::vector<RamifiedPlace> ramified;
};

struct PELInput {
    FieldDatum field;
    QuaternionDatum quat;
    int m = 1;
    Int N = 3;
    long p = 0;
    std::optional<Int> order_G_override; // |G(Z/NZ)| supplied by the user
};

// A set of finite places, each named by (prime, index into the declared
// places over that prime).
struct PlaceSet {
    std::set<std::pair<long, int>> places;
};

// Places of F over ell. For d = 1 an entry is synthesized (the unique place,
// e = f = 1); for d > 1 the deck must declare the shapes.
inline std::vector<LocalPlace> places_over(const FieldDatum& field, long ell) {
    auto it = field.places.find(ell);
    if (it != field.places.end()) return it->second;
    if (field.degree_d == 1) return {LocalPlace{ell, 1, 1}};
    throw ValidationError("no local data for prime " + std::to_string(ell) +
                          " (field of degree > 1 must declare its places)");
}

inline std::optional<int> gamma_parity_at(const QuaternionDatum& quat, long prime, int index) {
    for (const auto& r : quat.ramified)
        if (r.prime == prime && r.place_index == index) return r.gamma_parity;
    return std::nullopt;
}

inline bool is_ramified_at(const QuaternionDatum& quat, long prime, int index) {
    return gamma_parity_at(quat, prime, index).has_value();
}

// Every violated invariant, by name; an empty list means the input is valid.
inline std::vector<std::string> validate(const PELInput& in) {
    std::vector<std::string> bad;
    const auto& F = in.field;
    if (F.degree_d < 1) bad.push_back("field degree must be >= 1");
    for (const auto& [ell, vs] : F.places) {
        if (!is_prime(Int(ell)))
            bad.push_back("declared places over non-prime " + std::to_string(ell));
        long sum_ef = 0;
        for (const auto& v : vs) {
            if (v.ram_e < 1 || v.inertia_f < 1)
                bad.push_back("place over " + std::to_string(ell) + " with e or f < 1");
            if (v.residue_char != ell)
                bad.push_back("place over " + std::to_string(ell) + " with mismatched residue characteristic");
            sum_ef += static_cast<long>(v.ram_e) * v.inertia_f;
        }
        if (sum_ef != F.degree_d)
            bad.push_back("sum of e*f over " + std::to_string(ell) + " is " + std::to_string(sum_ef) +
                          ", expected the degree " + std::to_string(F.degree_d));
        if (F.degree_d == 1 && !(vs.size() == 1 && vs[0].ram_e == 1 && vs[0].inertia_f == 1))
            bad.push_back("degree-1 field must have exactly one place with e = f = 1 over " + std::to_string(ell));
    }
    if (in.quat.ramified.size() % 2 != 0)
        bad.push_back("ramified count odd");
    std::set<std::pair<long, int>> seen;
    for (const auto& r : in.quat.ramified) {
        if (!seen.insert({r.prime, r.place_index}).second)
            bad.push_back("duplicate ramified place " + std::to_string(r.prime));
        if (r.gamma_parity != 0 && r.gamma_parity != 1)
            bad.push_back("gamma parity not in {0,1} at " + std::to_string(r.prime));
        try {
            const auto vs = places_over(F, r.prime);
            if (r.place_index < 0 || r.place_index >= static_cast<int>(vs.size()))
                bad.push_back("ramified place index out of range over " + std::to_string(r.prime));
        } catch (const ValidationError& e) {
            bad.push_back(e.what());
        }
    }
    if (in.m < 1) bad.push_back("m must be >= 1");
    if (in.N < 3) bad.push_back("N must be >= 3");
    if (!is_prime(Int(in.p))) bad.push_back("p must be prime");
    if (in.p > 0 && gcd_int(Int(in.p), in.N) != 1) bad.push_back("gcd(p,N) != 1");
    if (F.zeta_values && static_cast<int>(F.zeta_values->size()) < 1)
        bad.push_back("zeta_values present but empty");
    return bad;
}

inline void require_valid(const PELInput& in) {
    const auto bad = validate(in);
    if (bad.empty()) return;
    std::string msg = "invalid input:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw ValidationError(msg);
}

/// Existence criterion for a self-dual lattice: m even, or gamma has odd
/// valuation at every ramified finite place.
inline bool self_dual_exists(const PELInput& in) {
    if (in.m % 2 == 0) return true;
    for (const auto& r : in.quat.ramified)
        if (r.gamma_parity == 0) return false;
    return true;
}

// Hypotheses gating everything downstream of the unramified-at-p theory:
// p > 2, and every v | p is unramified in F and splits B.
inline bool sec4_gate_ok(const PELInput& in, std::string* why = nullptr) {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    if (in.p <= 2)
        return fail("requires p > 2 unramified in B, but p = " + std::to_string(in.p));
    const auto vs = places_over(in.field, in.p);
    for (int i = 0; i < static_cast<int>(vs.size()); ++i) {
        if (vs[i].ram_e != 1)
            return fail("requires p > 2 unramified in B, but place " + std::to_string(i) +
                        " over p = " + std::to_string(in.p) + " is ramified in F (e > 1)");
        if (is_ramified_at(in.quat, in.p, i))
            return fail("requires p > 2 unramified in B, but p = " + std::to_string(in.p) +
                        " divides the discriminant of B");
    }
    return true;
}

inline void require_sec4_gate(const PELInput& in) {
    std::string why;
    if (!sec4_gate_ok(in, &why))
        throw GateError("hypothesis violated: " + why);
}

/// Ramification set of the quaternion algebra D with B (x) D_{p,infinity} =
/// Mat_2(D): away from p it agrees with the ramification of B; over p a place
/// enters exactly when its inertia degree is odd.
inline PlaceSet delta_prime(const PELInput& in) {
    require_sec4_gate(in);
    PlaceSet out;
    for (const auto& r : in.quat.ramified)
        out.places.insert({r.prime, r.place_index});
    const auto vs = places_over(in.field, in.p);
    for (int i = 0; i < static_cast<int>(vs.size()); ++i)
        if (vs[i].inertia_f % 2 == 1) out.places.insert({in.p, i});
    return out;
}

// zeta_F(1-2j) for j = 1..m: computed for F = Q, user-supplied otherwise.
inline std::vector<Rat> zeta_values_for(const PELInput& in) {
    if (in.field.zeta_values) {
        if (static_cast<int>(in.field.zeta_values->size()) < in.m)
            throw ValidationError("zeta_values supplies " + std::to_string(in.field.zeta_values->size()) +
                                  " values but m = " + std::to_string(in.m) + " are needed");
        return {in.field.zeta_values->begin(), in.field.zeta_values->begin() + in.m};
    }
    if (in.field.degree_d != 1)
        throw ValidationError("zeta_F(1-2j) values are required in the deck for a field of degree " +
                              std::to_string(in.field.degree_d));
    std::vector<Rat> z;
    z.reserve(in.m);
    for (int j = 1; j <= in.m; ++j) z.push_back(zeta_neg(static_cast<unsigned>(j)));
    return z;
}

} // namespace ssmass
