// ssmass: exact arithmetic for the supersingular loci of quaternionic
// unitary Shimura varieties. Every number printed is exact; exit codes:
// 0 success, 1 invalid input, 2 hypothesis violated, 3 internal invariant
// failure.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssmass/adlv.hpp"
#include "ssmass/arith_data.hpp"
#include "ssmass/bernoulli.hpp"
#include "ssmass/groups_finite.hpp"
#include "ssmass/input_deck.hpp"
#include "ssmass/local_lattices.hpp"
#include "ssmass/mass.hpp"
#include "ssmass/oracles.hpp"
#include "ssmass/shimura_curve.hpp"
#include "ssmass/verify.hpp"

namespace {

using namespace ssmass;
using nlohmann::json;

struct OutputMode {
    bool as_json = false;
    bool factored = false;
};

void add_output_flags(CLI::App* cmd, OutputMode& mode) {
    cmd->add_flag("--output-json,--json", mode.as_json, "emit a JSON report");
    cmd->add_flag("--factor", mode.factored, "also print the prime factorization");
}

std::string factored(const Int& n) {
    std::string s;
    for (const auto& [p, e] : factorize(n)) {
        if (!s.empty()) s += " * ";
        s += to_string(p);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

json report_json(const ComponentReport& rep) {
    json j;
    j["count"] = to_string(rep.count);
    j["factors"] = json::array();
    for (const auto& f : rep.factors)
        j["factors"].push_back({{"name", f.name}, {"value", to_string(f.value)}, {"rule", f.rule}});
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

void print_count(const ComponentReport& rep, const OutputMode& mode) {
    if (mode.as_json) {
        json j = report_json(rep);
        if (mode.factored) j["factorization"] = factored(rep.count);
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << to_string(rep.count) << "\n";
    if (mode.factored) std::cout << to_string(rep.count) << " = " << factored(rep.count) << "\n";
    for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
}

std::map<long, std::vector<int>> parse_parity_list(const std::string& s) {
    // "2:1,3:0" -> prime -> parity (index 0 places; curve inputs are F = Q)
    std::map<long, std::vector<int>> out;
    std::string cur;
    auto flush = [&](const std::string& item) {
        if (item.empty()) return;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ValidationError("expected prime:parity, got \"" + item + "\"");
        out[std::stol(item.substr(0, colon))].push_back(std::stoi(item.substr(colon + 1)));
    };
    for (char ch : s) {
        if (ch == ',') {
            flush(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    flush(cur);
    return out;
}

CurveInput curve_input_from_flags(const std::string& delta, long p, long N) {
    CurveInput in;
    for (const auto& [prime, parities] : parse_parity_list(delta))
        for (int par : parities) in.delta.push_back({prime, par});
    in.p = p;
    in.N = N;
    return in;
}

int run(int argc, char** argv) {
    CLI::App app{"exact invariants of supersingular loci of quaternionic unitary Shimura varieties"};
    app.require_subcommand(1);

    std::string deck_path, gram_path, ranks_spec, delta_spec, method = "closed", kind, level = "fast";
    std::string parahoric_spec;
    long flag_n = 1, flag_g = 1, flag_N = 3, flag_p = 0, flag_q = 0, flag_K = 3, flag_k = 0, flag_i = 0;
    long flag_ord_gamma = 1;
    bool flag_dual = false, flag_perturbed = false;
    OutputMode mode;

    auto* existence = app.add_subcommand("existence", "self-dual lattice existence criterion");
    existence->add_option("--input", deck_path, "JSON input deck")->required();
    add_output_flags(existence, mode);

    auto* dprime = app.add_subcommand("delta-prime", "ramification set of the quaternion algebra D");
    dprime->add_option("--input", deck_path)->required();
    add_output_flags(dprime, mode);

    auto* lattice = app.add_subcommand("lattice", "local lattice normal forms");
    lattice->require_subcommand(1);
    auto* symnf = lattice->add_subcommand("symplectic-nf", "elementary divisors of an alternating Gram matrix");
    symnf->add_option("--matrix", gram_path, "JSON file {prime, entries: rows of \"num/den\"}")->required();
    add_output_flags(symnf, mode);
    auto* jordan = lattice->add_subcommand("jordan", "operations on quaternionic Jordan types");
    jordan->add_option("--ranks", ranks_spec, "type as i:n pairs, e.g. \"0:2,1:2\"");
    jordan->add_flag("--dual", flag_dual, "apply the dual");
    jordan->add_option("--scale", flag_k, "scale the lattice by Pi^k");
    auto* opt_modular = jordan->add_option("--modular", flag_i, "test Pi^i-modularity of --ranks");
    auto* opt_exists = jordan->add_option("--exists-rank", flag_n, "rank n for the modularity existence test");
    jordan->add_option("--exists-index", flag_i, "index i for the existence test (with --exists-rank)");
    auto* opt_ord = jordan->add_option("--ord-gamma", flag_ord_gamma,
                                       "switch the existence test to the skew-Hermitian side");

    auto* gorder = app.add_subcommand("group-order", "orders of finite classical groups and integral models");
    gorder->add_option("--kind", kind, "sp | u | gsp-modN | G-modN")->required();
    gorder->add_option("-n", flag_n, "rank parameter");
    gorder->add_option("-q", flag_q, "prime power q");
    gorder->add_option("-g", flag_g, "genus for gsp-modN");
    gorder->add_option("-N", flag_N, "level for gsp-modN");
    gorder->add_option("--input", deck_path, "deck for G-modN");
    add_output_flags(gorder, mode);

    auto* adlv = app.add_subcommand("adlv-count", "irreducible components of X_mu(b) modulo J_b");
    adlv->add_option("--input", deck_path)->required();
    adlv->add_option("--method", method, "closed | enum | both")->default_str("closed");
    add_output_flags(adlv, mode);

    auto* comp = app.add_subcommand("components", "irreducible components of the supersingular locus");
    comp->add_option("--input", deck_path)->required();
    add_output_flags(comp, mode);

    auto* ssp = app.add_subcommand("superspecial", "cardinality of the superspecial locus");
    ssp->add_option("--input", deck_path)->required();
    add_output_flags(ssp, mode);

    auto* massc = app.add_subcommand("mass", "Mass(I^1, U^1) for the maximum-volume level");
    massc->add_option("--input", deck_path)->required();
    massc->add_option("--parahoric", parahoric_spec,
                      "expert: force the parahoric c at places, e.g. \"7:0\" (exploration only)");
    add_output_flags(massc, mode);

    auto* dimc = app.add_subcommand("dimension", "dimension of the supersingular locus");
    dimc->add_option("--input", deck_path)->required();
    add_output_flags(dimc, mode);

    auto* siegel = app.add_subcommand("siegel", "Siegel case counts (F = Q, split B)");
    siegel->add_option("-g", flag_g, "genus")->required();
    siegel->add_option("-N", flag_N, "level")->required();
    siegel->add_option("-p", flag_p, "prime")->required();
    add_output_flags(siegel, mode);

    auto* curve = app.add_subcommand("curve", "Shimura-curve bad reduction (m = 1, F = Q)");
    curve->require_subcommand(1);
    auto* cmass = curve->add_subcommand("mass", "mass of the relaxed moduli space");
    cmass->add_option("--delta", delta_spec, "discriminant with parities, e.g. \"2:0,13:1\"")->required();
    cmass->add_option("-p", flag_p)->required();
    cmass->add_option("-N", flag_N);
    auto* ccomp = curve->add_subcommand("components", "components of the special fiber");
    ccomp->add_option("--delta", delta_spec, "discriminant with parities (all odd)")->required();
    ccomp->add_option("-p", flag_p)->required();
    ccomp->add_option("-N", flag_N)->required();
    add_output_flags(ccomp, mode);
    auto* cdieu = curve->add_subcommand("check-dieudonne", "verify the explicit rank-4 module data");
    cdieu->add_option("-p", flag_p)->required();
    cdieu->add_option("-K", flag_K, "Witt precision (>= 2)");
    cdieu->add_flag("--perturbed", flag_perturbed, "negative control: swap the blocks of [F]");

    auto* verify = app.add_subcommand("verify", "run the oracle battery");
    verify->add_option("--level", level, "fast | full")->default_str("fast");

    CLI11_PARSE(app, argc, argv);

    if (existence->parsed()) {
        const PELInput in = load_deck(deck_path);
        require_valid(in);
        const bool ok = self_dual_exists(in);
        if (mode.as_json)
            std::cout << json{{"self_dual_exists", ok}}.dump(2) << "\n";
        else
            std::cout << (ok ? "true" : "false") << "\n";
        return 0;
    }
    if (dprime->parsed()) {
        const PELInput in = load_deck(deck_path);
        require_valid(in);
        const auto dp = delta_prime(in);
        if (mode.as_json) {
            json arr = json::array();
            for (const auto& [prime, idx] : dp.places) arr.push_back({{"prime", prime}, {"place_index", idx}});
            std::cout << json{{"delta_prime", arr}}.dump(2) << "\n";
        } else {
            std::string s;
            for (const auto& [prime, idx] : dp.places)
                s += (s.empty() ? "" : " ") + std::to_string(prime) +
                     (places_over(in.field, prime).size() > 1 ? "#" + std::to_string(idx) : "");
            std::cout << "{" << s << "}\n";
        }
        return 0;
    }
    if (symnf->parsed()) {
        const auto g = load_gram(gram_path);
        const auto nf = symplectic_divisors(g);
        if (mode.as_json) {
            json j;
            j["d"] = nf.d;
            json rows = json::array();
            for (const auto& row : nf.basis) {
                json r = json::array();
                for (const auto& e : row) r.push_back(to_string(e));
                rows.push_back(r);
            }
            j["basis"] = rows;
            std::cout << j.dump(2) << "\n";
        } else {
            std::string s;
            for (long d : nf.d) s += (s.empty() ? "" : " ") + std::to_string(d);
            std::cout << "d = (" << s << ")\n";
        }
        return 0;
    }
    if (jordan->parsed()) {
        if (opt_exists->count() > 0) {
            const bool ok = opt_ord->count() > 0 ? skew_modular_exists(flag_n, flag_i, flag_ord_gamma)
                                                 : modular_exists(flag_n, flag_i);
            std::cout << (ok ? "true" : "false") << "\n";
            if (ok && opt_ord->count() == 0) {
                const auto t = modular_type(flag_n, flag_i);
                std::cout << "canonical ranks: " << std::to_string(t->ranks.begin()->first) << ":"
                          << std::to_string(t->ranks.begin()->second) << "\n";
            }
            return 0;
        }
        if (ranks_spec.empty())
            throw ValidationError("lattice jordan needs --ranks or --exists-rank");
        std::map<long, long> ranks;
        for (const auto& [i, ns] : parse_parity_list(ranks_spec))
            for (int n : ns) ranks[i] += n;
        JordanType t = make_jordan(ranks);
        if (flag_dual) t = hermitian_dual(t);
        if (flag_k != 0) t = scale_by_Pi(t, flag_k);
        if (opt_modular->count() > 0) {
            std::cout << (is_Pi_modular(t, flag_i) ? "true" : "false") << "\n";
            return 0;
        }
        std::string s;
        for (const auto& [i, n] : t.ranks) s += (s.empty() ? "" : ",") + std::to_string(i) + ":" + std::to_string(n);
        std::cout << (s.empty() ? "0" : s) << "\n";
        return 0;
    }
    if (gorder->parsed()) {
        GroupOrderReport rep;
        if (kind == "sp") {
            rep = finish_report(order_sp(static_cast<int>(flag_n), Int(flag_q)),
                                {{"", "q^(n^2) prod (q^(2i)-1)"}});
        } else if (kind == "u") {
            rep = finish_report(order_u(static_cast<int>(flag_n), Int(flag_q)),
                                {{"", "q^(n(n-1)/2) prod (q^i - (-1)^i)"}});
        } else if (kind == "gsp-modN") {
            rep = order_gsp_modN(static_cast<int>(flag_g), Int(flag_N));
        } else if (kind == "G-modN") {
            if (deck_path.empty())
                throw ValidationError("group-order --kind G-modN needs --input");
            rep = order_G_modN(load_deck(deck_path));
        } else {
            throw ValidationError("unknown --kind " + kind);
        }
        if (mode.as_json) {
            json j;
            j["order"] = to_string(rep.order);
            j["factorization"] = factored(rep.order);
            json tr = json::array();
            for (const auto& [v, rule] : rep.formula_trace) tr.push_back({{"value", v}, {"rule", rule}});
            j["trace"] = tr;
            if (!rep.notes.empty()) j["notes"] = rep.notes;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << to_string(rep.order) << "\n";
            if (mode.factored) std::cout << to_string(rep.order) << " = " << factored(rep.order) << "\n";
        }
        return 0;
    }
    if (adlv->parsed()) {
        const PELInput in = load_deck(deck_path);
        require_valid(in);
        if (method == "closed") {
            std::cout << to_string(count_components_closed(in)) << "\n";
        } else if (method == "enum") {
            std::cout << to_string(count_components_enum(in)) << "\n";
        } else if (method == "both") {
            const Int a = count_components_closed(in);
            const Int b = count_components_enum(in);
            if (a != b)
                throw InvariantError("closed form " + to_string(a) + " != enumeration " + to_string(b));
            std::cout << to_string(a) << "\n";
        } else {
            throw ValidationError("unknown --method " + method);
        }
        return 0;
    }
    if (comp->parsed()) {
        print_count(count_components(load_deck(deck_path)), mode);
        return 0;
    }
    if (ssp->parsed()) {
        print_count(count_superspecial(load_deck(deck_path)), mode);
        return 0;
    }
    if (massc->parsed()) {
        const PELInput in = load_deck(deck_path);
        std::vector<ParahoricChoice> overrides;
        if (!parahoric_spec.empty())
            for (const auto& [prime, cs] : parse_parity_list(parahoric_spec))
                for (int c : cs) overrides.push_back({prime, 0, c});
        const auto rep = mass_I1(in, overrides);
        if (mode.as_json) {
            json j;
            j["mass"] = to_string(rep.mass);
            j["sign_exponent"] = rep.sign_exponent;
            j["zeta_part"] = to_string(rep.zeta_part);
            json lf = json::array();
            for (const auto& f : rep.local_factors)
                lf.push_back({{"prime", f.prime},
                              {"place_index", f.place_index},
                              {"value", to_string(f.value)},
                              {"rule", f.rule}});
            j["local_factors"] = lf;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << to_string(rep.mass) << "\n";
        }
        return 0;
    }
    if (dimc->parsed()) {
        const PELInput in = load_deck(deck_path);
        require_valid(in);
        std::cout << to_string(supersingular_dimension(in)) << "\n";
        return 0;
    }
    if (siegel->parsed()) {
        const auto s = siegel_counts(static_cast<int>(flag_g), Int(flag_N), flag_p);
        if (mode.as_json) {
            std::cout << json{{"superspecial", to_string(s.superspecial)},
                              {"components", to_string(s.components)},
                              {"dimension", s.dim},
                              {"note", s.note}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << "superspecial " << to_string(s.superspecial) << "\n";
            std::cout << "components " << to_string(s.components) << "\n";
            std::cout << "dimension " << s.dim << "\n";
            std::cout << "note: " << s.note << "\n";
            if (mode.factored)
                std::cout << to_string(s.components) << " = " << factored(s.components) << "\n";
        }
        return 0;
    }
    if (cmass->parsed()) {
        if (cmass->count("-N") == 0 && flag_p == 3) flag_N = 4; // N only gates validity here
        std::cout << to_string(curve_mass(curve_input_from_flags(delta_spec, flag_p, flag_N))) << "\n";
        return 0;
    }
    if (ccomp->parsed()) {
        const CurveInput cin = curve_input_from_flags(delta_spec, flag_p, flag_N);
        require_valid_curve(cin);
        // |G(Z/NZ)| through the general integral model with F = Q
        PELInput in;
        in.p = cin.p;
        in.N = cin.N;
        for (const auto& r : cin.delta) in.quat.ramified.push_back({r.prime, 0, r.gamma_parity});
        const auto g = order_G_modN(in);
        const Int count = curve_component_count(cin, g.order);
        ComponentReport rep;
        rep.count = count;
        rep.factors.push_back({"level", Rat(g.order), "|G(Z/NZ)|"});
        rep.factors.push_back({"mass", Rat(count) / Rat(g.order), "(1/12) prod_(ell | Delta/p) (ell-1)"});
        rep.notes = g.notes;
        print_count(rep, mode);
        return 0;
    }
    if (cdieu->parsed()) {
        const auto r = dieudonne_matrix_check(flag_p, static_cast<int>(flag_K), flag_perturbed);
        if (r.ok) {
            std::cout << "ok\n";
            return 0;
        }
        std::cout << "failed: " << r.failed << "\n";
        return 3;
    }
    if (verify->parsed()) {
        const VerifyLevel lv = level == "full" ? VerifyLevel::full : VerifyLevel::fast;
        if (level != "full" && level != "fast")
            throw ValidationError("unknown --level " + level);
        bool all = true;
        for (const auto& r : verify_battery(lv)) {
            std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name;
            if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
            std::cout << "\n";
            all &= r.pass;
        }
        return all ? 0 : 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ssmass::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const ssmass::GateError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ssmass::InvariantError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
