#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "ssmass/arith_data.hpp"
#include "ssmass/local_lattices.hpp"
#include "ssmass/shimura_curve.hpp"

namespace ssmass {

namespace deck_detail {

using nlohmann::json;

inline const json& need(const json& j, const std::string& key, const std::string& path,
                        const char* shape) {
    if (!j.is_object())
        throw ValidationError("deck: " + path + " should be an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError("deck: missing " + path + "." + key + " (expected " + shape + ")");
    return *it;
}

inline long as_long(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw ValidationError("deck: " + path + " should be an integer");
    return j.get<long>();
}

inline Int as_bigint(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw ValidationError("deck: " + path + " should be an integer or a decimal string");
}

} // namespace deck_detail

/// Parse the JSON input deck. Schema (documented in the README):
///   field { degree, places { "<prime>": [ {e, f}, ... ] }, zeta_values? }
///   quaternion { ramified: [ {prime, place_index, gamma_parity}, ... ] }
///   m, N, p, overrides? { order_G_modN }
inline PELInput parse_deck(const nlohmann::json& j) {
    using deck_detail::as_bigint;
    using deck_detail::as_long;
    using deck_detail::need;
    PELInput in;

    const auto& field = need(j, "field", "deck", "object");
    in.field.degree_d = static_cast<int>(as_long(need(field, "degree", "field", "integer"), "field.degree"));
    const auto& places = need(field, "places", "field", "object of prime -> [{e,f}]");
    if (!places.is_object())
        throw ValidationError("deck: field.places should map primes to arrays of {e,f}");
    for (const auto& [key, arr] : places.items()) {
        long ell = 0;
        try {
            ell = std::stol(key);
        } catch (...) {
            throw ValidationError("deck: field.places key \"" + key + "\" is not a prime");
        }
        if (!arr.is_array() || arr.empty())
            throw ValidationError("deck: field.places[\"" + key + "\"] should be a nonempty array of {e,f}");
        std::vector<LocalPlace> vs;
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "field.places[\"" + key + "\"][" + std::to_string(i) + "]";
            LocalPlace v;
            v.residue_char = ell;
            v.ram_e = static_cast<int>(as_long(need(arr[i], "e", path, "integer"), path + ".e"));
            v.inertia_f = static_cast<int>(as_long(need(arr[i], "f", path, "integer"), path + ".f"));
            vs.push_back(v);
        }
        in.field.places[ell] = std::move(vs);
    }
    if (field.contains("zeta_values")) {
        const auto& zv = field["zeta_values"];
        if (!zv.is_array())
            throw ValidationError("deck: field.zeta_values should be an array of \"num/den\" strings");
        std::vector<Rat> zs;
        for (size_t i = 0; i < zv.size(); ++i) {
            if (!zv[i].is_string())
                throw ValidationError("deck: field.zeta_values[" + std::to_string(i) +
                                      "] should be a \"num/den\" string");
            zs.push_back(parse_rat(zv[i].get<std::string>()));
        }
        in.field.zeta_values = std::move(zs);
    }

    const auto& quat = need(j, "quaternion", "deck", "object");
    const auto& ram = need(quat, "ramified", "quaternion", "array of {prime, place_index, gamma_parity}");
    if (!ram.is_array())
        throw ValidationError("deck: quaternion.ramified should be an array");
    for (size_t i = 0; i < ram.size(); ++i) {
        const std::string path = "quaternion.ramified[" + std::to_string(i) + "]";
        RamifiedPlace r;
        r.prime = as_long(need(ram[i], "prime", path, "integer"), path + ".prime");
        r.place_index =
            ram[i].contains("place_index")
                ? static_cast<int>(as_long(ram[i]["place_index"], path + ".place_index"))
                : 0;
        r.gamma_parity = static_cast<int>(
            as_long(need(ram[i], "gamma_parity", path, "0 or 1"), path + ".gamma_parity"));
        in.quat.ramified.push_back(r);
    }

    in.m = static_cast<int>(as_long(need(j, "m", "deck", "integer"), "m"));
    in.N = as_bigint(need(j, "N", "deck", "integer"), "N");
    in.p = as_long(need(j, "p", "deck", "integer"), "p");

    if (j.contains("overrides")) {
        const auto& ov = j["overrides"];
        if (ov.contains("order_G_modN"))
            in.order_G_override = as_bigint(ov["order_G_modN"], "overrides.order_G_modN");
    }
    return in;
}

inline PELInput load_deck(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ValidationError("cannot open input deck " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("deck " + path + " is not valid JSON: " + e.what());
    }
    return parse_deck(j);
}

/// Gram-matrix file: { "prime": pi, "entries": [ ["0", "1/3", ...], ... ] },
/// entries row-major as "num/den" strings.
inline AlternatingGram load_gram(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ValidationError("cannot open Gram matrix file " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("Gram file " + path + " is not valid JSON: " + e.what());
    }
    AlternatingGram g;
    g.pi = deck_detail::as_long(deck_detail::need(j, "prime", "gram", "integer"), "prime");
    const auto& rows = deck_detail::need(j, "entries", "gram", "array of arrays of \"num/den\"");
    if (!rows.is_array())
        throw ValidationError("gram: entries should be an array of rows");
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != rows.size())
            throw ValidationError("gram: entries must be square (row " + std::to_string(i) + ")");
        g.entries.emplace_back();
        for (size_t k = 0; k < rows[i].size(); ++k) {
            if (!rows[i][k].is_string())
                throw ValidationError("gram: entries[" + std::to_string(i) + "][" + std::to_string(k) +
                                      "] should be a \"num/den\" string");
            g.entries.back().push_back(parse_rat(rows[i][k].get<std::string>()));
        }
    }
    return g;
}

} // namespace ssmass
