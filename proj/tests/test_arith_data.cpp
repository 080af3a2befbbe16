#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ssmass/arith_data.hpp"
#include "ssmass/input_deck.hpp"
#include "ssmass/oracles.hpp"
#include "ssmass/verify.hpp"

using namespace ssmass;

namespace {

PELInput rational_input(std::vector<RamifiedPlace> ram, int m, long N, long p) {
    PELInput in;
    in.quat.ramified = std::move(ram);
    in.m = m;
    in.N = N;
    in.p = p;
    return in;
}

} // namespace

TEST_CASE("validation names the violated invariant") {
    CHECK(validate(rational_input({{2, 0, 1}, {3, 0, 1}}, 1, 3, 5)).empty());

    const auto odd = validate(rational_input({{2, 0, 1}}, 1, 3, 5));
    REQUIRE(odd.size() == 1);
    CHECK(odd[0] == "ramified count odd");

    const auto gcd_bad = validate(rational_input({}, 1, 3, 3));
    REQUIRE(gcd_bad.size() == 1);
    CHECK(gcd_bad[0] == "gcd(p,N) != 1");

    SECTION("field shape violations") {
        PELInput in = rational_input({}, 1, 3, 5);
        in.field.places[7] = {LocalPlace{7, 2, 1}}; // sum e*f = 2 over a degree-1 field
        CHECK_FALSE(validate(in).empty());

        PELInput quad = rational_input({}, 1, 3, 5);
        quad.field.degree_d = 2;
        quad.field.places[7] = {LocalPlace{7, 1, 1}, LocalPlace{7, 1, 1}};
        quad.field.zeta_values = {make_rat(1, 30)};
        CHECK(validate(quad).empty());
    }
}

TEST_CASE("self-dual existence criterion") {
    CHECK(self_dual_exists(rational_input({{2, 0, 0}, {3, 0, 0}}, 2, 3, 5)));
    CHECK(self_dual_exists(rational_input({{2, 0, 1}, {3, 0, 1}}, 1, 3, 5)));
    CHECK_FALSE(self_dual_exists(rational_input({{2, 0, 0}, {3, 0, 1}}, 1, 3, 5)));

    SECTION("even m always passes, whatever the parities") {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            PELInput in = rational_input({{2, 0, static_cast<int>(rng() % 2)},
                                          {3, 0, static_cast<int>(rng() % 2)}},
                                         2 * static_cast<int>(rng() % 3 + 1), 3, 5);
            CHECK(self_dual_exists(in));
        }
    }
}

TEST_CASE("ramification set of D") {
    // F = Q, split B: only p enters
    CHECK(delta_prime(rational_input({}, 1, 3, 7)).places ==
          std::set<std::pair<long, int>>{{7, 0}});

    // inert p in a real quadratic field: even inertia degree, D splits at p
    PELInput quad = rational_input({}, 1, 3, 7);
    quad.field.degree_d = 2;
    quad.field.places[7] = {LocalPlace{7, 2, 1}};
    CHECK(delta_prime(quad).places.empty());

    // ramified primes of B stay in
    CHECK(delta_prime(rational_input({{2, 0, 1}, {3, 0, 1}}, 1, 7, 5)).places ==
          std::set<std::pair<long, int>>{{2, 0}, {3, 0}, {5, 0}});

    SECTION("gate refusal when p is ramified in B") {
        CHECK_THROWS_AS(delta_prime(rational_input({{7, 0, 1}, {3, 0, 1}}, 1, 4, 7)), GateError);
        CHECK_THROWS_AS(delta_prime(rational_input({}, 1, 3, 2)), GateError);
        PELInput ram = rational_input({}, 1, 3, 7);
        ram.field.degree_d = 2;
        ram.field.places[7] = {LocalPlace{7, 1, 2}}; // e = 2
        CHECK_THROWS_AS(delta_prime(ram), GateError);
    }

    SECTION("matches the Brauer-invariant oracle and has the right parity") {
        std::mt19937 rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            const PELInput in = random_rational_input(rng);
            std::vector<oracle::BrauerPlace> places;
            for (const auto& r : in.quat.ramified) places.push_back({r.prime, 0, 1, true});
            places.push_back({in.p, 0, 1, false});
            const auto dp = delta_prime(in);
            CHECK(dp.places == oracle::brauer_delta_prime(places, in.p));
            // archimedean places are all ramified in D, so the finite count
            // plus the degree is even
            CHECK((dp.places.size() + static_cast<size_t>(in.field.degree_d)) % 2 == 0);
        }
    }
}

TEST_CASE("zeta value sourcing") {
    // degree 1: computed
    const auto z = zeta_values_for(rational_input({}, 2, 3, 7));
    REQUIRE(z.size() == 2);
    CHECK(z[0] == make_rat(-1, 12));
    CHECK(z[1] == make_rat(1, 120));

    // degree > 1 without values: a specific refusal
    PELInput quad = rational_input({}, 1, 3, 7);
    quad.field.degree_d = 2;
    quad.field.places[7] = {LocalPlace{7, 2, 1}};
    CHECK_THROWS_WITH(zeta_values_for(quad), Catch::Matchers::ContainsSubstring("zeta"));

    quad.field.zeta_values = {make_rat(1, 30)};
    CHECK(zeta_values_for(quad) == std::vector<Rat>{make_rat(1, 30)});

    // supplied but too few for m
    quad.m = 2;
    CHECK_THROWS_AS(zeta_values_for(quad), ValidationError);
}

TEST_CASE("deck parsing") {
    const auto j = nlohmann::json::parse(R"({
        "field": {"degree": 2,
                  "places": {"7": [{"e": 1, "f": 2}], "3": [{"e": 1, "f": 2}]},
                  "zeta_values": ["1/30"]},
        "quaternion": {"ramified": []},
        "m": 1, "N": 3, "p": 7,
        "overrides": {"order_G_modN": "1440"}
    })");
    const PELInput in = parse_deck(j);
    CHECK(in.field.degree_d == 2);
    CHECK(places_over(in.field, 7).size() == 1);
    CHECK(places_over(in.field, 7)[0].inertia_f == 2);
    REQUIRE(in.field.zeta_values.has_value());
    CHECK((*in.field.zeta_values)[0] == make_rat(1, 30));
    REQUIRE(in.order_G_override.has_value());
    CHECK(*in.order_G_override == 1440);
    CHECK(validate(in).empty());

    SECTION("parse errors name the path and the expected shape") {
        auto broken = j;
        broken["field"].erase("degree");
        CHECK_THROWS_WITH(parse_deck(broken), Catch::Matchers::ContainsSubstring("field.degree"));

        auto bad_zeta = j;
        bad_zeta["field"]["zeta_values"] = {42};
        CHECK_THROWS_WITH(parse_deck(bad_zeta),
                          Catch::Matchers::ContainsSubstring("zeta_values[0]"));

        auto bad_ram = j;
        bad_ram["quaternion"]["ramified"] = {{{"prime", 2}}};
        CHECK_THROWS_WITH(parse_deck(bad_ram),
                          Catch::Matchers::ContainsSubstring("gamma_parity"));
    }
}
