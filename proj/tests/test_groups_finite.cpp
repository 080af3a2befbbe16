#include <catch2/catch_amalgamated.hpp>

#include "ssmass/groups_finite.hpp"
#include "ssmass/oracles.hpp"

using namespace ssmass;
using oracle::GroupKind;

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

TEST_CASE("symplectic group orders vs exhaustive enumeration") {
    CHECK(order_sp(1, 2) == 6);
    CHECK(order_sp(1, 3) == 24);
    CHECK(order_sp(1, 5) == 120);
    CHECK(order_sp(2, 2) == 720);
    for (auto [n, q] : {std::pair{1, 2l}, {1, 3l}, {1, 5l}, {2, 2l}, {1, 4l}})
        CHECK(order_sp(n, q) == oracle::enumerate_group_order(GroupKind::sp, n, q));
    CHECK_THROWS_AS(order_sp(1, 6), ValidationError);
}

TEST_CASE("unitary group orders vs exhaustive enumeration") {
    CHECK(order_u(1, 2) == 3);
    CHECK(order_u(1, 3) == 4);
    CHECK(order_u(2, 2) == 18);
    for (auto [n, q] : {std::pair{1, 2l}, {1, 3l}, {2, 2l}, {2, 3l}})
        CHECK(order_u(n, q) == oracle::enumerate_group_order(GroupKind::u, n, q));
}

TEST_CASE("reductive quotient orders") {
    CHECK(order_reductive_quotient(1, 0, LocalPlace{2, 1, 1}) == 3);
    // the c = 1 summand for m = 2 is Sp_2 over the quadratic extension;
    // confirmed against the exhaustive count of Sp_2(F_4)
    CHECK(order_reductive_quotient(2, 1, LocalPlace{2, 1, 1}) ==
          oracle::enumerate_group_order(GroupKind::sp, 1, 4));
    CHECK(order_reductive_quotient(2, 1, LocalPlace{2, 1, 1}) == 60);
    CHECK(order_reductive_quotient(2, 0, LocalPlace{3, 1, 1}) == 96);
    CHECK_THROWS_AS(order_reductive_quotient(2, 2, LocalPlace{2, 1, 1}), ValidationError);
}

TEST_CASE("GSp mod N") {
    CHECK(order_gsp_modN(1, 3).order == 48);
    CHECK(order_gsp_modN(1, 4).order == 96);
    CHECK(order_gsp_modN(2, 2).order == 720);
    CHECK(order_gsp_modN(1, 3).order == oracle::enumerate_group_order(GroupKind::gsp, 1, 3));
    CHECK(order_gsp_modN(1, 4).order == oracle::enumerate_group_order(GroupKind::gsp, 1, 4));
    CHECK(order_gsp_modN(2, 2).order == oracle::enumerate_group_order(GroupKind::gsp, 2, 2));

    SECTION("multiplicative over coprime factors") {
        CHECK(order_gsp_modN(1, 12).order == order_gsp_modN(1, 4).order * order_gsp_modN(1, 3).order);
        CHECK(order_gsp_modN(2, 15).order == order_gsp_modN(2, 3).order * order_gsp_modN(2, 5).order);
    }
}

TEST_CASE("order of the integral model mod N") {
    CHECK(order_G_modN(rational_input({}, 1, 3, 7)).order == 48);
    CHECK(order_G_modN(rational_input({}, 2, 2, 7)).order == 720);
    CHECK(order_G_modN(rational_input({{2, 0, 1}, {3, 0, 1}}, 1, 5, 7)).order == 480);

    SECTION("reduces to GSp when B is everywhere split over F = Q") {
        for (int g : {1, 2, 3})
            for (long N : {3l, 4l, 5l})
                CHECK(order_G_modN(rational_input({}, g, N, 7)).order == order_gsp_modN(g, N).order);
    }

    SECTION("multiplicative in N") {
        const auto in12 = rational_input({{2, 0, 1}, {3, 0, 1}}, 1, 12, 7);
        const auto in4 = rational_input({{2, 0, 1}, {3, 0, 1}}, 1, 4, 7);
        const auto in3 = rational_input({{2, 0, 1}, {3, 0, 1}}, 1, 3, 7);
        CHECK(order_G_modN(in12).order == order_G_modN(in4).order * order_G_modN(in3).order);
    }

    SECTION("factorization reconstructs the order") {
        const auto rep = order_G_modN(rational_input({{2, 0, 1}, {3, 0, 1}}, 2, 6, 7));
        Int prod(1);
        for (const auto& [p, e] : rep.factorization) prod *= pow_int(p, e);
        CHECK(prod == rep.order);
    }

    SECTION("ramified level prime with even parity and odd m is reported") {
        CHECK_THROWS_AS(order_G_modN(rational_input({{3, 0, 0}, {5, 0, 0}}, 1, 3, 7)),
                        InvariantError);
        // even m computes through the c = m/2 parahoric
        CHECK(order_G_modN(rational_input({{3, 0, 0}, {5, 0, 0}}, 2, 3, 7)).order > 0);
    }

    SECTION("prime ramified in F is refused, override is honored") {
        PELInput in = rational_input({}, 1, 3, 7);
        in.field.degree_d = 2;
        in.field.places[3] = {LocalPlace{3, 1, 2}};
        in.field.places[7] = {LocalPlace{7, 2, 1}};
        in.field.zeta_values = {make_rat(1, 30)};
        CHECK_THROWS_AS(order_G_modN(in), GateError);
        in.order_G_override = Int(1234);
        CHECK(order_G_modN(in).order == 1234);
    }
}

TEST_CASE("similitude characters surject at residue level") {
    CHECK(verify_similitude_surjective(SimKind::symplectic, 1, 3));
    CHECK(verify_similitude_surjective(SimKind::symplectic, 2, 2));
    CHECK(verify_similitude_surjective(SimKind::hermitian_stabilizer, 1, 2));
    CHECK(verify_similitude_surjective(SimKind::hermitian_stabilizer, 1, 3));
    CHECK(verify_similitude_surjective(SimKind::hermitian_stabilizer, 2, 2));
    CHECK_THROWS_AS(verify_similitude_surjective(SimKind::symplectic, 3, 2), ValidationError);
}

TEST_CASE("enumeration caps are enforced") {
    CHECK_THROWS_AS(oracle::enumerate_group_order(GroupKind::sp, 2, 3), ValidationError);
    CHECK_THROWS_AS(oracle::enumerate_group_order(GroupKind::sp, 3, 2), ValidationError);
}
