#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "ssmass/adlv.hpp"
#include "ssmass/oracles.hpp"

using namespace ssmass;

namespace {

Cochar random_cochar(std::mt19937& rng, const AdlvShape& shape) {
    Cochar x = cochar_zero<Int>(shape);
    x.c = static_cast<long>(rng() % 7) - 3;
    for (auto& place : x.a)
        for (auto& row : place)
            for (auto& e : row) e = static_cast<long>(rng() % 7) - 3;
    return x;
}

} // namespace

TEST_CASE("Frobenius action on cocharacters") {
    const AdlvShape shape{{2, 3}, 2};

    SECTION("omega* is fixed") {
        CHECK(sigma_act(mu(shape)) == mu(shape));
    }

    SECTION("eps slots rotate within each place") {
        Cochar x = cochar_zero<Int>(shape);
        x.at(0, 0, 0) = 1; // eps^{0*}_1 at a place with f = 2
        const Cochar y = sigma_act(x);
        CHECK(y.at(0, 1, 0) == 1);
        CHECK(y.at(0, 0, 0) == 0);
    }

    SECTION("trivial when every f_v = 1") {
        const AdlvShape flat{{1, 1}, 3};
        std::mt19937 rng(2);
        for (int t = 0; t < 20; ++t) {
            const Cochar x = random_cochar(rng, flat);
            CHECK(sigma_act(x) == x);
        }
    }

    SECTION("order divides lcm of the f_v") {
        const int order = std::lcm(2, 3);
        std::mt19937 rng(3);
        for (int t = 0; t < 20; ++t) {
            Cochar x = random_cochar(rng, shape);
            Cochar y = x;
            for (int k = 0; k < order; ++k) y = sigma_act(y);
            CHECK(y == x);
        }
    }
}

TEST_CASE("mu, Newton point, Kottwitz point") {
    const AdlvShape shape{{1}, 1};
    const Cochar m = mu(shape);
    CHECK(m.c == 1);
    CHECK(m.at(0, 0, 0) == 0);
    CHECK(kottwitz_point(shape) == 1);
    CHECK(kappa_of(m) == 1);

    // kappa is additive: kappa(2 mu) = 2
    Cochar twice = m;
    twice.c = 2;
    CHECK(kappa_of(twice) == 2);

    const RationalCochar nu = newton_point(shape);
    CHECK(nu.c == 1);
    CHECK(nu.at(0, 0, 0) == make_rat(-1, 2));

    SECTION("2 nu is central: every eps coefficient of 2 nu equals -1") {
        const AdlvShape big{{2, 1}, 3};
        const RationalCochar n2 = newton_point(big);
        for (const auto& place : n2.a)
            for (const auto& row : place)
                for (const auto& e : row) CHECK(Rat(e * 2) == Rat(-1));
    }

    SECTION("omega* - nu is a nonnegative combination of simple coroots") {
        const AdlvShape big{{2, 3}, 3};
        RationalCochar diff = cochar_zero<Rat>(big);
        diff.c = 1;
        const RationalCochar nu_big = newton_point(big);
        diff = cochar_sub(diff, nu_big); // omega* - nu, c = 0
        const auto expansion = coroot_expansion(diff);
        for (const auto& place : expansion)
            for (const auto& row : place)
                for (size_t i = 0; i < row.size(); ++i) {
                    CHECK(row[i] >= 0);
                    // triangular solve gives exactly i/2
                    CHECK(row[i] == make_rat(static_cast<long>(i) + 1, 2));
                }
    }
}

TEST_CASE("best integral approximation") {
    SECTION("stated representatives") {
        const auto r1 = lambda_Gb(AdlvShape{{1}, 1}).representative;
        CHECK(r1.c == 1);
        CHECK(r1.at(0, 0, 0) == -1);

        const auto r2 = lambda_Gb(AdlvShape{{2}, 1}).representative;
        CHECK(r2.at(0, 0, 0) == -1);

        const auto r3 = lambda_Gb(AdlvShape{{2}, 2}).representative;
        CHECK(r3.at(0, 0, 0) == -1);
        CHECK(r3.at(0, 0, 1) == -1);

        const auto r4 = lambda_Gb(AdlvShape{{3}, 2}).representative;
        CHECK(r4.at(0, 0, 0) == -2); // ceil(3/2) at odd i
        CHECK(r4.at(0, 0, 1) == -1); // floor(3/2) at even i
    }

    SECTION("clause (i): the class maps to kappa = 1") {
        for (const auto& f : {std::vector<int>{1}, {2}, {3}, {1, 2}})
            for (int m = 1; m <= 3; ++m)
                CHECK(kappa_of(lambda_Gb(AdlvShape{f, m}).representative) == 1);
    }

    SECTION("clause (ii): nu - lambda^diamond has coroot coefficients in [0,1)") {
        for (const auto& f : {std::vector<int>{1}, {2}, {3}, {4}, {1, 2}, {2, 3}})
            for (int m = 1; m <= 3; ++m) {
                const AdlvShape shape{f, m};
                const RationalCochar nu = newton_point(shape);
                const RationalCochar lam = diamond(lambda_Gb(shape).representative);
                const RationalCochar diff = cochar_sub(nu, lam);
                REQUIRE(diff.c == 0);
                for (const auto& place : coroot_expansion(diff))
                    for (const auto& row : place)
                        for (const auto& coeff : row) {
                            CHECK(coeff >= 0);
                            CHECK(coeff < 1);
                        }
            }
    }
}

TEST_CASE("membership in (1 - sigma) X_*(T)") {
    const AdlvShape shape{{2, 3}, 2};
    CHECK(in_one_minus_sigma(cochar_zero<Int>(shape)));

    SECTION("(1 - sigma) x always belongs") {
        std::mt19937 rng(5);
        for (int t = 0; t < 50; ++t) {
            const Cochar x = random_cochar(rng, shape);
            CHECK(in_one_minus_sigma(cochar_sub(x, sigma_act(x))));
        }
    }

    SECTION("a single eps does not") {
        Cochar x = cochar_zero<Int>(shape);
        x.at(0, 0, 0) = 1;
        CHECK_FALSE(in_one_minus_sigma(x));
        Cochar w = cochar_zero<Int>(shape);
        w.c = 1;
        CHECK_FALSE(in_one_minus_sigma(w));
    }
}

TEST_CASE("component counts agree across all three routes") {
    const std::vector<std::vector<int>> shapes = {{1}, {2}, {3}, {4}, {1, 1}, {1, 2}, {2, 2}, {2, 3}};
    for (const auto& f : shapes)
        for (int m = 1; m <= 3; ++m) {
            const AdlvShape shape{f, m};
            if (shape.m * shape.total_f() > 24) continue;
            const Int closed = count_components_closed(shape);
            CHECK(closed == count_components_enum(shape));
            CHECK(closed == oracle::weyl_assignment_count(f, m));
        }

    CHECK(count_components_closed(AdlvShape{{1}, 1}) == 1);
    CHECK(count_components_closed(AdlvShape{{2}, 1}) == 2);
    CHECK(count_components_closed(AdlvShape{{3}, 2}) == 9);
    CHECK(count_components_enum(AdlvShape{{2}, 1}) == 2);
    CHECK(count_components_enum(AdlvShape{{1, 2}, 1}) == 2);
    CHECK(count_components_enum(AdlvShape{{4}, 2}) == 36);
    CHECK(oracle::weyl_assignment_count({2}, 1) == 2);
    CHECK(oracle::weyl_assignment_count({3}, 2) == 9);
    CHECK(oracle::weyl_assignment_count({1}, 3) == 1);
}

TEST_CASE("counted assignments land in the lambda_Gb class") {
    for (const auto& f : {std::vector<int>{2}, {3}, {1, 2}})
        for (int m = 1; m <= 2; ++m) {
            const AdlvShape shape{f, m};
            const Cochar rep = lambda_Gb(shape).representative;
            const int bits = shape.m * shape.total_f();
            Int counted(0);
            for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
                const Cochar x = cochar_from_mask(shape, mask);
                if (cochar_class_equal(x, rep)) counted += 1;
            }
            CHECK(counted == count_components_enum(shape));
        }
}

TEST_CASE("sigma-averaging flattens orbit coefficients") {
    const AdlvShape shape{{3, 2}, 2};
    std::mt19937 rng(9);
    for (int t = 0; t < 20; ++t) {
        const Cochar x = random_cochar(rng, shape);
        const RationalCochar avg = diamond(x);
        for (size_t v = 0; v < avg.a.size(); ++v)
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 1; j < avg.a[v].size(); ++j)
                    CHECK(avg.a[v][j][i] == avg.a[v][0][i]);
        // diamond is sigma-invariant
        CHECK(sigma_act(avg) == avg);
    }
}

TEST_CASE("gates and caps") {
    PELInput in;
    in.p = 7;
    in.quat.ramified = {{7, 0, 1}, {3, 0, 1}};
    CHECK_THROWS_AS(count_components_closed(in), GateError);
    CHECK_THROWS_AS(count_components_enum(AdlvShape{{13}, 2}), ValidationError);

    PELInput ok;
    ok.p = 7;
    CHECK(count_components_closed(ok) == 1);
    CHECK(count_components_enum(ok) == 1);
}
