#include <doctest.h>

#include "nvtflow/error.hpp"
#include "nvtflow/thermo.hpp"

#include <cmath>
#include <random>

using namespace nvt;

namespace {

MixtureSpec make_mixture(std::vector<ComponentSpec> comps, double t) {
    MixtureSpec mix;
    mix.components = std::move(comps);
    const int m = mix.count();
    mix.k_ij.assign(static_cast<size_t>(m) * m, 0.0);
    mix.temperature = t;
    return mix;
}

// Near-ideal species: huge critical pressure drives both a and b to zero.
ComponentSpec ideal_like() { return {"ideal", 1e30, 190.56, 0.011, 16.04e-3}; }

} // namespace

TEST_CASE("pure_params reference values") {
    const ComponentSpec& methane = find_component("methane");

    SUBCASE("at the critical temperature the attraction bracket is one") {
        const PureParams p = pure_params(methane, 190.56);
        const double expected = 0.45724 * kGasConstant * kGasConstant * 190.56 * 190.56 / 4.599e6;
        CHECK(p.a == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("covolume") {
        const PureParams p = pure_params(methane, 310.0);
        CHECK(p.b == doctest::Approx(2.6802911317279061e-5).epsilon(1e-14));
    }
    SUBCASE("m coefficient, quadratic branch") {
        const PureParams p = pure_params(methane, 310.0);
        CHECK(p.m == doctest::Approx(0.39157219968).epsilon(1e-14));
    }
    SUBCASE("attraction parameter at 310 K") {
        const PureParams p = pure_params(methane, 310.0);
        CHECK(p.a == doctest::Approx(0.19864519904824641).epsilon(1e-13));
    }
    SUBCASE("decane stays on the quadratic branch at omega = 0.489") {
        const ComponentSpec& decane = find_component("decane");
        const PureParams p = pure_params(decane, 310.0);
        const double w = 0.489;
        const double quadratic = 0.37464 + 1.54226 * w - 0.26992 * w * w;
        const double cubic = 0.379642 + 1.485030 * w - 0.164423 * w * w + 0.016666 * w * w * w;
        CHECK(p.m == doctest::Approx(quadratic).epsilon(1e-15));
        CHECK(p.m != doctest::Approx(cubic).epsilon(1e-6));
    }
    SUBCASE("cubic branch selected above 0.49") {
        ComponentSpec heavy = find_component("decane");
        heavy.acentric = 0.6;
        const PureParams p = pure_params(heavy, 310.0);
        const double w = 0.6;
        CHECK(p.m ==
              doctest::Approx(0.379642 + 1.485030 * w - 0.164423 * w * w + 0.016666 * w * w * w)
                  .epsilon(1e-15));
    }
    SUBCASE("non-positive temperature rejected") {
        CHECK_THROWS_AS(pure_params(methane, 0.0), DomainError);
        ComponentSpec bad = methane;
        bad.p_crit = -1.0;
        CHECK_THROWS_AS(pure_params(bad, 310.0), ConfigError);
    }
}

TEST_CASE("mixture_params mixing rules") {
    SUBCASE("single component recovers pure parameters") {
        MixtureSpec mix = make_mixture({find_component("methane")}, 310.0);
        const PureParams p = pure_params(mix.components[0], 310.0);
        const std::vector<double> n = {1234.5};
        const MixtureParams mp = mixture_params(mix, n);
        CHECK(mp.a == doctest::Approx(p.a).epsilon(1e-15));
        CHECK(mp.b == doctest::Approx(p.b).epsilon(1e-15));
    }
    SUBCASE("two identical components at equal fractions collapse") {
        MixtureSpec mix = make_mixture({find_component("methane"), find_component("methane")}, 310.0);
        const PureParams p = pure_params(mix.components[0], 310.0);
        const std::vector<double> n = {500.0, 500.0};
        const MixtureParams mp = mixture_params(mix, n);
        CHECK(mp.a == doctest::Approx(p.a).epsilon(1e-14));
        CHECK(mp.b == doctest::Approx(p.b).epsilon(1e-14));
    }
    SUBCASE("equimolar binary expands the double sum") {
        MixtureSpec mix = make_mixture({find_component("methane"), find_component("pentane")}, 310.0);
        const PureParams p1 = pure_params(mix.components[0], 310.0);
        const PureParams p2 = pure_params(mix.components[1], 310.0);
        const std::vector<double> n = {800.0, 800.0};
        const MixtureParams mp = mixture_params(mix, n);
        CHECK(mp.a ==
              doctest::Approx(0.25 * (p1.a + 2.0 * std::sqrt(p1.a * p2.a) + p2.a)).epsilon(1e-14));
    }
    SUBCASE("all-zero composition rejected") {
        MixtureSpec mix = make_mixture({find_component("methane")}, 310.0);
        const std::vector<double> n = {0.0};
        CHECK_THROWS_AS(mixture_params(mix, n), DomainError);
    }
}

TEST_CASE("helmholtz_bulk") {
    SUBCASE("vanishes with the density") {
        MixtureSpec mix = make_mixture({find_component("methane")}, 310.0);
        const std::vector<double> n = {1e-8};
        CHECK(std::abs(helmholtz_bulk(mix, n)) < 1e-3);
    }
    SUBCASE("ideal-gas reduction when a and b collapse") {
        MixtureSpec mix = make_mixture({ideal_like(), ideal_like()}, 310.0);
        const std::vector<double> n = {4000.0, 2500.0};
        const double rt = kGasConstant * 310.0;
        const double expected =
            rt * (n[0] * (std::log(n[0]) - 1.0) + n[1] * (std::log(n[1]) - 1.0));
        CHECK(helmholtz_bulk(mix, n) == doctest::Approx(expected).epsilon(1e-10));
    }
    SUBCASE("high-precision reference value, methane at 310 K") {
        MixtureSpec mix = make_mixture({find_component("methane")}, 310.0);
        const std::vector<double> n = {7430.2};
        CHECK(helmholtz_bulk(mix, n) == doctest::Approx(146483174.85422927).epsilon(1e-12));
    }
    SUBCASE("covolume violation rejected") {
        MixtureSpec mix = make_mixture({find_component("methane")}, 310.0);
        const std::vector<double> n = {1.0 / 2.6802911317279061e-5};
        CHECK_THROWS_AS(helmholtz_bulk(mix, n), DomainError);
    }
    SUBCASE("non-positive density rejected") {
        MixtureSpec mix = make_mixture({find_component("methane"), find_component("pentane")}, 310.0);
        const std::vector<double> n = {1000.0, -1.0};
        CHECK_THROWS_AS(helmholtz_bulk(mix, n), DomainError);
    }
}

TEST_CASE("chemical_potential_bulk") {
    SUBCASE("ideal reduction mu = RT ln n") {
        MixtureSpec mix = make_mixture({ideal_like()}, 310.0);
        const std::vector<double> n = {5200.0};
        const std::vector<double> mu = chemical_potential_bulk(mix, n);
        CHECK(mu[0] == doctest::Approx(kGasConstant * 310.0 * std::log(5200.0)).epsilon(1e-10));
    }
    SUBCASE("high-precision reference value") {
        MixtureSpec mix = make_mixture({find_component("methane")}, 310.0);
        const std::vector<double> n = {7430.2};
        const std::vector<double> mu = chemical_potential_bulk(mix, n);
        CHECK(mu[0] == doctest::Approx(21846.644111455861).epsilon(1e-12));
    }
    SUBCASE("matches central finite differences of f_b") {
        std::mt19937 rng(20240817);
        std::uniform_real_distribution<double> frac(0.1, 1.0);
        const std::vector<ComponentSpec>& table = builtin_components();
        for (int trial = 0; trial < 100; ++trial) {
            const int m = 1 + static_cast<int>(rng() % 3);
            std::vector<ComponentSpec> comps(table.begin(), table.begin() + m);
            MixtureSpec mix = make_mixture(comps, 310.0 + 30.0 * frac(rng));
            std::vector<double> n(m);
            for (int i = 0; i < m; ++i) n[i] = 8000.0 * frac(rng) / m;
            const std::vector<double> mu = chemical_potential_bulk(mix, n);
            for (int i = 0; i < m; ++i) {
                const double h = 1e-6 * n[i];
                std::vector<double> np = n, nm = n;
                np[i] += h;
                nm[i] -= h;
                const double fd = (helmholtz_bulk(mix, np) - helmholtz_bulk(mix, nm)) / (2.0 * h);
                CHECK(mu[i] == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
    SUBCASE("permutation symmetry for identical components") {
        MixtureSpec mix = make_mixture({find_component("pentane"), find_component("pentane")}, 310.0);
        const std::vector<double> n = {900.0, 900.0};
        const std::vector<double> mu = chemical_potential_bulk(mix, n);
        CHECK(mu[0] == doctest::Approx(mu[1]).epsilon(1e-15));
    }
}

TEST_CASE("pressure_bulk") {
    SUBCASE("ideal reduction p = nRT") {
        MixtureSpec mix = make_mixture({ideal_like()}, 310.0);
        const std::vector<double> n = {3000.0};
        CHECK(pressure_bulk(mix, n) ==
              doctest::Approx(3000.0 * kGasConstant * 310.0).epsilon(1e-10));
    }
    SUBCASE("definitional identity against mu and f_b") {
        MixtureSpec mix = make_mixture({find_component("methane"), find_component("pentane")}, 310.0);
        const std::vector<double> n = {6866.3, 4791.5};
        const std::vector<double> mu = chemical_potential_bulk(mix, n);
        const double lhs = pressure_bulk(mix, n);
        const double rhs = n[0] * mu[0] + n[1] * mu[1] - helmholtz_bulk(mix, n);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    SUBCASE("closed-form reference value") {
        MixtureSpec mix = make_mixture({find_component("methane")}, 310.0);
        const std::vector<double> n = {7430.2};
        CHECK(pressure_bulk(mix, n) == doctest::Approx(15841760.222710061).epsilon(1e-12));
    }
    SUBCASE("density sweep against the closed form") {
        MixtureSpec mix = make_mixture({find_component("methane")}, 310.0);
        for (double nv = 100.0; nv < 30000.0; nv *= 1.7) {
            const std::vector<double> n = {nv};
            CHECK(pressure_bulk(mix, n) ==
                  doctest::Approx(pressure_peng_robinson(mix, n)).epsilon(1e-10));
        }
    }
}

TEST_CASE("builtin component table") {
    CHECK(find_component("methane").p_crit == doctest::Approx(4.599e6));
    CHECK(find_component("pentane").t_crit == doctest::Approx(469.7));
    CHECK(find_component("decane").molar_weight == doctest::Approx(0.14228));
    CHECK(find_component("methane").acentric == doctest::Approx(0.011));
    CHECK_THROWS_AS(find_component("helium"), ConfigError);
}

TEST_CASE("evaluate_bulk is consistent with the individual routes") {
    MixtureSpec mix = make_mixture(
        {find_component("methane"), find_component("pentane"), find_component("decane")}, 323.0);
    const std::vector<double> n = {7841.2, 1992.5, 1433.0};
    const EosCoeffs eos = EosCoeffs::from(mix);
    const BulkEosEval eval = evaluate_bulk(eos, n);
    CHECK(eval.f_b == doctest::Approx(helmholtz_bulk(mix, n)).epsilon(1e-15));
    const std::vector<double> mu = chemical_potential_bulk(mix, n);
    for (int i = 0; i < 3; ++i) CHECK(eval.mu_b[i] == doctest::Approx(mu[i]).epsilon(1e-15));
    CHECK(eval.p_b == doctest::Approx(pressure_bulk(mix, n)).epsilon(1e-15));
    CHECK(eval.p_b == doctest::Approx(pressure_peng_robinson(mix, n)).epsilon(1e-10));
}
