#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sqz/channels.hpp"
#include "sqz/moments.hpp"
#include "test_helpers.hpp"

using namespace sqz;

namespace {

const std::vector<ChannelKind> kAllKinds = {ChannelKind::ADC, ChannelKind::PDC,
                                            ChannelKind::DPC};

QubitOperator pauli(int axis) {
    QubitOperator m;
    switch (axis) {
        case 0: m << 0, 1, 1, 0; break;
        case 1: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

QubitOperator bloch_state(double x, double y, double z) {
    QubitOperator rho = 0.5 * QubitOperator::Identity();
    rho += 0.5 * (x * pauli(0) + y * pauli(1) + z * pauli(2));
    return rho;
}

Eigen::Vector3d bloch_vector(const QubitOperator& rho) {
    Eigen::Vector3d r;
    for (int k = 0; k < 3; ++k) r(k) = (rho * pauli(k)).trace().real();
    return r;
}

QubitOperator random_density(std::mt19937& rng) {
    std::normal_distribution<double> g;
    QubitOperator a;
    a << Complex(g(rng), g(rng)), Complex(g(rng), g(rng)),
         Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
    QubitOperator rho = a * a.adjoint();
    return rho / rho.trace();
}

QubitOperator random_hermitian(std::mt19937& rng) {
    std::normal_distribution<double> g;
    QubitOperator a;
    a << Complex(g(rng), g(rng)), Complex(g(rng), g(rng)),
         Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("channel tokens round-trip") {
    for (ChannelKind k : kAllKinds) CHECK(channel_from_token(channel_token(k)) == k);
    CHECK_THROWS_AS(channel_from_token("amplitude"), std::invalid_argument);
}

TEST_CASE("strength domain validation") {
    CHECK_THROWS_AS(ChannelSpec(ChannelKind::ADC, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(ChannelKind::PDC, 1.0001), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(ChannelKind::DPC, 1.2), std::invalid_argument);
    CHECK_NOTHROW(ChannelSpec(ChannelKind::DPC, 1.2, true));
    CHECK_NOTHROW(ChannelSpec(ChannelKind::DPC, 4.0 / 3.0, true));
    CHECK_THROWS_AS(ChannelSpec(ChannelKind::DPC, 1.35, true), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(ChannelKind::ADC, 1.2, true), std::invalid_argument);
    CHECK(ChannelSpec(ChannelKind::ADC, 0.25).s == 0.75);
}

TEST_CASE("kraus sets are complete to 1e-14") {
    for (ChannelKind kind : kAllKinds) {
        for (int i = 0; i <= 10; ++i) {
            const ChannelSpec spec(kind, i / 10.0);
            QubitOperator sum = QubitOperator::Zero();
            for (const auto& e : kraus_set(spec)) sum += e.adjoint() * e;
            CHECK((sum - QubitOperator::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
        }
    }
    // extended DPC domain stays a channel
    for (double p : {1.1, 1.25, 4.0 / 3.0}) {
        QubitOperator sum = QubitOperator::Zero();
        for (const auto& e : kraus_set(ChannelSpec(ChannelKind::DPC, p, true)))
            sum += e.adjoint() * e;
        CHECK((sum - QubitOperator::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("kraus boundary forms") {
    const auto adc0 = kraus_set(ChannelSpec(ChannelKind::ADC, 0.0));
    CHECK((adc0[0] - QubitOperator::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(adc0[1].cwiseAbs().maxCoeff() == 0.0);

    const auto adc1 = kraus_set(ChannelSpec(ChannelKind::ADC, 1.0));
    QubitOperator ground_proj = QubitOperator::Zero();
    ground_proj(1, 1) = 1.0;
    QubitOperator decay = QubitOperator::Zero();
    decay(1, 0) = 1.0;
    CHECK((adc1[0] - ground_proj).cwiseAbs().maxCoeff() == 0.0);
    CHECK((adc1[1] - decay).cwiseAbs().maxCoeff() == 0.0);

    CHECK(kraus_set(ChannelSpec(ChannelKind::PDC, 0.4)).size() == 3);
    CHECK(kraus_set(ChannelSpec(ChannelKind::DPC, 1.0)).size() == 4);
}

TEST_CASE("apply_state examples") {
    // p=0 is the identity map on a dense Bloch grid, exactly
    for (ChannelKind kind : kAllKinds) {
        for (double x : {-0.8, -0.2, 0.0, 0.5}) {
            for (double z : {-0.9, 0.0, 0.4}) {
                const QubitOperator rho = bloch_state(x, 0.3 * x, z);
                const QubitOperator out = apply_state(ChannelSpec(kind, 0.0), rho);
                CHECK((out - rho).cwiseAbs().maxCoeff() == 0.0);
            }
        }
    }

    QubitOperator excited = QubitOperator::Zero();
    excited(0, 0) = 1.0;
    const QubitOperator damped = apply_state(ChannelSpec(ChannelKind::ADC, 0.75), excited);
    CHECK(close(damped(0, 0).real(), 0.25, 1e-15));
    CHECK(close(damped(1, 1).real(), 0.75, 1e-15));

    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        const QubitOperator out = apply_state(ChannelSpec(ChannelKind::DPC, 1.0),
                                              random_density(rng));
        CHECK((out - 0.5 * QubitOperator::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("apply_state rejects non-density inputs") {
    QubitOperator bad = QubitOperator::Identity();  // trace 2
    CHECK_THROWS_AS(apply_state(ChannelSpec(ChannelKind::ADC, 0.5), bad), std::domain_error);
    bad << 1.2, 0, 0, -0.2;  // negative eigenvalue
    CHECK_THROWS_AS(apply_state(ChannelSpec(ChannelKind::PDC, 0.5), bad), std::domain_error);
    bad << 0.5, Complex(0, 0.3), Complex(0, 0.3), 0.5;  // not Hermitian
    CHECK_THROWS_AS(apply_state(ChannelSpec(ChannelKind::DPC, 0.5), bad), std::domain_error);
}

TEST_CASE("dual-map closed forms") {
    // PDC leaves sigma_z untouched for every strength
    for (double p : {0.0, 0.3, 0.99}) {
        const QubitOperator out = apply_observable(ChannelSpec(ChannelKind::PDC, p), pauli(2));
        CHECK((out - pauli(2)).cwiseAbs().maxCoeff() == 0.0);
    }
    const QubitOperator adc_z = apply_observable(ChannelSpec(ChannelKind::ADC, 0.5), pauli(2));
    CHECK((adc_z - (0.5 * pauli(2) - 0.5 * QubitOperator::Identity())).cwiseAbs().maxCoeff()
          <= 1e-15);
    const QubitOperator dpc_x = apply_observable(ChannelSpec(ChannelKind::DPC, 0.3), pauli(0));
    CHECK((dpc_x - 0.7 * pauli(0)).cwiseAbs().maxCoeff() <= 1e-15);
    for (ChannelKind kind : kAllKinds) {
        const QubitOperator out =
            apply_observable(ChannelSpec(kind, 0.42), QubitOperator::Identity());
        CHECK((out - QubitOperator::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("dual map equals the kraus adjoint route") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const ChannelSpec spec(kAllKinds[i % 3], up(rng));
        const QubitOperator a = random_hermitian(rng);
        QubitOperator adj = QubitOperator::Zero();
        for (const auto& e : kraus_set(spec)) adj += e.adjoint() * a * e;
        CHECK((adj - apply_observable(spec, a)).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("Schroedinger/Heisenberg duality on 1000 random tuples") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ChannelSpec spec(kAllKinds[i % 3], up(rng));
        const QubitOperator rho = random_density(rng);
        const QubitOperator a = random_hermitian(rng);
        const Complex lhs = (a * apply_state(spec, rho)).trace();
        const Complex rhs = (apply_observable(spec, a) * rho).trace();
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("Bloch-vector contraction per channel") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-0.57, 0.57);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector3d r(u(rng), u(rng), u(rng));
        const QubitOperator rho = bloch_state(r(0), r(1), r(2));
        const double p = 0.5 * (u(rng) + 0.6);
        const double s = 1.0 - p;

        Eigen::Vector3d adc = bloch_vector(apply_state(ChannelSpec(ChannelKind::ADC, p), rho));
        CHECK(close(adc(0), std::sqrt(s) * r(0), 1e-14));
        CHECK(close(adc(1), std::sqrt(s) * r(1), 1e-14));
        CHECK(close(adc(2), s * r(2) - p, 1e-14));

        Eigen::Vector3d pdc = bloch_vector(apply_state(ChannelSpec(ChannelKind::PDC, p), rho));
        CHECK(close(pdc(0), s * r(0), 1e-14));
        CHECK(close(pdc(1), s * r(1), 1e-14));
        CHECK(close(pdc(2), r(2), 1e-14));

        Eigen::Vector3d dpc = bloch_vector(apply_state(ChannelSpec(ChannelKind::DPC, p), rho));
        CHECK((dpc - s * r).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("time parameterization") {
    CHECK(strength_from_time(1.0, 0.0) == 0.0);
    CHECK(close(strength_from_time(1.0, std::log(2.0)), 0.5, 1e-15));
    CHECK(strength_from_time(2.0, 1000.0) < 1.0);
    CHECK(strength_from_time(2.0, 1000.0) > 1.0 - 1e-12);
    CHECK_THROWS_AS(strength_from_time(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(strength_from_time(1.0, -2.0), std::invalid_argument);
}
