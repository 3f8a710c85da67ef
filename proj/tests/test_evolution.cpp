#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqz/evolution.hpp"
#include "test_helpers.hpp"

using namespace sqz;
namespace {
constexpr double kPi = std::numbers::pi;

// Critical strengths at (n=3, theta0=pi/2), frozen from an independent
// brute-force evaluation of the Table-II expressions.
constexpr double kPdcPc1 = 0.3312596950235779;
constexpr double kPdcPc3 = 0.4080769424809515;
constexpr double kDpcPc1 = 0.2138486222425766;
constexpr double kDpcPc3 = 0.279633683306045;

bool same_classification(const CriticalPoint& a, const CriticalPoint& b, double tol) {
    if (a.status != b.status) return false;
    if (a.status != DeathStatus::VANISHES_AT) return true;
    return std::abs(*a.p_c - *b.p_c) <= tol;
}

}  // namespace

TEST_CASE("moment evolution rows of the three channels") {
    const PairMoments m0 = initial_moments(EnsembleSpec(3, kPi / 2.0));

    for (ChannelKind kind : {ChannelKind::ADC, ChannelKind::PDC, ChannelKind::DPC}) {
        const PairMoments same = evolve_moments(ChannelSpec(kind, 0.0), m0);
        CHECK(same.mz == m0.mz);
        CHECK(same.mzz == m0.mzz);
        CHECK(same.y == m0.y);
        CHECK(same.u == m0.u);
    }

    const PairMoments dead = evolve_moments(ChannelSpec(ChannelKind::ADC, 1.0), m0);
    CHECK(dead.mz == -1.0);
    CHECK(dead.mzz == 1.0);
    CHECK(dead.y == 0.0);
    CHECK(std::abs(dead.u) == 0.0);

    const PairMoments adc = evolve_moments(ChannelSpec(ChannelKind::ADC, 0.5), m0);
    CHECK(close(adc.mz, -0.75, 1e-15));
    CHECK(close(adc.mzz, 0.625, 1e-15));
    CHECK(close(adc.y, 0.0625, 1e-15));
    CHECK(close(adc.u, Complex(-0.0625, -0.125), 1e-15));
    CHECK(close(czz(adc, 3), 0.125, 1e-15));  // s^2 * czz0

    const PairMoments pdc = evolve_moments(ChannelSpec(ChannelKind::PDC, 0.5), m0);
    CHECK(pdc.mz == m0.mz);
    CHECK(pdc.mzz == m0.mzz);
    CHECK(close(pdc.y, 0.03125, 1e-15));
    CHECK(close(czz(pdc, 3), czz(m0, 3), 1e-15));

    const PairMoments dpc = evolve_moments(ChannelSpec(ChannelKind::DPC, 0.3), m0);
    CHECK(close(dpc.mz, -0.35, 1e-15));
    CHECK(close(dpc.mzz, 0.245, 1e-15));
    CHECK(close(czz(dpc, 3), 0.49 * 0.5, 1e-15));

    CHECK_THROWS_AS(evolve_moments(ChannelSpec(ChannelKind::ADC, 1.5), m0),
                    std::invalid_argument);
}

TEST_CASE("closed-form parameter curves at worked points") {
    const EnsembleSpec spec(3, kPi / 2.0);
    const InitialScalars init(spec);

    CHECK(close(report_at(ChannelKind::PDC, init, 0.5).xi1_sq, 0.8454915028125259, 1e-14));
    CHECK(close(*report_at(ChannelKind::DPC, init, 0.3).xi2_sq, 5.691129351122873, 1e-13));
    const SqueezingReport adc = report_at(ChannelKind::ADC, init, 0.5);
    CHECK(close(adc.xi3_sq, 0.7537996425000574, 1e-14));
    CHECK(close(adc.cr, 0.18401699437494745, 1e-14));
}

TEST_CASE("the two evolution paths agree to 1e-12 everywhere") {
    for (ChannelKind kind : {ChannelKind::ADC, ChannelKind::PDC, ChannelKind::DPC}) {
        for (int n : {2, 3, 5, 8, 12}) {
            for (double theta0 : {0.3, kPi / 2.0, 2.1, kPi, 5.5}) {
                const EnsembleSpec spec(n, theta0);
                const InitialScalars init(spec);
                for (int ip = 0; ip <= 20; ++ip) {
                    const double p = ip / 20.0;
                    const SqueezingReport direct = report_at(kind, init, p);
                    const PairMoments m = evolve_moments(ChannelSpec(kind, p), init.m0);
                    const SqueezingReport via = report(m, n, from_moments(m));

                    CHECK(close(direct.xi1_sq, via.xi1_sq, 1e-12));
                    CHECK(direct.xi2_sq.has_value() == via.xi2_sq.has_value());
                    if (direct.xi2_sq) {
                        const double scale = std::max(1.0, std::abs(*via.xi2_sq));
                        CHECK(std::abs(*direct.xi2_sq - *via.xi2_sq) <= 1e-12 * scale);
                    }
                    CHECK(close(direct.xi3_sq, via.xi3_sq, 1e-12));
                    CHECK(close(direct.cr, via.cr, 1e-12));
                    CHECK(close(direct.varsigma_sq, via.varsigma_sq, 1e-12));
                    CHECK(direct.min_branch == via.min_branch);
                }
            }
        }
    }
}

TEST_CASE("curve evaluates a grid in one call") {
    const EnsembleSpec spec(12, 0.1 * kPi);
    const std::vector<double> ps = {0.0, 0.25, 0.5, 0.75, 0.999};
    const auto reports = curve(ChannelKind::ADC, spec, ps);
    REQUIRE(reports.size() == ps.size());
    CHECK(close(reports.front().cr, 0.7827192494362488, 1e-13));
    // no ESD or SSSD at this small twist angle: everything stays alive
    for (const auto& r : reports) {
        if (&r == &reports.front()) continue;
        CHECK(r.cr > 0.0);
        CHECK(*r.zeta2_sq > 0.0);
        CHECK(r.zeta3_sq > 0.0);
    }
}

TEST_CASE("critical strengths at n=3, theta0=pi/2") {
    const EnsembleSpec spec(3, kPi / 2.0);

    const CriticalPoint adc1 = critical_strength(ChannelKind::ADC, DeathQuantity::CONCURRENCE, spec);
    CHECK(adc1.status == DeathStatus::NEVER_VANISHES);  // closed form 1.236... >= 1
    const CriticalPoint adc3 = critical_strength(ChannelKind::ADC, DeathQuantity::ZETA3, spec);
    CHECK(adc3.status == DeathStatus::NEVER_VANISHES);
    const CriticalPoint adc2 = critical_strength(ChannelKind::ADC, DeathQuantity::ZETA2, spec);
    CHECK(adc2.status == DeathStatus::NEVER_PRESENT);  // xi2(0) = 1.52... > 1

    const CriticalPoint pdc1 = critical_strength(ChannelKind::PDC, DeathQuantity::CONCURRENCE, spec);
    REQUIRE(pdc1.status == DeathStatus::VANISHES_AT);
    CHECK(close(*pdc1.p_c, kPdcPc1, 1e-14));
    const CriticalPoint pdc3 = critical_strength(ChannelKind::PDC, DeathQuantity::ZETA3, spec);
    REQUIRE(pdc3.status == DeathStatus::VANISHES_AT);
    CHECK(close(*pdc3.p_c, kPdcPc3, 1e-14));
    CHECK(critical_strength(ChannelKind::PDC, DeathQuantity::ZETA2, spec).status ==
          DeathStatus::NEVER_PRESENT);

    const CriticalPoint dpc1 = critical_strength(ChannelKind::DPC, DeathQuantity::CONCURRENCE, spec);
    REQUIRE(dpc1.status == DeathStatus::VANISHES_AT);
    CHECK(close(*dpc1.p_c, kDpcPc1, 1e-14));
    const CriticalPoint dpc3 = critical_strength(ChannelKind::DPC, DeathQuantity::ZETA3, spec);
    REQUIRE(dpc3.status == DeathStatus::VANISHES_AT);
    CHECK(close(*dpc3.p_c, kDpcPc3, 1e-14));
    CHECK(critical_strength(ChannelKind::DPC, DeathQuantity::ZETA2, spec).status ==
          DeathStatus::NEVER_PRESENT);
}

TEST_CASE("degenerate angles never had anything to kill") {
    for (ChannelKind kind : {ChannelKind::ADC, ChannelKind::PDC, ChannelKind::DPC}) {
        for (double theta0 : {0.0, 2.0 * kPi - 1e-18}) {
            for (DeathQuantity q :
                 {DeathQuantity::CONCURRENCE, DeathQuantity::ZETA2, DeathQuantity::ZETA3}) {
                CHECK(critical_strength(kind, q, EnsembleSpec(12, theta0)).status ==
                      DeathStatus::NEVER_PRESENT);
                CHECK(critical_strength_numeric(kind, q, EnsembleSpec(12, theta0), 1e-8).status ==
                      DeathStatus::NEVER_PRESENT);
            }
        }
    }
    // central no-squeezing region: theta0 = pi at even n
    for (DeathQuantity q :
         {DeathQuantity::CONCURRENCE, DeathQuantity::ZETA2, DeathQuantity::ZETA3}) {
        CHECK(critical_strength(ChannelKind::ADC, q, EnsembleSpec(12, kPi)).status ==
              DeathStatus::NEVER_PRESENT);
    }
}

TEST_CASE("bisection agrees with the closed forms") {
    const EnsembleSpec spec(3, kPi / 2.0);
    const CriticalPoint numeric =
        critical_strength_numeric(ChannelKind::DPC, DeathQuantity::ZETA3, spec, 1e-8);
    REQUIRE(numeric.status == DeathStatus::VANISHES_AT);
    CHECK(close(*numeric.p_c, kDpcPc3, 1e-8));

    for (ChannelKind kind : {ChannelKind::ADC, ChannelKind::PDC, ChannelKind::DPC}) {
        for (int n : {2, 3, 4, 12}) {
            for (int t = 0; t <= 16; ++t) {
                const EnsembleSpec grid_spec(n, 2.0 * kPi * t / 16.0);
                for (DeathQuantity q :
                     {DeathQuantity::CONCURRENCE, DeathQuantity::ZETA2, DeathQuantity::ZETA3}) {
                    const CriticalPoint closed = critical_strength(kind, q, grid_spec);
                    const CriticalPoint scanned =
                        critical_strength_numeric(kind, q, grid_spec, 1e-8);
                    CHECK(same_classification(closed, scanned, 1e-8));
                }
            }
        }
    }
}

TEST_CASE("sudden death is sudden: zero beyond p_c, positive before") {
    const EnsembleSpec spec(3, kPi / 2.0);
    const InitialScalars init(spec);
    const CriticalPoint pc = critical_strength(ChannelKind::DPC, DeathQuantity::CONCURRENCE, spec);
    REQUIRE(pc.status == DeathStatus::VANISHES_AT);
    for (int i = 1; i <= 50; ++i) {
        const double before = *pc.p_c * (1.0 - i / 51.0);
        CHECK(report_at(ChannelKind::DPC, init, before).cr > 0.0);
        const double after = *pc.p_c + (1.0 - *pc.p_c) * i / 51.0;
        CHECK(report_at(ChannelKind::DPC, init, after).cr == 0.0);
    }
}

TEST_CASE("ADC xi2 quadratic structure: p=1 is always a root") {
    for (int n : {2, 3, 7, 12}) {
        for (double theta0 : {0.4, 1.3, 2.9, 4.4}) {
            const InitialScalars init(EnsembleSpec(n, theta0));
            const SqueezingReport r = report_at(ChannelKind::ADC, init, 1.0);
            REQUIRE(r.xi2_sq.has_value());
            CHECK(*r.xi2_sq == 1.0);
        }
    }
}

TEST_CASE("zeta3 outlives the concurrence and zeta2") {
    for (ChannelKind kind : {ChannelKind::ADC, ChannelKind::PDC, ChannelKind::DPC}) {
        for (int n : {2, 3, 4, 5, 6, 7, 8, 12}) {
            for (int t = 0; t <= 16; ++t) {
                const EnsembleSpec spec(n, 2.0 * kPi * t / 16.0);
                const auto conc = critical_strength(kind, DeathQuantity::CONCURRENCE, spec);
                const auto z2 = critical_strength(kind, DeathQuantity::ZETA2, spec);
                const auto z3 = critical_strength(kind, DeathQuantity::ZETA3, spec);
                if (z3.status != DeathStatus::VANISHES_AT) continue;
                if (conc.status == DeathStatus::VANISHES_AT) CHECK(*z3.p_c >= *conc.p_c - 1e-12);
                if (z2.status == DeathStatus::VANISHES_AT) CHECK(*z3.p_c >= *z2.p_c - 1e-12);
            }
        }
    }
}

TEST_CASE("PDC and DPC critical curves are symmetric about theta0 = pi, ADC is not") {
    for (ChannelKind kind : {ChannelKind::PDC, ChannelKind::DPC}) {
        for (int n : {3, 12}) {
            for (int t = 1; t < 16; ++t) {
                const EnsembleSpec left(n, 2.0 * kPi * t / 32.0);
                const EnsembleSpec right(n, 2.0 * kPi - 2.0 * kPi * t / 32.0);
                for (DeathQuantity q :
                     {DeathQuantity::CONCURRENCE, DeathQuantity::ZETA2, DeathQuantity::ZETA3}) {
                    CHECK(same_classification(critical_strength(kind, q, left),
                                              critical_strength(kind, q, right), 1e-10));
                }
            }
        }
    }
    const auto fwd =
        critical_strength(ChannelKind::ADC, DeathQuantity::CONCURRENCE, EnsembleSpec(12, 0.25 * kPi));
    const auto mirrored =
        critical_strength(ChannelKind::ADC, DeathQuantity::CONCURRENCE, EnsembleSpec(12, 1.75 * kPi));
    REQUIRE(fwd.status == DeathStatus::VANISHES_AT);
    REQUIRE(mirrored.status == DeathStatus::VANISHES_AT);
    CHECK(std::abs(*fwd.p_c - *mirrored.p_c) > 1e-3);
}

TEST_CASE("extended DPC domain") {
    const EnsembleSpec spec(4, 1.1);
    const InitialScalars init(spec);
    CHECK_THROWS_AS(report_at(ChannelKind::DPC, init, 1.2), std::invalid_argument);
    const SqueezingReport r = report_at(ChannelKind::DPC, init, 1.2, true);
    CHECK(std::isfinite(r.xi1_sq));
    const PairMoments m = evolve_moments(ChannelSpec(ChannelKind::DPC, 1.2, true), init.m0);
    CHECK(close(m.mz, -0.2 * init.m0.mz, 1e-15));  // s = -0.2 flips the Bloch vector
}
