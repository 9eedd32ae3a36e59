#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "g2moduli/classify.hpp"
#include "g2moduli/instanton_ode.hpp"

using namespace g2moduli;

namespace {

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

// synthetic trajectory with the exact model decay u = mu/t^2, v = nu/t^2
Trajectory synthetic_decay(double mu, double nu, double t_lo, double t_hi, int n) {
    Trajectory traj;
    traj.termination = Termination::Converged;
    for (int i = 0; i < n; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n - 1));
        traj.samples.push_back(
            {t, t, {2.0 / 3.0 + mu / (t * t), nu / (t * t)}});
    }
    return traj;
}

}  // namespace

TEST_CASE("decay fit recovers exact model coefficients") {
    const Trajectory traj = synthetic_decay(5.0, -3.0, 100.0, 1000.0, 60);
    const DecayFit fit = fit_decay(traj, 50.0, 0.1);
    CHECK(fit.n_tail == 60);
    CHECK(fit.mu == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(fit.nu == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(fit.slope_plus == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(fit.slope_minus == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(fit.exponent == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(fit.connection_rate == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(fit.max_log_residual < 1e-10);
}

TEST_CASE("decay fit treats a dead f_minus component as silent") {
    const Trajectory traj = synthetic_decay(2.0, 0.0, 100.0, 1000.0, 60);
    const DecayFit fit = fit_decay(traj, 50.0, 0.1);
    CHECK(fit.nu == 0.0);
    CHECK(std::isnan(fit.slope_minus));
    CHECK(fit.exponent == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("decay fit window validation") {
    Trajectory empty;
    CHECK_THROWS_AS((void)fit_decay(empty, 50.0, 0.1), std::invalid_argument);

    // horizon shorter than a decade past the window start
    const Trajectory shallow = synthetic_decay(1.0, 0.0, 10.0, 400.0, 80);
    CHECK_THROWS_AS((void)fit_decay(shallow, 50.0, 0.1), std::invalid_argument);

    // decade satisfied but too few tail samples
    const Trajectory sparse = synthetic_decay(1.0, 0.0, 50.0, 1000.0, 30);
    CHECK_THROWS_AS((void)fit_decay(sparse, 50.0, 0.1), std::invalid_argument);
}

TEST_CASE("classification by termination kind") {
    RunConfig cfg;

    Trajectory esc;
    esc.termination = Termination::Escaped;
    esc.t_escape = 7.5;
    esc.samples.push_back({7.5, 7.5, {2e3, 0.0}});
    const ClassificationRecord r1 = classify(esc, Family::TPrime, 1.2, cfg);
    CHECK(r1.outcome == Outcome::BlowUp);
    CHECK(r1.t_escape == 7.5);
    CHECK(!r1.has_fit);

    Trajectory fail;
    fail.termination = Termination::StepFailure;
    fail.samples.push_back({0.01, 1.0, {0.5, 0.5}});
    const ClassificationRecord r2 = classify(fail, Family::TPrime, 0.5, cfg);
    CHECK(r2.outcome == Outcome::Inconclusive);
    CHECK(!r2.note.empty());

    // reached the horizon pinned to a flat point: Flat
    Trajectory flat;
    flat.termination = Termination::ReachedTMax;
    for (int i = 0; i <= 10; ++i)
        flat.samples.push_back({0.01 + i, 1.0 + i, {1.0, 1.0}});
    const ClassificationRecord r3 = classify(flat, Family::TPrime, 1.0, cfg);
    CHECK(r3.outcome == Outcome::Flat);

    // reached the horizon away from any flat point: Inconclusive
    Trajectory wander = flat;
    wander.samples.back().s = {0.9, 0.9};
    const ClassificationRecord r4 = classify(wander, Family::TPrime, 1.0, cfg);
    CHECK(r4.outcome == Outcome::Inconclusive);

    // converged with a healthy tail: fit attached
    const Trajectory good = synthetic_decay(5.0, -3.0, 100.0, 1000.0, 60);
    const ClassificationRecord r5 = classify(good, Family::TPrime, 0.5, cfg);
    CHECK(r5.outcome == Outcome::ConvergesToNK);
    CHECK(r5.has_fit);
    CHECK(r5.mu == doctest::Approx(5.0).epsilon(1e-12));

    // converged but the horizon leaves no fit window: outcome survives, no fit
    const Trajectory short_tail = synthetic_decay(1.0, 0.5, 20.0, 300.0, 60);
    const ClassificationRecord r6 = classify(short_tail, Family::TPrime, 0.5, cfg);
    CHECK(r6.outcome == Outcome::ConvergesToNK);
    CHECK(!r6.has_fit);
    CHECK(!r6.note.empty());
}

TEST_CASE("end-to-end trichotomy on representative parameters") {
    RunConfig cfg;  // default horizon keeps a full decade past the fit window start

    const ClassificationRecord inner = classify_parameter(Family::TPrime, 0.4, cfg);
    CHECK(inner.outcome == Outcome::ConvergesToNK);
    REQUIRE(inner.has_fit);
    CHECK(inner.fitted_exponent > -2.05);
    CHECK(inner.fitted_exponent < -1.95);
    CHECK(inner.nu > 0.0);

    const ClassificationRecord wall = classify_parameter(Family::TPrime, 1.0, cfg);
    CHECK(wall.outcome == Outcome::Flat);

    const ClassificationRecord outer = classify_parameter(Family::TPrime, 1.2, cfg);
    CHECK(outer.outcome == Outcome::BlowUp);
    CHECK(std::isfinite(outer.t_escape));

    const ClassificationRecord abz = classify_parameter(Family::TGamma, 0.0, cfg);
    CHECK(abz.outcome == Outcome::Flat);

    const ClassificationRecord abneg = classify_parameter(Family::TGamma, -0.05, cfg);
    CHECK(abneg.outcome == Outcome::BlowUp);
    CHECK(abneg.t_escape < 20.0);

    const ClassificationRecord abpos = classify_parameter(Family::TGamma, 1.0, cfg);
    CHECK(abpos.outcome == Outcome::ConvergesToNK);
    REQUIRE(abpos.has_fit);
    CHECK(abpos.nu == 0.0);            // abelian members keep f_minus = 0
    CHECK(std::abs(abpos.mu) > 1e-4);  // decay coefficient genuinely nonzero
}

TEST_CASE("parameter reflection flips nu and keeps mu, bitwise") {
    RunConfig cfg;
    const ClassificationRecord up = classify_parameter(Family::TPrime, 0.7, cfg);
    const ClassificationRecord dn = classify_parameter(Family::TPrime, -0.7, cfg);
    CHECK(up.outcome == dn.outcome);
    REQUIRE(up.has_fit);
    REQUIRE(dn.has_fit);
    CHECK(bits(up.mu) == bits(dn.mu));
    CHECK(bits(up.nu) == bits(-dn.nu));
    CHECK(bits(up.fitted_exponent) == bits(dn.fitted_exponent));
}

TEST_CASE("scan orders records by parameter and validates its arguments") {
    RunConfig cfg;
    const auto recs = scan_family(Family::TPrime, -0.5, 0.5, 0.25, cfg);
    REQUIRE(recs.size() == 5);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].parameter == doctest::Approx(-0.5 + 0.25 * i).epsilon(1e-15));
        CHECK(recs[i].outcome == Outcome::ConvergesToNK);
        CHECK(recs[i].family == Family::TPrime);
    }
    CHECK_THROWS_AS((void)scan_family(Family::TPrime, 0.5, -0.5, 0.25, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)scan_family(Family::TPrime, -0.5, 0.5, 0.0, cfg),
                    std::invalid_argument);
}

TEST_CASE("boundary bisection brackets the wall of the deformed family") {
    RunConfig cfg;
    const BoundaryResult res = locate_boundary(Family::TPrime, 0.5, 1.5, 1e-2, cfg);
    CHECK(res.bracket_hi - res.bracket_lo <= 1e-2);
    CHECK(std::abs(res.gamma_crit - 1.0) <= 1e-2);
    CHECK(res.probes.size() >= 8);
    // endpoint probes recorded first, opposite classifications
    CHECK(res.probes[0].parameter == 0.5);
    CHECK(res.probes[1].parameter == 1.5);
    CHECK(res.probes[0].outcome == Outcome::ConvergesToNK);
    CHECK(res.probes[1].outcome == Outcome::BlowUp);
}

TEST_CASE("boundary bisection validates bracket and orientation") {
    RunConfig cfg;
    CHECK_THROWS_AS((void)locate_boundary(Family::TPrime, 1.5, 0.5, 1e-2, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)locate_boundary(Family::TPrime, 0.5, 1.5, 0.0, cfg),
                    std::invalid_argument);
    // both endpoints on the same side of the wall
    CHECK_THROWS_AS((void)locate_boundary(Family::TPrime, 0.2, 0.4, 1e-2, cfg),
                    std::invalid_argument);
}

TEST_CASE("straight-line conical solution and its rotated images") {
    const InstantonState mid = cone_line_solution(1.0);
    CHECK(mid.f_plus == 0.5);
    CHECK(mid.f_minus == 0.0);
    CHECK(cone_line_solution(0.0).f_plus == 0.0);
    CHECK(cone_line_solution(1e8).f_plus == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // each image satisfies the conical system: compare the analytic velocity
    // against the rhs evaluated on the image
    for (int k = 0; k < 3; ++k) {
        for (double t : {0.05, 0.3, 1.0, 4.0, 50.0}) {
            const InstantonState s = cone_line_image(t, k);
            const InstantonState v = cone_line_image_velocity(t, k);
            const InstantonState f = rhs_cone(t, s);
            CHECK(std::abs(v.f_plus - f.f_plus) < 1e-12);
            CHECK(std::abs(v.f_minus - f.f_minus) < 1e-12);
        }
    }
    CHECK_THROWS_AS((void)cone_line_image(1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)cone_line_image(1.0, -1), std::invalid_argument);
    CHECK_THROWS_AS((void)cone_line_image_velocity(1.0, 5), std::invalid_argument);
}

TEST_CASE("deformation index by decay weight") {
    CHECK(index_lookup(-1.0) == 1);
    CHECK(index_lookup(-0.5) == 1);
    CHECK(index_lookup(-3.0) == -1);
    CHECK(index_lookup(-3.9) == -1);
    CHECK_THROWS_AS((void)index_lookup(-2.0), std::domain_error);
    CHECK_THROWS_AS((void)index_lookup(0.0), std::domain_error);
    CHECK_THROWS_AS((void)index_lookup(-4.0), std::domain_error);
    CHECK_THROWS_AS((void)index_lookup(0.5), std::domain_error);
    CHECK_THROWS_AS((void)index_lookup(-4.5), std::domain_error);

    const auto table = index_table();
    CHECK(table[0].lo == -4.0);
    CHECK(table[0].hi == -2.0);
    CHECK(table[0].index == -1);
    CHECK(table[1].lo == -2.0);
    CHECK(table[1].hi == 0.0);
    CHECK(table[1].index == 1);
}

TEST_CASE("outcome names are stable") {
    CHECK(std::string(outcome_name(Outcome::Flat)) == "Flat");
    CHECK(std::string(outcome_name(Outcome::ConvergesToNK)) == "ConvergesToNK");
    CHECK(std::string(outcome_name(Outcome::BlowUp)) == "BlowUp");
    CHECK(std::string(outcome_name(Outcome::Inconclusive)) == "Inconclusive");
}
