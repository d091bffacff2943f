#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cbath/bath_oracle.hpp"
#include "cbath/errors.hpp"
#include "cbath/model.hpp"

using namespace cbath;

namespace {

const ReservoirSpec kWeak{0.05, 1.0, 5.0};

double sup_distance_to_closed_form(const AmplitudeTrace& oracle, const ReservoirSpec& spec,
                                   const EnsembleSpec& ens) {
    double worst = 0.0;
    for (int i = 0; i < oracle.grid.size(); ++i) {
        const double exact = std::abs(amplitude_closed_form(spec, ens, oracle.grid.time(i)));
        worst = std::max(worst, std::abs(oracle.values[static_cast<std::size_t>(i)] - exact));
    }
    return worst;
}

}  // namespace

TEST_CASE("bath discretization validation and weights") {
    CHECK_THROWS_AS(discretize_bath(kWeak, 1, 50.0), std::invalid_argument);
    CHECK_THROWS_AS(discretize_bath(kWeak, 100, 0.0), std::invalid_argument);

    const DiscretizedBath bath = discretize_bath(kWeak, 4000, 50.0);
    CHECK(bath.mode_freqs.size() == 4000);
    for (std::size_t k = 1; k < bath.mode_freqs.size(); ++k)
        CHECK(bath.mode_freqs[k] > bath.mode_freqs[k - 1]);
    for (double g : bath.couplings) CHECK(g >= 0.0);

    // sum g_k^2 equals the analytic window integral of J
    const double analytic =
        0.5 * kWeak.gamma0 * (2.0 / std::numbers::pi) * std::atan(50.0);
    CHECK(std::abs(bath.coupling_weight() - analytic) < 1e-9);
    CHECK(bath.coupling_weight() / (0.5 * kWeak.gamma0) == doctest::Approx(0.9873).epsilon(1e-3));

    // Riemann refinement: doubling M barely moves the weight
    const DiscretizedBath fine = discretize_bath(kWeak, 8000, 50.0);
    CHECK(std::abs(fine.coupling_weight() - bath.coupling_weight()) / bath.coupling_weight() < 1e-6);
}

TEST_CASE("bath oracle: zero couplings freeze the qubits") {
    DiscretizedBath bath = discretize_bath(kWeak, 100, 10.0);
    for (double& g : bath.couplings) g = 0.0;
    const TimeGrid grid{0.0, 5.0, 50};
    const AmplitudeTrace trace = evolve_single_excitation(bath, EnsembleSpec{3}, grid, 1e-2);
    for (double v : trace.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bath oracle matches the closed form in the weak regime") {
    const DiscretizedBath bath = discretize_bath(kWeak, 4000, 50.0);
    const TimeGrid grid{0.0, 10.0, 100};
    BathRunDiagnostics diag;

    const EnsembleSpec one{1};
    const AmplitudeTrace n1 = evolve_single_excitation(bath, one, grid, 5e-4,
                                                       BathInitialCondition::SymmetricShared, &diag);
    CHECK(sup_distance_to_closed_form(n1, kWeak, one) < 1e-2);
    CHECK(diag.max_norm_drift < 1e-8);

    const EnsembleSpec four{4};
    const AmplitudeTrace n4 = evolve_single_excitation(bath, four, grid, 5e-4,
                                                       BathInitialCondition::SymmetricShared, &diag);
    CHECK(sup_distance_to_closed_form(n4, kWeak, four) < 1e-2);
    CHECK(diag.max_norm_drift < 1e-8);
    CHECK(diag.max_symmetry_spread < 1e-10);
}

TEST_CASE("bath oracle: symmetric and watched initial conditions agree") {
    const DiscretizedBath bath = discretize_bath(kWeak, 1000, 25.0);
    const TimeGrid grid{0.0, 5.0, 50};
    const EnsembleSpec ens{4};
    const AmplitudeTrace sym =
        evolve_single_excitation(bath, ens, grid, 1e-3, BathInitialCondition::SymmetricShared);
    const AmplitudeTrace watched =
        evolve_single_excitation(bath, ens, grid, 1e-3, BathInitialCondition::WatchedExcited);
    for (std::size_t i = 0; i < sym.values.size(); ++i)
        CHECK(sym.values[i] == doctest::Approx(watched.values[i]).epsilon(1e-9));
}

TEST_CASE("bath oracle: refinement schedule converges monotonically") {
    const EnsembleSpec ens{2};
    const TimeGrid grid{0.0, 6.0, 60};
    const double err_coarse = sup_distance_to_closed_form(
        evolve_single_excitation(discretize_bath(kWeak, 1000, 25.0), ens, grid, 1e-3), kWeak, ens);
    const double err_mid = sup_distance_to_closed_form(
        evolve_single_excitation(discretize_bath(kWeak, 4000, 50.0), ens, grid, 5e-4), kWeak, ens);
    const double err_fine = sup_distance_to_closed_form(
        evolve_single_excitation(discretize_bath(kWeak, 16000, 100.0), ens, grid, 2.5e-4), kWeak,
        ens);
    CHECK(err_coarse > err_mid);
    CHECK(err_mid > err_fine);
}

TEST_CASE("bath oracle: horizon beyond half the recurrence time is rejected") {
    const DiscretizedBath bath = discretize_bath(kWeak, 100, 5.0);  // d_omega = 0.1
    const TimeGrid grid{0.0, 40.0, 100};                            // > pi / 0.1
    CHECK_THROWS_AS(evolve_single_excitation(bath, EnsembleSpec{1}, grid, 1e-3),
                    std::invalid_argument);
}

TEST_CASE("bath oracle: gross steps trip the norm guard") {
    const ReservoirSpec strong{10.0, 1.0, 5.0};
    const DiscretizedBath bath = discretize_bath(strong, 2000, 50.0);
    const TimeGrid grid{0.0, 10.0, 20};
    CHECK_THROWS_AS(evolve_single_excitation(bath, EnsembleSpec{1}, grid, 0.5), NumericalError);
}

TEST_CASE("single excitation state norm") {
    SingleExcitationState state;
    state.qubit_amps = {{0.6, 0.0}};
    state.mode_amps = {{0.0, 0.8}};
    CHECK(state.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
}
