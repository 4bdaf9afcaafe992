#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "twoq/measures.hpp"

using namespace twoq;

namespace {

constexpr double kPi4 = 0.78539816339744830961;

DensityMatrix pure_state(double alpha) {
    FamilyParams p;
    p.family = Family::Pure;
    p.alpha = alpha;
    return make_state(p);
}

DensityMatrix werner_state(double pw) {
    FamilyParams p;
    p.family = Family::Werner;
    p.p = pw;
    return make_state(p);
}

DensityMatrix mems_state(double pm) {
    FamilyParams p;
    p.family = Family::Mems2;
    p.p = pm;
    return make_state(p);
}

DensityMatrix as1_state(double pa) {
    FamilyParams p;
    p.family = Family::As1;
    p.p = pa;
    return make_state(p);
}

const DensityMatrix kMaxMixed(0.25 * ComplexMatrix::identity(4));

// entropy targets solved on closed-form spectra with the test-side bisector
const double kWernerPAtS06 = oracles::bisect(oracles::werner_entropy, 0.0, 1.0, 0.6);
const double kMemsPAtS06 = oracles::bisect(oracles::binary_entropy, 1.0, 2.0 / 3.0, 0.6);

}  // namespace

TEST_CASE("von Neumann entropy basics") {
    for (double alpha : {0.0, 0.2, kPi4})
        CHECK(std::abs(von_neumann_entropy(pure_state(alpha))) <= 1e-10);
    for (int k = 0; k < 50; ++k)
        CHECK(std::abs(von_neumann_entropy(sample_random_state(1, derive_seed(1, k)))) <=
              1e-10);

    CHECK(von_neumann_entropy(kMaxMixed) == doctest::Approx(2.0).epsilon(1e-12));

    // -(1/2)log2(1/2) - 3*(1/6)log2(1/6), evaluated directly
    const double expected = 0.5 + 0.5 * std::log2(6.0);
    CHECK(expected == doctest::Approx(1.792481250360578).epsilon(1e-15));
    CHECK(von_neumann_entropy(werner_state(1.0 / 3.0)) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("entropy eigenvalue clamping and rejection") {
    ComplexMatrix ok(4);
    ok(0, 0) = 1.0 + 5e-10;
    ok(1, 1) = -5e-10;  // inside the clamp window
    CHECK(std::abs(von_neumann_entropy(DensityMatrix(ok))) <= 1e-7);

    ComplexMatrix bad(4);
    bad(0, 0) = 1.0 + 1e-8;
    bad(1, 1) = -1e-8;  // below the -1e-9 floor
    CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix(bad)), InvalidState);

    CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix(0.3 * ComplexMatrix::identity(4))),
                    InvalidState);  // trace off
}

TEST_CASE("von Neumann budget examples") {
    const InfoBudget bell = info_budget_vn(pure_state(kPi4));
    CHECK(std::abs(bell.i_a) <= 1e-12);
    CHECK(std::abs(bell.i_b) <= 1e-12);
    CHECK(bell.i_corr == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bell.i_total == doctest::Approx(2.0).epsilon(1e-12));

    const InfoBudget prod = info_budget_vn(as1_state(1.0));  // pure product |00>
    CHECK(prod.i_a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prod.i_b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(prod.i_corr) <= 1e-12);
    CHECK(prod.i_total == doctest::Approx(2.0).epsilon(1e-12));

    // Werner at joint entropy 0.6: everything sits in correlations
    const InfoBudget w = info_budget_vn(werner_state(kWernerPAtS06));
    CHECK(std::abs(w.i_a) <= 1e-12);
    CHECK(std::abs(w.i_b) <= 1e-12);
    CHECK(w.i_corr == doctest::Approx(1.4).epsilon(1e-9));
    CHECK(w.i_total == doctest::Approx(1.4).epsilon(1e-9));
}

TEST_CASE("linear information examples") {
    ComplexMatrix plus(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) plus(i, j) = 0.5;
    CHECK(linear_information(DensityMatrix(plus)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(linear_information(kMaxMixed)) <= 1e-12);
    for (int k = 0; k <= 20; ++k)
        CHECK(linear_information(pure_state(kPi4 * k / 20.0)) ==
              doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("linear budget closed form for the dephased-product family") {
    for (int k = 0; k <= 100; ++k) {
        const double p = k / 100.0;
        const InfoBudget b = info_budget_linear(as1_state(p));
        CHECK(std::abs(b.i_corr - (p * p - 1.0) / 3.0) <= 1e-9);
    }
    const InfoBudget at0 = info_budget_linear(as1_state(0.0));
    CHECK(at0.i_corr == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

    const InfoBudget bell = info_budget_linear(pure_state(kPi4));
    CHECK(std::abs(bell.i_local) <= 1e-12);
    CHECK(bell.i_corr == doctest::Approx(2.0).epsilon(1e-12));

    const InfoBudget prod = info_budget_linear(pure_state(0.0));
    CHECK(std::abs(prod.i_corr) <= 1e-12);
}

TEST_CASE("concurrence closed forms") {
    for (int k = 0; k <= 100; ++k) {
        const double alpha = kPi4 * k / 100.0;
        CHECK(std::abs(concurrence(pure_state(alpha)) - std::sin(2.0 * alpha)) <= 1e-9);
    }
    for (int k = 0; k <= 100; ++k) {
        const double p = k / 100.0;
        CHECK(std::abs(concurrence(werner_state(p)) -
                       std::max(0.0, (3.0 * p - 1.0) / 2.0)) <= 1e-9);
    }
    // product states are separable
    for (double p : {0.0, 0.4, 1.0}) CHECK(concurrence(as1_state(p)) == 0.0);
}

TEST_CASE("concurrence cross-checked against the rho rho_tilde spectrum") {
    // rank-2 family: spectrum of rho*rho_tilde deflates to a quadratic
    for (int k = 0; k <= 30; ++k) {
        const double p = 2.0 / 3.0 + k / 90.0;
        const DensityMatrix rho = mems_state(p);
        CHECK(std::abs(concurrence(rho) - oracles::brute_concurrence(rho.mat)) <= 1e-8);
        CHECK(std::abs(tangle(rho) - p * p) <= 1e-9);
    }
    // generic mixed states; the root-finding oracle is good to ~1e-6 when
    // the product spectrum has near-degenerate small roots
    for (int k = 0; k < 300; ++k) {
        const DensityMatrix rho = sample_random_state(2 + k % 3, derive_seed(23, k));
        CHECK(std::abs(concurrence(rho) - oracles::brute_concurrence(rho.mat)) <= 1e-6);
    }
}

TEST_CASE("wootters equals the pure-state overlap formula") {
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    for (int k = 0; k < 1000; ++k) {
        SplitMix64 rng(derive_seed(31, k));
        const std::vector<complexd> psi = oracles::random_pure4(rng);
        std::vector<complexd> psi_conj(4);
        for (int i = 0; i < 4; ++i) psi_conj[i] = std::conj(psi[i]);
        const double overlap = std::abs(inner(psi, matvec(yy, psi_conj)));
        CHECK(std::abs(concurrence(DensityMatrix(outer(psi).hermitized())) - overlap) <=
              1e-9);
    }
}

TEST_CASE("tangle anchors") {
    FamilyParams d;
    d.family = Family::D;
    d.gamma = 0.0;
    CHECK(tangle(make_state(d)) == doctest::Approx(1.0).epsilon(1e-12));  // singlet

    // Werner at joint entropy 0.6, p and tangle frozen from the
    // closed-form spectrum oracle
    CHECK(kWernerPAtS06 == doctest::Approx(0.874300777311647).epsilon(1e-12));
    CHECK(tangle(werner_state(kWernerPAtS06)) ==
          doctest::Approx(0.658452994749968).epsilon(1e-9));
}

TEST_CASE("bloch vector examples") {
    ComplexMatrix zero(2);
    zero(0, 0) = 1.0;
    const BlochVector v0 = bloch(DensityMatrix(zero));
    CHECK(v0.x == 0.0);
    CHECK(v0.y == 0.0);
    CHECK(v0.z == doctest::Approx(1.0));

    const BlochVector vm = bloch(DensityMatrix(0.5 * ComplexMatrix::identity(2)));
    CHECK(vm.length_sq() <= 1e-30);

    ComplexMatrix half(2);
    half(0, 0) = 0.75;  // 0.5|0><0| + 0.25 I
    half(1, 1) = 0.25;
    const BlochVector vh = bloch(DensityMatrix(half));
    CHECK(vh.z == doctest::Approx(0.5).epsilon(1e-14));

    // reconstruction rho = (I + x sx + y sy + z sz)/2
    const DensityMatrix rho(partial_trace(sample_random_state(2, 8).mat, Subsystem::A));
    const BlochVector v = bloch(rho);
    ComplexMatrix re = ComplexMatrix::identity(2);
    re += v.x * pauli_x();
    re += v.y * pauli_y();
    re += v.z * pauli_z();
    re *= complexd(0.5, 0.0);
    CHECK(re.max_abs_diff(rho.mat) <= 1e-12);
}

TEST_CASE("visibility and predictability") {
    ComplexMatrix zero(2);
    zero(0, 0) = 1.0;
    const auto vp0 = visibility_predictability(DensityMatrix(zero));
    CHECK(vp0.visibility == 0.0);
    CHECK(vp0.predictability == doctest::Approx(1.0));

    ComplexMatrix plus(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) plus(i, j) = 0.5;
    const auto vpp = visibility_predictability(DensityMatrix(plus));
    CHECK(vpp.visibility == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vpp.predictability <= 1e-12);

    for (int k = 0; k <= 20; ++k) {
        const double alpha = kPi4 * k / 20.0;
        const DensityMatrix marg(partial_trace(pure_state(alpha).mat, Subsystem::A));
        const auto vp = visibility_predictability(marg);
        CHECK(vp.visibility <= 1e-12);  // Schmidt marginal is diagonal
        CHECK(vp.predictability ==
              doctest::Approx(std::abs(std::cos(2.0 * alpha))).epsilon(1e-11));
    }
}

TEST_CASE("triality ledger anchors") {
    for (int k = 0; k <= 100; ++k) {
        const DualityLedger l = triality_ledger(pure_state(kPi4 * k / 100.0),
                                                k % 2 ? Subsystem::A : Subsystem::B);
        CHECK(std::abs(l.lhs_triality - 1.0) <= 1e-9);
    }
    CHECK(triality_ledger(werner_state(0.5), Subsystem::A).lhs_triality ==
          doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(triality_ledger(kMaxMixed, Subsystem::A).lhs_triality <= 1e-15);
}

TEST_CASE("purity") {
    CHECK(purity(pure_state(0.37)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(purity(kMaxMixed) == doctest::Approx(0.25).epsilon(1e-14));
    for (int k = 0; k <= 20; ++k) {
        const double p = k / 20.0;
        CHECK(purity(werner_state(p)) ==
              doctest::Approx((1.0 + 3.0 * p * p) / 4.0).epsilon(1e-13));
    }
}

TEST_CASE("budget additivity and mutual-information non-negativity") {
    for (int k = 0; k < 2000; ++k) {
        const DensityMatrix rho = sample_random_state(1 + k % 4, derive_seed(41, k));
        const InfoBudget b = info_budget_vn(rho);
        CHECK(std::abs(b.i_local + b.i_corr - b.i_total) <= 1e-10);
        CHECK(b.i_corr >= -1e-10);
        CHECK(std::abs(b.i_local - (b.i_a + b.i_b)) <= 1e-10);
    }
}

TEST_CASE("pure-state correlation information equals twice the marginal entropy") {
    for (int k = 0; k <= 100; ++k) {
        const DensityMatrix rho = pure_state(kPi4 * k / 100.0);
        const InfoBudget b = info_budget_vn(rho);
        const double s_a =
            von_neumann_entropy(DensityMatrix(partial_trace(rho.mat, Subsystem::A)));
        CHECK(std::abs(b.i_corr - 2.0 * s_a) <= 1e-9);
        CHECK(std::abs(b.i_a - b.i_b) <= 1e-9);
        CHECK(std::abs(b.i_total - 2.0) <= 1e-9);
    }
}

TEST_CASE("linear ledger matches the local and correlation trade-off on pure states") {
    for (int k = 0; k <= 100; ++k) {
        const DensityMatrix rho = pure_state(kPi4 * k / 100.0);
        const InfoBudget b = info_budget_linear(rho);
        const DualityLedger l = triality_ledger(rho, Subsystem::A);
        CHECK(std::abs(b.i_local - 2.0 * l.lhs_duality) <= 1e-9);
        CHECK(std::abs(b.i_corr - 2.0 * l.concurrence * l.concurrence) <= 1e-9);
    }
}

TEST_CASE("triality and duality bounds on random states") {
    for (int k = 0; k < 10000; ++k) {
        const DensityMatrix rho = sample_random_state(1 + k % 4, derive_seed(43, k));
        const DualityLedger l = triality_ledger(rho, k % 2 ? Subsystem::A : Subsystem::B);
        CHECK(l.lhs_triality <= 1.0 + 1e-9);
        CHECK(l.lhs_duality <= 1.0 + 1e-9);
        const BlochVector v =
            bloch(DensityMatrix(partial_trace(rho.mat, Subsystem::A)));
        CHECK(v.length_sq() <= 1.0 + 1e-9);
    }
}

TEST_CASE("more entanglement can come with fewer correlations") {
    // at matched joint entropy 0.6 the rank-2 entangled mixed state beats
    // the isotropic-noise state in tangle but loses in i_corr
    CHECK(kMemsPAtS06 == doctest::Approx(0.853897596588113).epsilon(1e-12));
    const DensityMatrix rw = werner_state(kWernerPAtS06);
    const DensityMatrix rm = mems_state(kMemsPAtS06);
    CHECK(tangle(rm) == doctest::Approx(0.729141105458956).epsilon(1e-9));
    CHECK(info_budget_vn(rm).i_corr == doctest::Approx(1.369093851722094).epsilon(1e-9));

    const double margin_t = tangle(rm) - tangle(rw);
    const double margin_i = info_budget_vn(rw).i_corr - info_budget_vn(rm).i_corr;
    CHECK(margin_t > 1e-3);
    CHECK(margin_i > 1e-3);
}

TEST_CASE("local unitary invariance of the entanglement and information measures") {
    for (int k = 0; k < 100; ++k) {
        SplitMix64 rng(derive_seed(47, k));
        const DensityMatrix rho = sample_random_state(1 + k % 4, rng.next_u64());
        const ComplexMatrix u =
            kron(oracles::random_unitary2(rng), oracles::random_unitary2(rng));
        const DensityMatrix rot((u * rho.mat * u.adjoint()).hermitized());

        CHECK(std::abs(concurrence(rho) - concurrence(rot)) <= 1e-9);
        CHECK(std::abs(tangle(rho) - tangle(rot)) <= 1e-9);
        const InfoBudget b0 = info_budget_vn(rho);
        const InfoBudget b1 = info_budget_vn(rot);
        CHECK(std::abs(b0.i_a - b1.i_a) <= 1e-9);
        CHECK(std::abs(b0.i_b - b1.i_b) <= 1e-9);
        CHECK(std::abs(b0.i_corr - b1.i_corr) <= 1e-9);
        CHECK(std::abs(b0.i_total - b1.i_total) <= 1e-9);
    }
}

TEST_CASE("invalid states are rejected across measures") {
    ComplexMatrix bad(4);
    bad(0, 0) = 1.1;
    bad(1, 1) = -0.1;
    const DensityMatrix dm(bad);
    CHECK_THROWS_AS(von_neumann_entropy(dm), InvalidState);
    CHECK_THROWS_AS(info_budget_vn(dm), InvalidState);
    CHECK_THROWS_AS(concurrence(dm), InvalidState);
    CHECK_THROWS_AS(linear_information(dm), InvalidState);

    ComplexMatrix nonherm(2);
    nonherm(0, 0) = 0.5;
    nonherm(1, 1) = 0.5;
    nonherm(0, 1) = complexd(0.0, 0.3);
    nonherm(1, 0) = complexd(0.0, 0.3);  // should be -0.3i
    CHECK_THROWS_AS(bloch(DensityMatrix(nonherm)), InvalidState);
}
