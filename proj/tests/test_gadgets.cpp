#include <cmath>

#include "doctest.h"
#include "gadsim/gadgets.hpp"
#include "gadsim/pauli.hpp"
#include "test_helpers.hpp"

using namespace gadsim;
using gadsim::testing::random_hermitian;
using gadsim::testing::rng;

namespace {

CMatrix random_bounded_qubit(std::mt19937_64& gen) {
    CMatrix h = random_hermitian(gen, 2, 1.0);
    const double nrm = op_norm(h);
    if (nrm > 1.0) h *= cplx(1.0 / nrm, 0.0);
    return h;
}

}  // namespace

TEST_CASE("three_to_two: ladder is strictly 2-local with degree 3") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_x(), pauli_z());
    CHECK(spec.ctx->degree() == 3);
    for (const auto& h : spec.ctx->ladder())
        for (const auto& t : h.terms()) CHECK(t.support.size() <= 2);
    CHECK(locality_floor(3, 2) == 2);
    CHECK(locality_floor(3, 2) <= spec.ctx->degree());
}

TEST_CASE("three_to_two: Z,Z,Z validates with target ZZZ") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    ValidationReport rep = validate(spec, 3);
    CHECK(rep.is_gadget);
    for (double blk : rep.low_order_block_norms) CHECK(blk <= 1e-9);
    const CMatrix zzz = kron(kron(pauli_z(), pauli_z()), pauli_z());
    CHECK(op_norm(rep.h_tar_computed.assemble() - zzz) <= 1e-8);
    CHECK(rep.target_mismatch <= 1e-8);
    CHECK(rep.eta < 1.0);
}

TEST_CASE("three_to_two: identity inputs validate trivially") {
    GadgetSpec spec = three_to_two(pauli_i(), pauli_i(), pauli_i());
    ValidationReport rep = validate(spec, 3);
    CHECK(rep.is_gadget);
    CHECK(op_norm(rep.h_tar_computed.assemble() - CMatrix::identity(8)) <= 1e-8);
}

TEST_CASE("three_to_two: random bounded triples validate") {
    auto gen = rng(111);
    for (int rep_i = 0; rep_i < 3; ++rep_i) {
        CMatrix h1 = random_bounded_qubit(gen);
        CMatrix h2 = random_bounded_qubit(gen);
        CMatrix h3 = random_bounded_qubit(gen);
        GadgetSpec spec = three_to_two(h1, h2, h3);
        ValidationReport rep = validate(spec, 3);
        CHECK(rep.is_gadget);
        CHECK(rep.target_mismatch <= 1e-8);
    }
}

TEST_CASE("three_to_two rejects non-Hermitian inputs") {
    CMatrix bad(2, 2);
    bad(0, 1) = 1.0;  // |0><1| alone
    CHECK_THROWS_AS(three_to_two(bad, pauli_z(), pauli_z()), NonHermitian);
}

TEST_CASE("validate: degree-2 ancilla-flip gadget against second-order formula") {
    // H^(1) = w (X_eff (x) X_anc) flips the ancilla; H^(2) = g Z_eff.
    Lattice l = Lattice::from_edges(2, {{0, 1}}, 1);
    const double w = 0.6, g = 0.45;
    LocalHamiltonian h1{l}, h2{l};
    h1.add_term({0, 1}, w * kron(pauli_x(), pauli_x()));
    h2.add_term({0}, g * pauli_z());
    auto ctx = std::make_shared<SWContext>(l, std::vector<int>{1}, 1.0,
                                           std::vector<LocalHamiltonian>{h1, h2},
                                           FFunction::exp_weighted(1, 1.0));
    GadgetSpec spec{ctx, std::nullopt};
    ValidationReport rep = validate(spec, 2);
    CHECK(rep.is_gadget);

    // Second order: H_tar = <0| H^(2) |0> - (1/Delta) <0| W Q W |0> with
    // W = H^(1); here W Q W = w^2 X_eff^2 (x) |1><1| -> -w^2 on the block.
    const CMatrix want = g * pauli_z() - (w * w) * CMatrix::identity(2);
    CHECK(op_norm(rep.h_tar_computed.assemble() - want) <= 1e-9);
}

TEST_CASE("validate: block-diagonal first order disqualifies a degree-2 ladder") {
    Lattice l = Lattice::from_edges(2, {{0, 1}}, 1);
    LocalHamiltonian h1{l}, h2{l};
    h1.add_term({0}, 0.5 * pauli_z());  // nonzero P0 block at first order
    h2.add_term({0}, pauli_x());
    auto ctx = std::make_shared<SWContext>(l, std::vector<int>{1}, 1.0,
                                           std::vector<LocalHamiltonian>{h1, h2},
                                           FFunction::exp_weighted(1, 1.0));
    ValidationReport rep = validate(GadgetSpec{ctx, std::nullopt}, 2);
    CHECK_FALSE(rep.is_gadget);
    CHECK(rep.low_order_block_norms[0] > 1e-3);
}

TEST_CASE("combine: single gadget with empty background is unchanged") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    GadgetSpec same = combine({spec});
    CHECK(op_norm(same.ctx->h_dense(0.3) - spec.ctx->h_dense(0.3)) <= 1e-12);
    CHECK(op_norm(same.target->assemble() - spec.target->assemble()) <= 1e-12);
}

TEST_CASE("combine: two overlapping gadgets reproduce the sum of targets") {
    auto gen = rng(112);
    Lattice lattice = chain_with_ancillas(4, {{{0, 1, 2}}, {{1, 2, 3}}});
    CMatrix a1 = random_bounded_qubit(gen), a2 = random_bounded_qubit(gen),
            a3 = random_bounded_qubit(gen);
    CMatrix b1 = random_bounded_qubit(gen), b2 = random_bounded_qubit(gen),
            b3 = random_bounded_qubit(gen);
    GadgetSpec g1 = three_to_two_on(lattice, {0, 1, 2}, 4, a1, a2, a3);
    GadgetSpec g2 = three_to_two_on(lattice, {1, 2, 3}, 5, b1, b2, b3);
    GadgetSpec both = combine({g1, g2});

    ValidationReport rep = validate(both, 3);
    CHECK(rep.is_gadget);
    CHECK(op_norm(rep.h_tar_computed.assemble() - both.target->assemble()) <= 1e-8);

    // The claimed target is the sum of the individual ones.
    const auto dims = both.ctx->eff_lattice().dims();
    CMatrix want = embed(kron(kron(a1, a2), a3), {0, 1, 2}, dims) +
                   embed(kron(kron(b1, b2), b3), {1, 2, 3}, dims);
    CHECK(op_norm(both.target->assemble() - want) <= 1e-10);
}

TEST_CASE("combine: background enters the target exactly") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    LocalHamiltonian bg{spec.ctx->eff_lattice()};
    bg.add_term({0, 1}, 0.7 * kron(pauli_z(), pauli_z()));
    bg.add_term({2}, -0.3 * pauli_x());
    GadgetSpec with_bg = combine({spec}, bg);

    ValidationReport rep = validate(with_bg, 3);
    CHECK(rep.is_gadget);
    const CMatrix zzz = kron(kron(pauli_z(), pauli_z()), pauli_z());
    CHECK(op_norm(rep.h_tar_computed.assemble() - (zzz + bg.assemble())) <= 1e-8);
}

TEST_CASE("combine: ancilla collision and high degree are rejected") {
    Lattice lattice = chain_with_ancillas(4, {{{0, 1, 2}}, {{1, 2, 3}}});
    GadgetSpec g1 = three_to_two_on(lattice, {0, 1, 2}, 4, pauli_z(), pauli_z(), pauli_z());
    CHECK_THROWS_AS(combine({g1, g1}), AncillaCollision);
}

TEST_CASE("locality_floor arithmetic") {
    CHECK(locality_floor(3, 2) == 2);
    CHECK(locality_floor(2, 2) == 1);
    CHECK(locality_floor(7, 3) == 3);
    CHECK_THROWS_AS(locality_floor(3, 1), InvalidArity);
}

TEST_CASE("simulator_eval: x = 1 is the plain ladder sum") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    SimulatorEval ev = simulator_eval(spec, 1.0);
    CHECK(op_norm(ev.matrix - spec.ctx->h_dense(1.0)) <= 1e-12);
    CHECK(ev.max_interaction == doctest::Approx(1.0));
    CHECK_THROWS_AS(simulator_eval(spec, 0.0), NonPositiveX);
    CHECK_THROWS_AS(simulator_eval(spec, -0.2), NonPositiveX);

    SimulatorEval at_xstar = simulator_eval(spec, spec.ctx->x_star());
    CHECK(std::isfinite(op_norm(at_xstar.matrix)));
}

TEST_CASE("simulator spectrum: bounded below by the ladder norm") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_x(), pauli_z());
    const double x = 0.05;
    SimulatorEval ev = simulator_eval(spec, x);
    EigDecomp ed = herm_eig(ev.matrix);
    // H'(x) >= -|| sum x^{alpha-d} H^(alpha) ||.
    CMatrix tail(ev.matrix.rows(), ev.matrix.cols());
    for (int alpha = 1; alpha <= spec.ctx->degree(); ++alpha)
        tail += std::pow(x, double(alpha - spec.ctx->degree())) *
                spec.ctx->h_alpha(alpha).assemble();
    CHECK(ed.values.front() >= -op_norm(tail) - 1e-9);
}

TEST_CASE("simulator spectrum converges to the target spectrum linearly in x") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    ValidationReport rep = validate(spec, 3);
    EigDecomp tar = herm_eig(rep.h_tar_computed.assemble());

    std::vector<double> errs;
    for (double frac : {0.2, 0.1, 0.05}) {
        const double x = frac * spec.ctx->x_ref();
        const auto low = simulator_low_spectrum(spec, x);
        double worst = 0.0;
        for (std::size_t k = 0; k < low.size(); ++k)
            worst = std::max(worst, std::abs(low[k] - tar.values[k]));
        errs.push_back(worst);
    }
    CHECK(errs[0] > errs[1]);
    CHECK(errs[1] > errs[2]);
    // Consistent with a linear-or-better trend.
    CHECK(errs[0] / errs[1] >= 1.6);
    CHECK(errs[1] / errs[2] >= 1.6);
    // And the fitted slope C = err/x stays bounded.
    CHECK(errs[0] <= 10.0 * 0.2 * spec.ctx->x_ref() *
                         (1.0 + op_norm(rep.h_tar_computed.assemble())));
}

TEST_CASE("combine rejects gadget degrees above three") {
    Lattice l = Lattice::from_edges(2, {{0, 1}}, 1);
    std::vector<LocalHamiltonian> ladder;
    for (int alpha = 1; alpha <= 4; ++alpha) {
        LocalHamiltonian h{l};
        h.add_term({0, 1}, 0.1 * kron(pauli_x(), pauli_x()));
        ladder.push_back(h);
    }
    auto ctx = std::make_shared<SWContext>(l, std::vector<int>{1}, 1.0, ladder,
                                           FFunction::exp_weighted(1, 1.0));
    CHECK_THROWS_AS(combine({GadgetSpec{ctx, std::nullopt}}), DegreeTooHigh);
}
