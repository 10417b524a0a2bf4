#include <cmath>

#include "doctest.h"
#include "gadsim/expm.hpp"
#include "gadsim/gadgets.hpp"
#include "gadsim/pauli.hpp"
#include "gadsim/sw.hpp"
#include "gadsim/tensor.hpp"
#include "test_helpers.hpp"

using namespace gadsim;
using gadsim::testing::random_hermitian;
using gadsim::testing::rng;

namespace {

// 1 effective + n_anc ancilla qubits, all mutually adjacent.
SWContext simple_context(int n_anc, std::vector<LocalHamiltonian> ladder, double delta = 1.0) {
    std::vector<std::pair<int, int>> edges;
    const int n = 1 + n_anc;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    Lattice l = Lattice::from_edges(n, edges, 1);
    std::vector<int> anc;
    for (int a = 1; a <= n_anc; ++a) anc.push_back(a);
    return SWContext(l, anc, delta, std::move(ladder), FFunction::exp_weighted(1, 1.0));
}

}  // namespace

TEST_CASE("projectors: no ancillas in the support gives P = I") {
    LocalHamiltonian empty_ladder{Lattice::chain(2)};
    SWContext ctx = simple_context(1, {LocalHamiltonian{Lattice::from_edges(2, {{0, 1}}, 1)}});
    auto [p, q] = projectors(ctx, {0});
    CHECK(op_norm(p - CMatrix::identity(2)) <= 1e-14);
    CHECK(op_norm(q) <= 1e-14);
    (void)empty_ladder;
}

TEST_CASE("projectors: ancilla supports build |0..0><0..0|") {
    SWContext ctx1 = simple_context(1, {LocalHamiltonian{Lattice::from_edges(2, {{0, 1}}, 1)}});
    auto [p1, q1] = projectors(ctx1, {1});
    CMatrix want1(2, 2);
    want1(0, 0) = 1.0;
    CHECK(op_norm(p1 - want1) <= 1e-14);
    CHECK(op_norm(p1 * p1 - p1) <= 1e-14);
    CHECK(op_norm(p1 + q1 - CMatrix::identity(2)) <= 1e-14);

    SWContext ctx2 = simple_context(
        2, {LocalHamiltonian{Lattice::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}, 1)}});
    auto [p2, q2] = projectors(ctx2, {1, 2});
    CMatrix want2(4, 4);
    want2(0, 0) = 1.0;  // |00><00|
    CHECK(op_norm(p2 - want2) <= 1e-14);
}

TEST_CASE("l_super: block-diagonal inputs map to zero") {
    SWContext ctx = simple_context(1, {LocalHamiltonian{Lattice::from_edges(2, {{0, 1}}, 1)}});
    // Z on the ancilla is diagonal in the |0>,|1> split.
    CHECK(op_norm(l_super(ctx, {1}, pauli_z())) <= 1e-12);
    // And any effective-only operator is block-diagonal too.
    auto gen = rng(101);
    CHECK(op_norm(l_super(ctx, {0}, random_hermitian(gen, 2, 1.0))) <= 1e-12);
}

TEST_CASE("l_super: single-ancilla raising operator is a fixed point") {
    SWContext ctx = simple_context(1, {LocalHamiltonian{Lattice::from_edges(2, {{0, 1}}, 1)}});
    CMatrix x(2, 2);
    x(1, 0) = 1.0;  // |1><0| on the ancilla
    CHECK(op_norm(l_super(ctx, {1}, x) - x) <= 1e-12);
}

TEST_CASE("l_super: doubly-excited flip picks up 1/2") {
    SWContext ctx = simple_context(
        2, {LocalHamiltonian{Lattice::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}, 1)}});
    CMatrix x(4, 4);
    x(3, 0) = 1.0;  // |11><00| on the two ancillas
    CHECK(op_norm(l_super(ctx, {1, 2}, x) - 0.5 * x) <= 1e-12);
}

TEST_CASE("l_super: random terms satisfy the three properties") {
    auto gen = rng(102);
    for (int n_anc : {1, 2, 3}) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n_anc + 1; ++i)
            for (int j = i + 1; j < n_anc + 1; ++j) edges.emplace_back(i, j);
        Lattice l = Lattice::from_edges(n_anc + 1, edges, 1);
        SWContext ctx = simple_context(n_anc, {LocalHamiltonian{l}});
        std::vector<int> support;
        for (int s = 0; s <= n_anc; ++s) support.push_back(s);
        for (int rep = 0; rep < 20; ++rep) {
            CMatrix x = random_hermitian(gen, std::size_t(1) << (n_anc + 1), 1.0);
            // l_super itself asserts contraction and the commutation identity.
            CMatrix lx = l_super(ctx, support, x);
            CHECK(op_norm(lx) <= op_norm(x) + 1e-10);
        }
    }
}

TEST_CASE("sw_expand: block-diagonal ladder terminates at first order") {
    // H^(1) = Z_eff (x) Z_anc commutes with H^(0): nothing to rotate.
    Lattice l = Lattice::from_edges(2, {{0, 1}}, 1);
    LocalHamiltonian h1{l};
    h1.add_term({0, 1}, kron(pauli_z(), pauli_z()));
    SWContext ctx = simple_context(1, {h1});
    SWSeries series = sw_expand(ctx, 4);

    CHECK(op_norm(series.v[0].assemble() - h1.assemble()) <= 1e-12);
    for (int q = 1; q <= 4; ++q) CHECK(f_norm(series.t_herm[std::size_t(q - 1)], ctx.f()) <= 1e-12);
    for (int q = 2; q <= 4; ++q) CHECK(f_norm(series.v[std::size_t(q - 1)], ctx.f()) <= 1e-12);
}

TEST_CASE("sw_expand: 3-to-2 gadget block structure at low orders") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    SWSeries series = sw_expand(*spec.ctx, 3);

    CHECK(p0_block_norm(*spec.ctx, series.v[0]) <= 1e-9);
    CHECK(p0_block_norm(*spec.ctx, series.v[1]) <= 1e-9);

    // P0 V^(3) P0 = Z x Z x Z (x) P0.
    auto coeffs = effective_coefficients(*spec.ctx, series);
    const CMatrix zzz = kron(kron(pauli_z(), pauli_z()), pauli_z());
    CHECK(op_norm(coeffs[0].assemble() - zzz) <= 1e-9);
}

TEST_CASE("sw_expand: series invariants on the 3-to-2 gadget") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    SWSeries series = sw_expand(*spec.ctx, 6);

    CHECK(series.max_hermiticity_defect <= 1e-10);
    CHECK(series.max_blockdiag_defect <= 1e-10 * spec.ctx->delta() * std::pow(spec.ctx->theta(), 6));
    CHECK(series.bounds_ok);
    for (int q = 1; q <= 6; ++q) {
        CHECK(series.v_fnorm[std::size_t(q - 1)] <= series.v_bound[std::size_t(q - 1)]);
        CHECK(series.t_fnorm[std::size_t(q - 1)] <= series.t_bound[std::size_t(q - 1)]);
    }
    // Locality: support of V^(q) at most q(k'-1)+1 with k' = 2.
    CHECK(series.max_support_seen <= 4);
    // Stored T is Hermitian (the true T = iS is anti-Hermitian).
    for (const auto& s : series.t_herm) CHECK(s.hermiticity_defect() <= 1e-10);
}

TEST_CASE("block_residual: block-diagonal input is identically zero") {
    Lattice l = Lattice::from_edges(2, {{0, 1}}, 1);
    LocalHamiltonian h1{l};
    h1.add_term({0, 1}, kron(pauli_z(), pauli_z()));
    SWContext ctx = simple_context(1, {h1});
    SWSeries series = sw_expand(ctx, 3);
    for (double x : {0.01, 0.1, 0.5}) CHECK(block_residual(ctx, series, x) <= 1e-12);
}

TEST_CASE("block_residual: order scaling in x and in q_max") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    const SWContext& ctx = *spec.ctx;
    SWSeries series = sw_expand(ctx, 6);

    // Halving x cuts the residual by at least 2^q_max / 2. Anchored at the
    // recorded working scale: at fractions of the worst-case x_* the residual
    // falls below the floating-point floor of the rotation itself.
    const double x_hi = ctx.x_ref() / 2.0;
    const double r_hi = block_residual(ctx, series, x_hi);
    const double r_lo = block_residual(ctx, series, 0.5 * x_hi);
    CHECK(r_lo > 0.0);
    CHECK(r_hi / r_lo >= std::pow(2.0, 6.0) / 2.0);

    // Strictly decreasing residual as the series order grows.
    const double x_fix = ctx.x_ref() / 4.0;
    double prev = 1e300;
    for (int q_max = 2; q_max <= 6; ++q_max) {
        SWSeries s = sw_expand(ctx, q_max);
        const double r = block_residual(ctx, s, x_fix);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("effective_hamiltonian: degree-1 block-diagonal ladder is constant in x") {
    Lattice l = Lattice::from_edges(2, {{0, 1}}, 1);
    LocalHamiltonian h1{l};
    h1.add_term({0, 1}, kron(pauli_z(), pauli_z()));  // commutes with H^(0)
    h1.add_term({0}, 0.6 * pauli_x());
    SWContext ctx = simple_context(1, {h1});
    SWSeries series = sw_expand(ctx, 4);

    const CMatrix at_zero = effective_hamiltonian(ctx, series, 0.0).assemble();
    const CMatrix at_mid = effective_hamiltonian(ctx, series, 0.4).assemble();
    CHECK(op_norm(at_zero - at_mid) <= 1e-11);
    // <0|Z_anc|0> = +1, so the effective term is Z_eff + 0.6 X_eff.
    CHECK(op_norm(at_zero - (pauli_z() + 0.6 * pauli_x())) <= 1e-11);
}

TEST_CASE("effective_hamiltonian: F-norm bounded by Delta theta^d / 8") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    const SWContext& ctx = *spec.ctx;
    SWSeries series = sw_expand(ctx, 6);
    const double x = 1.0 / (2.0 * ctx.theta());
    LocalHamiltonian heff = effective_hamiltonian(ctx, series, x);
    CHECK(f_norm(heff, normalize(ctx.f(), ctx.eff_lattice())) <=
          ctx.delta() * std::pow(ctx.theta(), ctx.degree()) / 8.0);
}

TEST_CASE("effective_hamiltonian: non-gadget input raises NotAGadget") {
    // Degree-2 ladder whose first order has a P0 block.
    Lattice l = Lattice::from_edges(2, {{0, 1}}, 1);
    LocalHamiltonian h1{l}, h2{l};
    h1.add_term({0}, pauli_z());  // survives the P0 sandwich
    h2.add_term({0}, pauli_x());
    SWContext ctx = simple_context(1, {h1, h2});
    SWSeries series = sw_expand(ctx, 3);
    CHECK_THROWS_AS(effective_coefficients(ctx, series), NotAGadget);
}

TEST_CASE("subspace_checks: theorem bounds on the 3-to-2 gadget") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    // Background field breaks the 4-fold ZZZ ground degeneracy.
    LocalHamiltonian bg{spec.ctx->eff_lattice()};
    for (int i = 0; i < 3; ++i) bg.add_term({i}, -0.25 * pauli_x());
    GadgetSpec gapped = combine({spec}, bg);

    SWSeries series = sw_expand(*gapped.ctx, 5);
    const double x = gapped.ctx->x_ref() / 8.0;
    SubspaceReport rep = subspace_checks(*gapped.ctx, series, x, 2.0);

    CHECK(rep.gibbs_ok);
    CHECK(rep.ground_ok);
    CHECK(rep.p0_ok);
    CHECK(rep.gibbs_distance <= rep.gibbs_bound + rep.gibbs_allowance);
    CHECK(rep.p0_weight >= rep.p0_lower_bound - 1e-9);
}

TEST_CASE("subspace_checks: block-diagonal input has zero distances") {
    Lattice l = Lattice::from_edges(2, {{0, 1}}, 1);
    LocalHamiltonian h1{l};
    h1.add_term({0, 1}, kron(0.3 * pauli_z() + 0.5 * pauli_x(), pauli_z()));
    h1.add_term({0}, 0.9 * pauli_z());
    SWContext ctx = simple_context(1, {h1});
    SWSeries series = sw_expand(ctx, 3);
    SubspaceReport rep = subspace_checks(ctx, series, 0.05, 2.0);
    CHECK(rep.gibbs_distance <= 1e-9);
    CHECK(rep.ground_distance <= 1e-8);
    CHECK(rep.gibbs_ok);
    CHECK(rep.ground_ok);
    CHECK(rep.p0_ok);
}

TEST_CASE("sw_expand: term cap raises TruncationOverflow") {
    GadgetSpec spec = three_to_two(pauli_z(), pauli_x(), pauli_z());
    CHECK_THROWS_AS(sw_expand(*spec.ctx, 6, 5), TruncationOverflow);
}
