#include "gadsim/gadgets.hpp"

#include <algorithm>
#include <cmath>

#include "gadsim/expm.hpp"
#include "gadsim/pauli.hpp"
#include "gadsim/tensor.hpp"

namespace gadsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_qubit_hermitian(const CMatrix& h, const char* name) {
    if (h.rows() != 2 || h.cols() != 2)
        throw DimensionMismatch(std::string(name) + ": expected a single-qubit operator");
    if (h.hermiticity_defect() > 1e-10 * (1.0 + h.max_abs()))
        throw NonHermitian(std::string(name) + ": input is not Hermitian");
}

CMatrix excited_projector() {
    CMatrix p(2, 2);
    p(1, 1) = 1.0;  // |1><1|
    return p;
}

// Ladder of the 3-to-2 construction on the given sites. Site ids must obey
// eff[0] < eff[1] < eff[2] < anc so the tensor order below is the site order.
std::vector<LocalHamiltonian> build_ladder(const Lattice& lattice, const std::array<int, 3>& eff,
                                           int anc, const CMatrix& h1, const CMatrix& h2,
                                           const CMatrix& h3) {
    if (!(eff[0] < eff[1] && eff[1] < eff[2] && eff[2] < anc))
        throw Error("three_to_two: sites must satisfy eff0 < eff1 < eff2 < anc");

    LocalHamiltonian l1{lattice}, l2{lattice}, l3{lattice};

    // H^(1) = (1/sqrt2)(-h1 x 1 + 1 x h2) x 1 x X - 1 x 1 x h3 x |1><1|
    l1.add_term({eff[0], anc}, kron(cplx(-kInvSqrt2, 0.0) * h1, pauli_x()));
    l1.add_term({eff[1], anc}, kron(cplx(kInvSqrt2, 0.0) * h2, pauli_x()));
    l1.add_term({eff[2], anc}, kron(cplx(-1.0, 0.0) * h3, excited_projector()));

    // H^(2) = (1/2)(-h1 x 1 + 1 x h2)^2 = (1/2)(h1^2 x 1 + 1 x h2^2) - h1 x h2
    l2.add_term({eff[0]}, 0.5 * (h1 * h1));
    l2.add_term({eff[1]}, 0.5 * (h2 * h2));
    l2.add_term({eff[0], eff[1]}, cplx(-1.0, 0.0) * kron(h1, h2));

    // H^(3) = (1/2)(h1^2 x 1 + 1 x h2^2) x h3
    l3.add_term({eff[0], eff[2]}, 0.5 * kron(h1 * h1, h3));
    l3.add_term({eff[1], eff[2]}, 0.5 * kron(h2 * h2, h3));

    return {canonical_grouping(l1), canonical_grouping(l2), canonical_grouping(l3)};
}

}  // namespace

Lattice chain_with_ancillas(int n_eff, const std::vector<std::array<int, 3>>& triples) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n_eff; ++i) edges.emplace_back(i, i + 1);
    for (std::size_t g = 0; g < triples.size(); ++g) {
        const int anc = n_eff + int(g);
        for (int t : triples[g]) {
            if (t < 0 || t >= n_eff) throw UnknownSite("chain_with_ancillas: bad triple site");
            edges.emplace_back(t, anc);
        }
    }
    return Lattice::from_edges(n_eff + int(triples.size()), edges, 1);
}

GadgetSpec three_to_two(const CMatrix& h1, const CMatrix& h2, const CMatrix& h3) {
    Lattice lattice = chain_with_ancillas(3, {{{0, 1, 2}}});
    return three_to_two_on(lattice, {0, 1, 2}, 3, h1, h2, h3);
}

GadgetSpec three_to_two_on(const Lattice& lattice, const std::array<int, 3>& eff, int anc,
                           const CMatrix& h1, const CMatrix& h2, const CMatrix& h3) {
    require_qubit_hermitian(h1, "three_to_two h1");
    require_qubit_hermitian(h2, "three_to_two h2");
    require_qubit_hermitian(h3, "three_to_two h3");

    auto ladder = build_ladder(lattice, eff, anc, h1, h2, h3);
    GadgetSpec spec;
    spec.ctx = std::make_shared<SWContext>(lattice, std::vector<int>{anc}, 1.0, std::move(ladder),
                                           FFunction::exp_weighted(lattice.dim_d(), 1.0));

    LocalHamiltonian target{spec.ctx->eff_lattice()};
    target.add_term({spec.ctx->eff_index(eff[0]), spec.ctx->eff_index(eff[1]),
                     spec.ctx->eff_index(eff[2])},
                    kron(kron(h1, h2), h3));
    spec.target = canonical_grouping(target);
    return spec;
}

ValidationReport validate(const GadgetSpec& spec, int q_max) {
    const SWContext& ctx = *spec.ctx;
    const int d = ctx.degree();
    if (q_max < d) throw OutOfDomain("validate: q_max must reach the gadget degree");

    ValidationReport rep;
    rep.series = sw_expand(ctx, q_max);

    rep.is_gadget = true;
    for (int q = 1; q < d; ++q) {
        const double blk = p0_block_norm(ctx, rep.series.v[std::size_t(q - 1)]);
        rep.low_order_block_norms.push_back(blk);
        if (blk > 1e-9 * ctx.delta()) rep.is_gadget = false;
    }

    if (rep.is_gadget) {
        rep.h_tar_computed = effective_coefficients(ctx, rep.series).front();
    } else {
        // Still report the d-th order block for diagnostics.
        rep.h_tar_computed = LocalHamiltonian(ctx.eff_lattice());
    }

    if (spec.target && rep.is_gadget) {
        rep.target_mismatch =
            op_norm(rep.h_tar_computed.assemble() - spec.target->assemble());
    }

    rep.eta = op_norm(mat_exp(cplx(-1.0, 0.0) * t_dense(ctx, rep.series, ctx.x_star() / 4.0)) -
                      CMatrix::identity(ctx.lattice().total_dim()));
    return rep;
}

GadgetSpec combine(const std::vector<GadgetSpec>& specs,
                   const std::optional<LocalHamiltonian>& background) {
    if (specs.empty()) throw OutOfDomain("combine: need at least one gadget");
    const SWContext& first = *specs.front().ctx;
    const int d = first.degree();
    if (d > 3) throw DegreeTooHigh("combine: parallel combination requires degree <= 3");

    std::vector<int> anc_union;
    for (const auto& s : specs) {
        if (s.ctx->degree() != d) throw DegreeTooHigh("combine: mixed gadget degrees");
        if (s.ctx->lattice().num_sites() != first.lattice().num_sites())
            throw DimensionMismatch("combine: gadgets must share one lattice");
        for (int a : s.ctx->anc_sites()) {
            if (std::find(anc_union.begin(), anc_union.end(), a) != anc_union.end())
                throw AncillaCollision("combine: ancilla sites overlap");
            anc_union.push_back(a);
        }
    }
    std::sort(anc_union.begin(), anc_union.end());

    std::vector<LocalHamiltonian> ladder;
    for (int alpha = 1; alpha <= d; ++alpha) {
        LocalHamiltonian sum{first.lattice()};
        for (const auto& s : specs) sum.add_scaled(s.ctx->h_alpha(alpha), 1.0);
        ladder.push_back(canonical_grouping(sum));
    }

    GadgetSpec out;
    out.ctx = std::make_shared<SWContext>(first.lattice(), anc_union, first.delta(),
                                          std::move(ladder),
                                          FFunction::exp_weighted(first.lattice().dim_d(), 1.0));

    // Background terms live on the effective sublattice and fold into H^(d).
    if (background) {
        LocalHamiltonian lifted{first.lattice()};
        lifted.set_identity_coefficient(background->identity_coefficient());
        for (const auto& t : background->terms()) {
            std::vector<int> global;
            for (int s : t.support) global.push_back(out.ctx->eff_sites()[std::size_t(s)]);
            lifted.add_term(global, t.matrix);
        }
        std::vector<LocalHamiltonian> with_bg;
        for (int alpha = 1; alpha <= d; ++alpha) {
            LocalHamiltonian h = out.ctx->h_alpha(alpha);
            if (alpha == d) h.add_scaled(lifted, 1.0);
            with_bg.push_back(canonical_grouping(h));
        }
        out.ctx = std::make_shared<SWContext>(first.lattice(), anc_union, first.delta(),
                                              std::move(with_bg),
                                              FFunction::exp_weighted(first.lattice().dim_d(), 1.0));
    }

    LocalHamiltonian target{out.ctx->eff_lattice()};
    bool have_target = false;
    for (const auto& s : specs) {
        if (!s.target) continue;
        have_target = true;
        // Each gadget's effective lattice equals the combined one (shared
        // effective sites), so targets add directly.
        target.add_scaled(*s.target, 1.0);
    }
    if (background) {
        target.add_scaled(*background, 1.0);
        have_target = true;
    }
    if (have_target) out.target = canonical_grouping(target);
    return out;
}

int locality_floor(int k, int k_prime) {
    if (k < 1) throw InvalidArity("locality_floor: k must be >= 1");
    if (k_prime < 2) throw InvalidArity("locality_floor: k' must be >= 2");
    return (k - 1 + k_prime - 2) / (k_prime - 1);
}

SimulatorEval simulator_eval(const GadgetSpec& spec, double x) {
    if (x <= 0.0) throw NonPositiveX("simulator_eval: x must be positive");
    const SWContext& ctx = *spec.ctx;
    SimulatorEval out;
    out.x = x;
    out.matrix = std::pow(x, -double(ctx.degree())) * ctx.h_dense(x);
    out.max_interaction = ctx.delta() * std::pow(x, -double(ctx.degree()));
    return out;
}

std::vector<double> simulator_low_spectrum(const GadgetSpec& spec, double x) {
    if (x <= 0.0) throw NonPositiveX("simulator_low_spectrum: x must be positive");
    const SWContext& ctx = *spec.ctx;
    EigDecomp ed = herm_eig(ctx.h_dense(x));
    const double scale = std::pow(x, -double(ctx.degree()));
    std::size_t count = 1;
    for (int s : ctx.eff_sites()) count *= ctx.lattice().local_dim(s);
    count = std::min(count, ed.values.size());
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(scale * ed.values[k]);
    return out;
}

}  // namespace gadsim
