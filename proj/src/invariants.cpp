#include <algorithm>
#include <cmath>
#include <random>

#include "gadsim/expm.hpp"
#include "gadsim/pauli.hpp"
#include "gadsim/pipeline.hpp"
#include "gadsim/quasiloc.hpp"

namespace gadsim {

namespace {

CMatrix rand_matrix(std::mt19937_64& gen, std::size_t n, double scale) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CMatrix m(n, n);
    for (auto& v : m.data()) v = scale * cplx(dist(gen), dist(gen));
    return m;
}

CMatrix rand_hermitian(std::mt19937_64& gen, std::size_t n, double scale) {
    CMatrix m = rand_matrix(gen, n, scale);
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return h;
}

CMatrix rand_with_norm(std::mt19937_64& gen, std::size_t n, double target) {
    CMatrix m = rand_matrix(gen, n, 1.0);
    const double nrm = op_norm(m);
    if (nrm > 0.0) m *= cplx(target / nrm, 0.0);
    return m;
}

LocalHamiltonian ising_chain(int n, double j, double g) {
    LocalHamiltonian h{Lattice::chain(n)};
    for (int i = 0; i + 1 < n; ++i) h.add_term({i, i + 1}, -j * kron(pauli_z(), pauli_z()));
    for (int i = 0; i < n; ++i) h.add_term({i}, -g * pauli_x());
    return h;
}

void push(SuiteReport& rep, const std::string& name, double value, double bound, bool pass) {
    rep.rows.push_back({name, value, bound, pass});
    rep.all_pass = rep.all_pass && pass;
}

void suite_linalg(SuiteReport& rep, std::mt19937_64& gen, int scale) {
    const std::size_t max_dim = (scale >= 2) ? 256 : 128;
    double worst_recon = 0.0, worst_unit = 0.0;
    const std::size_t dims[] = {2, 3, 5, 8, 16, 32, 64, 128, 256};
    int draws = 0;
    for (int rep_i = 0; rep_i < 100; ++rep_i) {
        const std::size_t n = std::min(dims[std::size_t(rep_i % 9)], max_dim);
        CMatrix h = rand_hermitian(gen, n, 1.5);
        EigDecomp ed = herm_eig(h);
        worst_recon = std::max(worst_recon,
                               ed.reconstruction_residual(h) / (1.0 + op_norm(h)));
        worst_unit = std::max(worst_unit, ed.unitarity_residual());
        ++draws;
    }
    push(rep, "herm_eig reconstruction residual (" + std::to_string(draws) + " draws)",
         worst_recon, 1e-9, worst_recon <= 1e-9);
    push(rep, "herm_eig unitarity residual", worst_unit, 1e-10, worst_unit <= 1e-10);

    double worst_inv = 0.0;
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
        CMatrix a = rand_with_norm(gen, 8, 5.0);
        worst_inv = std::max(
            worst_inv,
            op_norm(mat_exp(a) * mat_exp(cplx(-1.0, 0.0) * a) - CMatrix::identity(8)));
    }
    push(rep, "mat_exp inverse identity at ||A|| <= 5", worst_inv, 1e-9, worst_inv <= 1e-9);

    double worst_dual = 0.0;
    std::vector<std::size_t> dims3{2, 2, 2};
    for (int rep_i = 0; rep_i < 20; ++rep_i) {
        CMatrix t = rand_hermitian(gen, 4, 1.0);
        CMatrix rho = rand_hermitian(gen, 8, 1.0);
        const cplx lhs = trace(embed(t, {0, 2}, dims3) * rho);
        const cplx rhs = trace(t * partial_trace(rho, dims3, {0, 2}));
        worst_dual = std::max(worst_dual, std::abs(lhs - rhs));
    }
    push(rep, "embed/partial_trace duality", worst_dual, 1e-10, worst_dual <= 1e-10);

    double worst_margin = -1e300;
    for (int rep_i = 0; rep_i < 100; ++rep_i) {
        const std::size_t n = 2 + std::size_t(rep_i % 31);
        CMatrix x = rand_hermitian(gen, n, 1.2);
        CMatrix y = rand_with_norm(gen, n, 2.0 * (0.05 + 0.95 * double(rep_i) / 100.0));
        const double lhs = trace_norm(mat_exp(x + y));
        EigDecomp ed = herm_eig(x);
        double tr_ex = 0.0;
        for (double lam : ed.values) tr_ex += std::exp(lam);
        const double rhs = std::exp(op_norm(y)) * tr_ex;
        worst_margin = std::max(worst_margin, (lhs - rhs) / rhs);
    }
    push(rep, "||e^{X+Y}||_1 <= e^{||Y||} tr e^X (relative margin)", worst_margin, 1e-9,
         worst_margin <= 1e-9);
}

void suite_fnorm(SuiteReport& rep, std::mt19937_64& gen, int /*scale*/) {
    double worst_sub = -1e300;
    for (int rep_i = 0; rep_i < 20; ++rep_i) {
        Lattice l = Lattice::chain(4);
        FFunction f = normalize(FFunction::exp_weighted(1, 1.0), l);
        LocalHamiltonian a{l}, b{l};
        a.add_term({0, 1}, rand_hermitian(gen, 4, 1.0));
        a.add_term({2, 3}, rand_hermitian(gen, 4, 1.0));
        b.add_term({1, 2}, rand_hermitian(gen, 4, 1.0));
        LocalHamiltonian sum{l};
        sum.add_scaled(a, 1.0);
        sum.add_scaled(b, 1.0);
        worst_sub = std::max(worst_sub, f_norm(sum, f) - (f_norm(a, f) + f_norm(b, f)));
    }
    push(rep, "f_norm subadditivity margin", worst_sub, 1e-10, worst_sub <= 1e-10);

    double worst_comm = -1e300;
    for (int rep_i = 0; rep_i < 50; ++rep_i) {
        const int n = 4 + (rep_i % 3);
        Lattice l = Lattice::chain(n);
        FFunction f = normalize(FFunction::exp_weighted(1, 1.0), l);
        LocalHamiltonian x{l}, y{l};
        for (int i = 0; i + 1 < n; i += 2) x.add_term({i, i + 1}, rand_hermitian(gen, 4, 1.0));
        for (int i = 1; i + 1 < n; i += 2) y.add_term({i, i + 1}, rand_hermitian(gen, 4, 1.0));
        const double lhs = f_norm(lh_commutator(x, y), f);
        const double rhs = 4.0 * f_norm(x, f) * f_norm(y, f);
        worst_comm = std::max(worst_comm, (lhs - rhs) / (1.0 + rhs));
    }
    push(rep, "||[X,Y]||_F <= 4||X||_F||Y||_F (relative margin)", worst_comm, 1e-9,
         worst_comm <= 1e-9);

    double worst_rt = 0.0;
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
        Lattice l = Lattice::chain(3);
        CMatrix m = rand_hermitian(gen, 8, 1.0);
        LocalHamiltonian h = pauli_decompose(m, l);
        worst_rt = std::max(worst_rt, op_norm(h.assemble() - m) / op_norm(m));
    }
    push(rep, "pauli_decompose round trip (relative)", worst_rt, 1e-10, worst_rt <= 1e-10);
}

void suite_traceineq(SuiteReport& rep, std::mt19937_64& gen, int /*scale*/) {
    int violations = 0;
    double worst_low = -1e300, worst_high = -1e300;
    std::uniform_real_distribution<double> ynorm(0.01, std::log(2.0));
    for (int rep_i = 0; rep_i < 200; ++rep_i) {
        const std::size_t n = 2 + std::size_t(rep_i % 31);
        CMatrix x = rand_hermitian(gen, n, 1.2);
        CMatrix y = rand_with_norm(gen, n, ynorm(gen));
        TraceRatio tr = trace_ratio(x, y);
        if (tr.omega > tr.upper * (1.0 + 1e-9) || tr.omega < tr.lower - 1e-9) ++violations;
        worst_low = std::max(worst_low, tr.lower - tr.omega);
        worst_high = std::max(worst_high, tr.omega - tr.upper);
    }
    push(rep, "trace inequality violations over 200 draws", double(violations), 0.0,
         violations == 0);
    push(rep, "trace inequality lower margin", worst_low, 1e-9, worst_low <= 1e-9);
    push(rep, "trace inequality upper margin", worst_high, 1e-9, worst_high <= 1e-9);
}

ParamFamily ising_family(int n, double j, double g, double field) {
    ParamFamily fam(Lattice::chain(n), -1.0, 1.0);
    for (int i = 0; i + 1 < n; ++i) fam.add_poly_term({i, i + 1}, {-j * kron(pauli_z(), pauli_z())});
    for (int i = 0; i < n; ++i) fam.add_poly_term({i}, {-g * pauli_x()});
    for (int i = 0; i < n; ++i) fam.add_poly_term({i}, {CMatrix(2, 2), field * pauli_z()});
    return fam;
}

void suite_qbp(SuiteReport& rep, std::mt19937_64& /*gen*/, int /*scale*/) {
    double worst_norm = 0.0;
    for (double beta : {0.5, 1.0, 2.0}) {
        const double k0 = qbp_filter_value(0.0, beta, FilterSpec::qbp(beta));
        worst_norm = std::max(worst_norm, std::abs(k0 - 1.0));
    }
    push(rep, "khat(0) = 1 kernel normalization", worst_norm, 1e-8, worst_norm <= 1e-8);

    ParamFamily fam = ising_family(4, 1.0, 0.7, 0.5);
    const double r1 = qbp_derivative_check(fam, 0.3, 1.0, 1e-3);
    push(rep, "qbp derivative residual at fd 1e-3", r1, 1e-5, r1 <= 1e-5);
    const double r2 = qbp_derivative_check(fam, 0.3, 1.0, 5e-4);
    const double ratio = (r2 > 1e-12) ? r1 / r2 : 4.0;
    push(rep, "qbp residual reduction on halving", ratio, 3.5, ratio >= 3.5);
}

void suite_spectralflow(SuiteReport& rep, std::mt19937_64& /*gen*/, int /*scale*/) {
    double worst_odd = 0.0, worst_bound = -1e300;
    const double gamma = 0.8;
    for (double w : {0.05, 0.4, 0.8, 1.1, 6.0}) {
        worst_odd = std::max(
            worst_odd, std::abs(spectral_flow_filter(w, gamma) + spectral_flow_filter(-w, gamma)));
        worst_bound =
            std::max(worst_bound, std::abs(spectral_flow_filter(w, gamma)) - 1.0 / gamma);
    }
    push(rep, "spectral-flow filter odd", worst_odd, 1e-14, worst_odd <= 1e-14);
    push(rep, "spectral-flow filter bounded by 1/gamma", worst_bound, 1e-14,
         worst_bound <= 1e-14);

    ParamFamily fam = ising_family(5, 1.0, 1.6, 0.4);
    const double r1 = sf_derivative_check(fam, 0.2, 1e-3);
    push(rep, "spectral-flow derivative residual at fd 1e-3", r1, 1e-5, r1 <= 1e-5);
    const double r2 = sf_derivative_check(fam, 0.2, 5e-4);
    const double ratio = (r2 > 1e-12) ? r1 / r2 : 4.0;
    push(rep, "spectral-flow residual reduction on halving", ratio, 3.5, ratio >= 3.5);
}

void suite_lr(SuiteReport& rep, std::mt19937_64& /*gen*/, int scale) {
    const int n = (scale >= 1) ? 8 : 6;
    LocalHamiltonian h = ising_chain(n, 1.0, 0.9);
    std::vector<int> sites_b;
    for (int i = 1; i < n; ++i) sites_b.push_back(i);
    LRProfile prof = lr_profile(h, pauli_z(), {0}, sites_b, {0.25, 0.5, 1.0});
    int violations = 0;
    double worst_cap = -1e300;
    for (const auto& row : prof.norms) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            if (row[i + 1] > row[i] + 1e-12) ++violations;
        for (double v : row) worst_cap = std::max(worst_cap, v - 2.0);
    }
    push(rep, "lr_profile monotone decay violations", double(violations), 0.0, violations == 0);
    push(rep, "lr_profile norms below 2||A|| ||B||", worst_cap, 1e-12, worst_cap <= 1e-12);
}

void suite_gali(SuiteReport& rep, std::mt19937_64& /*gen*/, int scale) {
    const int n = (scale >= 1) ? 8 : 6;
    ParamFamily fam = ising_family(n, 1.0, 0.9, 0.6);
    auto pts = gali_scan(fam, pauli_z(), {0}, GaliMode::gibbs(1.0), 0.3, {1.0, 2.0, 3.0});
    const bool gibbs_dec =
        pts[0].difference > pts[1].difference && pts[1].difference > pts[2].difference;
    push(rep, "gali gibbs differences strictly decreasing", gibbs_dec ? 0.0 : 1.0, 0.0,
         gibbs_dec);

    ParamFamily gapped = ising_family(n, 1.0, 1.7, 0.5);
    auto gpts = gali_scan(gapped, pauli_z(), {0}, GaliMode::ground(), 0.3, {1.0, 2.0, 3.0});
    const bool ground_dec =
        gpts[0].difference > gpts[1].difference && gpts[1].difference > gpts[2].difference;
    push(rep, "gali ground differences strictly decreasing", ground_dec ? 0.0 : 1.0, 0.0,
         ground_dec);

    LocalHamiltonian h = ising_chain(6, 1.0, 0.8);
    CMatrix z0 = embed(pauli_z(), {0}, h.lattice());
    CMatrix phi = qbp_operator(h.assemble(), z0, 1.0, FilterSpec::qbp(1.0));
    std::vector<double> errs;
    for (double r : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0})
        errs.push_back(op_norm(phi - truncate_to_ball(phi, h.lattice(), {0}, r)));
    int tb_viol = 0;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i)
        if (errs[i + 1] > errs[i] + 1e-12) ++tb_viol;
    push(rep, "truncate_to_ball error decreasing in r (violations)", double(tb_viol), 1.0,
         tb_viol <= 1);
    const double contraction = op_norm(truncate_to_ball(phi, h.lattice(), {0}, 2.0)) -
                               op_norm(phi);
    push(rep, "truncate_to_ball contraction margin", contraction, 1e-10, contraction <= 1e-10);
}

void suite_sw(SuiteReport& rep, std::mt19937_64& gen, int /*scale*/) {
    // L_A properties on up to 3 ancillas (l_super asserts internally too).
    double worst_contract = -1e300, worst_comm_prop = 0.0;
    for (int rep_i = 0; rep_i < 100; ++rep_i) {
        const int n_anc = 1 + (rep_i % 3);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n_anc + 1; ++i)
            for (int jj = i + 1; jj < n_anc + 1; ++jj) edges.emplace_back(i, jj);
        Lattice l = Lattice::from_edges(n_anc + 1, edges, 1);
        std::vector<int> anc;
        for (int a = 1; a <= n_anc; ++a) anc.push_back(a);
        SWContext ctx(l, anc, 1.0, {LocalHamiltonian{l}}, FFunction::exp_weighted(1, 1.0));
        std::vector<int> support;
        for (int s = 0; s <= n_anc; ++s) support.push_back(s);
        CMatrix x = rand_hermitian(gen, std::size_t(1) << (n_anc + 1), 1.0);
        const CMatrix lx = l_super(ctx, support, x);
        worst_contract = std::max(worst_contract, op_norm(lx) - op_norm(x));
        auto [p, q] = projectors(ctx, support);
        CMatrix h0a(x.rows(), x.cols());
        for (int a = 1; a <= n_anc; ++a) {
            CMatrix loc(2, 2);
            loc(1, 1) = 1.0;
            std::vector<std::size_t> sub(std::size_t(n_anc + 1), 2);
            h0a += embed(loc, {a}, sub);
        }
        worst_comm_prop = std::max(
            worst_comm_prop, op_norm(commutator(h0a, lx) - (p * x * q + q * x * p)));
        (void)p;
    }
    push(rep, "L_A contraction margin over 100 draws", worst_contract, 1e-10,
         worst_contract <= 1e-10);
    push(rep, "[H0, L_A(X)] = Delta offdiag(X) residual", worst_comm_prop, 1e-10,
         worst_comm_prop <= 1e-10);

    GadgetSpec spec = three_to_two(pauli_z(), pauli_z(), pauli_z());
    SWSeries series = sw_expand(*spec.ctx, 6);
    push(rep, "3-to-2 series F-norm bounds hold", series.bounds_ok ? 0.0 : 1.0, 0.0,
         series.bounds_ok);
    push(rep, "3-to-2 series Hermiticity defect", series.max_hermiticity_defect, 1e-10,
         series.max_hermiticity_defect <= 1e-10);
    push(rep, "3-to-2 per-term block-diagonality defect", series.max_blockdiag_defect, 1e-8,
         series.max_blockdiag_defect <= 1e-8);
    const bool local_ok = series.max_support_seen <= 4;
    push(rep, "3-to-2 locality q(k'-1)+1", double(series.max_support_seen), 4.0, local_ok);
}

CMatrix rand_bounded_qubit(std::mt19937_64& gen) {
    CMatrix h = rand_hermitian(gen, 2, 1.0);
    const double nrm = op_norm(h);
    if (nrm > 1.0) h *= cplx(1.0 / nrm, 0.0);
    return h;
}

void suite_gadgets(SuiteReport& rep, std::mt19937_64& gen, int /*scale*/) {
    double worst_sum = 0.0;
    for (int inst = 0; inst < 5; ++inst) {
        Lattice lattice = chain_with_ancillas(4, {{{0, 1, 2}}, {{1, 2, 3}}});
        GadgetSpec g1 = three_to_two_on(lattice, {0, 1, 2}, 4, rand_bounded_qubit(gen),
                                        rand_bounded_qubit(gen), rand_bounded_qubit(gen));
        GadgetSpec g2 = three_to_two_on(lattice, {1, 2, 3}, 5, rand_bounded_qubit(gen),
                                        rand_bounded_qubit(gen), rand_bounded_qubit(gen));
        LocalHamiltonian bg{g1.ctx->eff_lattice()};
        bg.add_term({0}, 0.2 * pauli_x());
        GadgetSpec both = combine({g1, g2}, bg);
        ValidationReport v = validate(both, 3);
        if (!v.is_gadget) {
            worst_sum = 1e300;
            break;
        }
        worst_sum = std::max(
            worst_sum, op_norm(v.h_tar_computed.assemble() - both.target->assemble()));
    }
    push(rep, "combined H_eff(0) = sum of targets + background", worst_sum, 1e-8,
         worst_sum <= 1e-8);

    GadgetSpec spec = three_to_two(pauli_z(), pauli_x(), pauli_z());
    int support_cap = 0;
    for (const auto& h : spec.ctx->ladder()) support_cap = std::max(support_cap, h.max_support_size());
    push(rep, "three_to_two ladder is 2-local", double(support_cap), 2.0, support_cap <= 2);

    const double x = 0.04;
    SimulatorEval ev = simulator_eval(spec, x);
    EigDecomp ed = herm_eig(ev.matrix);
    CMatrix tail(ev.matrix.rows(), ev.matrix.cols());
    for (int alpha = 1; alpha <= spec.ctx->degree(); ++alpha)
        tail += std::pow(x, double(alpha - spec.ctx->degree())) *
                spec.ctx->h_alpha(alpha).assemble();
    const double margin = -op_norm(tail) - ed.values.front();
    push(rep, "simulator spectrum lower bound margin", margin, 1e-9, margin <= 1e-9);
}

void suite_extrap(SuiteReport& rep, std::mt19937_64& gen, int /*scale*/) {
    double worst_alpha = 0.0, worst_cap = -1e300;
    for (int m = 1; m <= 64; ++m) {
        NodePlan p = chebyshev_nodes(m, 1.0);
        worst_alpha = std::max(worst_alpha, std::abs(p.alpha - condition_closed_form(m)));
        if (m >= 2) worst_cap = std::max(worst_cap, p.alpha - 3.0 * std::log(double(m)));
    }
    push(rep, "alpha product form vs closed form, m <= 64", worst_alpha, 1e-10,
         worst_alpha <= 1e-10);
    push(rep, "alpha <= 3 log m margin", worst_cap, 0.0, worst_cap <= 0.0);

    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    double worst_poly = 0.0;
    for (int m : {2, 6, 12, 20}) {
        NodePlan p = chebyshev_nodes(m, 0.8);
        std::vector<double> c;
        for (int k = 0; k < m; ++k) c.push_back(coeff(gen));
        std::vector<double> samples;
        for (double xx : p.nodes) {
            double acc = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) acc = acc * xx + c[k];
            samples.push_back(acc);
        }
        worst_poly = std::max(worst_poly, std::abs(richardson(p, samples).c0_hat - c[0]) /
                                              (1.0 + std::abs(c[0])));
    }
    push(rep, "Lagrange exactness for degree m-1 polynomials", worst_poly, 1e-10,
         worst_poly <= 1e-10);

    const int m = 10;
    const double delta = 1e-4;
    NodePlan p = chebyshev_nodes(m, 0.25);
    const double noise_budget = (2.0 * delta + std::ldexp(2.0, -m)) * 3.0 * std::log(double(m));
    std::uniform_real_distribution<double> noise(-delta, delta);
    double worst_noise = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> samples;
        for (double xx : p.nodes) samples.push_back(1.0 / (1.0 + xx) + noise(gen));
        worst_noise = std::max(worst_noise, std::abs(richardson(p, samples).c0_hat - 1.0));
    }
    push(rep, "noise robustness over 100 trials", worst_noise, noise_budget,
         worst_noise <= noise_budget);
}

}  // namespace

SuiteReport run_invariants(const std::string& suite, std::uint64_t seed, int size_scale) {
    SuiteReport rep;
    rep.suite = suite;
    rep.seed = seed;
    std::mt19937_64 gen(seed);

    static const std::vector<std::string> names{"linalg", "fnorm",        "traceineq",
                                                "qbp",    "spectralflow", "lr",
                                                "gali",   "sw",           "gadgets",
                                                "extrap", "all"};
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw UnknownSuite("run_invariants: unknown suite '" + suite + "'");
    auto want = [&](const char* name) { return suite == name || suite == "all"; };
    if (want("linalg")) suite_linalg(rep, gen, size_scale);
    if (want("fnorm")) suite_fnorm(rep, gen, size_scale);
    if (want("traceineq")) suite_traceineq(rep, gen, size_scale);
    if (want("qbp")) suite_qbp(rep, gen, size_scale);
    if (want("spectralflow")) suite_spectralflow(rep, gen, size_scale);
    if (want("lr")) suite_lr(rep, gen, size_scale);
    if (want("gali")) suite_gali(rep, gen, size_scale);
    if (want("sw")) suite_sw(rep, gen, size_scale);
    if (want("gadgets")) suite_gadgets(rep, gen, size_scale);
    if (want("extrap")) suite_extrap(rep, gen, size_scale);
    return rep;
}

}  // namespace gadsim
