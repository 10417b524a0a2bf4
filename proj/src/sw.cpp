#include "gadsim/sw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "gadsim/expm.hpp"
#include "gadsim/tensor.hpp"

namespace gadsim {

namespace {

// Composite index maps for a sorted support: contribution of the digits at
// `positions` (indices into the support) to the local row index.
std::vector<std::size_t> local_index_map(const std::vector<std::size_t>& sub_dims,
                                         const std::vector<std::size_t>& positions) {
    std::vector<std::size_t> stride(sub_dims.size(), 1);
    for (std::size_t p = sub_dims.size(); p-- > 1;) stride[p - 1] = stride[p] * sub_dims[p];
    std::size_t count = 1;
    for (std::size_t p : positions) count *= sub_dims[p];
    std::vector<std::size_t> map(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rem = idx, acc = 0;
        for (std::size_t k = positions.size(); k-- > 0;) {
            const std::size_t p = positions[k];
            acc += (rem % sub_dims[p]) * stride[p];
            rem /= sub_dims[p];
        }
        map[idx] = acc;
    }
    return map;
}

LocalHamiltonian scaled_complex(const LocalHamiltonian& h, cplx factor) {
    LocalHamiltonian out(h.lattice());
    out.set_identity_coefficient((factor * h.identity_coefficient()).real());
    for (const auto& t : h.terms()) out.add_term_unchecked(t.support, factor * t.matrix);
    return out;
}

// All compositions of s into exactly r parts, each >= 1, lexicographic.
void compositions(int s, int r, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
    if (r == 1) {
        current.push_back(s);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int first = 1; first <= s - (r - 1); ++first) {
        current.push_back(first);
        compositions(s - first, r - 1, current, out);
        current.pop_back();
    }
}

double factorial(int r) {
    double f = 1.0;
    for (int i = 2; i <= r; ++i) f *= double(i);
    return f;
}

}  // namespace

SWContext::SWContext(Lattice lattice, std::vector<int> anc_sites, double delta,
                     std::vector<LocalHamiltonian> ladder, FFunction f_unnormalized,
                     std::vector<CMatrix> local_ground)
    : lattice_(std::move(lattice)), anc_(std::move(anc_sites)), delta_(delta),
      ladder_(std::move(ladder)) {
    if (delta_ <= 0.0) throw OutOfDomain("SWContext: penalty Delta must be positive");
    std::sort(anc_.begin(), anc_.end());
    for (int s : anc_)
        if (s < 0 || s >= lattice_.num_sites()) throw UnknownSite("SWContext: bad ancilla site");
    eff_ = lattice_.complement(anc_);

    if (local_ground.empty()) {
        for (int s : anc_) {
            CMatrix p(lattice_.local_dim(s), lattice_.local_dim(s));
            p(0, 0) = 1.0;
            local_ground.push_back(p);
        }
    }
    if (local_ground.size() != anc_.size())
        throw DimensionMismatch("SWContext: one ground projector per ancilla required");
    for (std::size_t k = 0; k < anc_.size(); ++k) {
        const CMatrix& p = local_ground[k];
        if (p.rows() != lattice_.local_dim(anc_[k]))
            throw DimensionMismatch("SWContext: projector dimension mismatch");
        if (op_norm(p * p - p) > 1e-10 || std::abs(trace(p).real() - 1.0) > 1e-10 ||
            p.hermiticity_defect() > 1e-10)
            throw Error("SWContext: local ground must be a rank-1 Hermitian projector");
    }
    ground_proj_ = std::move(local_ground);
    for (const auto& p : ground_proj_) {
        EigDecomp ed = herm_eig(p);
        std::vector<cplx> g(p.rows());
        // eigenvalue 1 is the last after ascending sort
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = ed.vectors(i, g.size() - 1);
        ground_vec_.push_back(std::move(g));
    }

    f_ = normalize(f_unnormalized, lattice_);
    const FConstants fc = f_constants(f_, lattice_);
    f_norm_const_ = fc.norm_f;

    j_const_ = 0.0;
    double w_op = 0.0;
    for (const auto& h : ladder_) {
        j_const_ = std::max(j_const_, f_norm(h, f_));
        w_op = std::max(w_op, op_norm(h.assemble()));
    }
    theta_ = 64.0 * std::pow(1.0 + 4.0 * j_const_ / delta_, 2.0);
    x_star_ = 1.0 / (theta_ * (2.0 + f_norm_const_));
    x_ref_ = std::min(w_op > 0.0 ? delta_ / (4.0 * w_op) : 0.1, 0.1);

    // Effective sublattice with the restricted metric.
    std::vector<std::vector<double>> d(eff_.size(), std::vector<double>(eff_.size(), 0.0));
    std::vector<std::size_t> dims;
    for (std::size_t a = 0; a < eff_.size(); ++a) {
        dims.push_back(lattice_.local_dim(eff_[a]));
        for (std::size_t b = 0; b < eff_.size(); ++b) d[a][b] = lattice_.dist(eff_[a], eff_[b]);
    }
    eff_lattice_ = Lattice::custom(std::move(d), std::move(dims), lattice_.dim_d());
    eff_index_.assign(std::size_t(lattice_.num_sites()), -1);
    for (std::size_t a = 0; a < eff_.size(); ++a) eff_index_[std::size_t(eff_[a])] = int(a);
}

bool SWContext::is_ancilla(int site) const {
    return std::binary_search(anc_.begin(), anc_.end(), site);
}

const CMatrix& SWContext::ground_projector(int site) const {
    const auto it = std::lower_bound(anc_.begin(), anc_.end(), site);
    if (it == anc_.end() || *it != site) throw UnknownSite("ground_projector: not an ancilla");
    return ground_proj_[std::size_t(it - anc_.begin())];
}

const std::vector<cplx>& SWContext::ground_vector(int site) const {
    const auto it = std::lower_bound(anc_.begin(), anc_.end(), site);
    if (it == anc_.end() || *it != site) throw UnknownSite("ground_vector: not an ancilla");
    return ground_vec_[std::size_t(it - anc_.begin())];
}

int SWContext::eff_index(int global_site) const {
    const int idx = eff_index_[std::size_t(global_site)];
    if (idx < 0) throw UnknownSite("eff_index: site is an ancilla");
    return idx;
}

CMatrix SWContext::h0_dense() const {
    const std::size_t dim = lattice_.total_dim();
    CMatrix out(dim, dim);
    for (int s : anc_) {
        CMatrix local = CMatrix::identity(lattice_.local_dim(s)) - ground_projector(s);
        out += embed(delta_ * local, {s}, lattice_);
    }
    return out;
}

CMatrix SWContext::h_dense(double x) const {
    CMatrix out = h0_dense();
    double xp = 1.0;
    for (const auto& h : ladder_) {
        xp *= x;
        out += xp * h.assemble();
    }
    return out;
}

CMatrix SWContext::p0_dense() const {
    CMatrix out = CMatrix::identity(lattice_.total_dim());
    for (int s : anc_) out = out * embed(ground_projector(s), {s}, lattice_);
    return out;
}

std::pair<CMatrix, CMatrix> projectors(const SWContext& ctx, const std::vector<int>& a) {
    CMatrix p(1, 1);
    p(0, 0) = 1.0;
    for (int s : a) {
        if (ctx.is_ancilla(s))
            p = kron(p, ctx.ground_projector(s));
        else
            p = kron(p, CMatrix::identity(ctx.lattice().local_dim(s)));
    }
    CMatrix q = CMatrix::identity(p.rows()) - p;
    return {std::move(p), std::move(q)};
}

namespace {

// H^(0)|_A on the local space of the support.
CMatrix h0_restricted(const SWContext& ctx, const std::vector<int>& a) {
    std::vector<std::size_t> sub_dims;
    for (int s : a) sub_dims.push_back(ctx.lattice().local_dim(s));
    std::size_t dim = 1;
    for (std::size_t d : sub_dims) dim *= d;
    CMatrix out(dim, dim);
    for (std::size_t pos = 0; pos < a.size(); ++pos) {
        if (!ctx.is_ancilla(a[pos])) continue;
        CMatrix local = CMatrix::identity(sub_dims[pos]) - ctx.ground_projector(a[pos]);
        out += embed(ctx.delta() * local, {int(pos)},
                     std::vector<std::size_t>(sub_dims.begin(), sub_dims.end()));
    }
    return out;
}

}  // namespace

CMatrix l_super(const SWContext& ctx, const std::vector<int>& a, const CMatrix& x) {
    auto [p, q] = projectors(ctx, a);
    if (x.rows() != p.rows()) throw DimensionMismatch("l_super: term does not match support");

    const CMatrix h0a = h0_restricted(ctx, a);
    EigDecomp ed = herm_eig(h0a);
    std::vector<cplx> pinv(ed.values.size());
    for (std::size_t i = 0; i < pinv.size(); ++i)
        pinv[i] = (ed.values[i] > 0.5 * ctx.delta()) ? ctx.delta() / ed.values[i] : 0.0;
    const CMatrix k = spectral_function(ed, pinv);

    CMatrix out = k * (q * x * p) - (p * x * q) * k;

    // The three defining properties, asserted on every call.
    const double xnorm = op_norm(x);
    const double scale = 1e-10 * (1.0 + xnorm) * std::max(1.0, ctx.delta());
    if (op_norm(out) > xnorm + scale) throw Error("l_super: contraction property violated");
    const CMatrix offdiag = p * x * q + q * x * p;
    if (op_norm(commutator(h0a, out) - ctx.delta() * offdiag) > scale)
        throw Error("l_super: commutation property violated");
    return out;
}

namespace {

// [T^(q), H^(0)] for the Hermitian store S = -i T: each term stays on its
// own support because H^(0) is 1-local.
LocalHamiltonian comm_T_with_h0(const SWContext& ctx, const LocalHamiltonian& s_store) {
    LocalHamiltonian out(ctx.lattice());
    for (const auto& term : s_store.terms()) {
        const CMatrix h0a = h0_restricted(ctx, term.support);
        // [T_A, H0] = i [S_A, H0]
        out.add_term_unchecked(term.support, cplx(0.0, 1.0) * commutator(term.matrix, h0a));
    }
    return out;
}

// [T^(q), W] = i [S, W] for Hermitian W.
LocalHamiltonian comm_with_T(const LocalHamiltonian& s_store, const LocalHamiltonian& w) {
    return scaled_complex(lh_commutator(s_store, w), cplx(0.0, 1.0));
}

LocalHamiltonian build_t_store(const SWContext& ctx, const LocalHamiltonian& v_q) {
    LocalHamiltonian s(ctx.lattice());
    for (const auto& term : v_q.terms()) {
        const CMatrix t_mat = (1.0 / ctx.delta()) * l_super(ctx, term.support, term.matrix);
        s.add_term_unchecked(term.support, cplx(0.0, -1.0) * t_mat);  // S = -i T
    }
    return s;
}

}  // namespace

SWSeries sw_expand(const SWContext& ctx, int q_max, std::size_t term_cap) {
    if (q_max < 1) throw OutOfDomain("sw_expand: q_max must be >= 1");
    const int d = ctx.degree();
    const double prune = 1e-14 * ctx.delta();

    int k_prime = 1;
    for (const auto& h : ctx.ladder()) k_prime = std::max(k_prime, h.max_support_size());

    SWSeries out;
    out.q_max = q_max;

    // Suffix-memoized nested commutators keyed on (alpha, q_j..q_r).
    std::map<std::pair<int, std::vector<int>>, LocalHamiltonian> memo;
    std::function<const LocalHamiltonian&(int, const std::vector<int>&)> nested =
        [&](int alpha, const std::vector<int>& comp) -> const LocalHamiltonian& {
        const auto key = std::make_pair(alpha, comp);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        LocalHamiltonian value(ctx.lattice());
        if (comp.empty()) {
            if (alpha >= 1 && alpha <= d) value = ctx.h_alpha(alpha);
            // alpha = 0 or alpha > d never reaches here (handled below / zero)
        } else {
            std::vector<int> tail(comp.begin() + 1, comp.end());
            const LocalHamiltonian& s_store = out.t_herm[std::size_t(comp.front() - 1)];
            if (tail.empty() && alpha == 0) {
                value = comm_T_with_h0(ctx, s_store);
            } else {
                const LocalHamiltonian& inner = nested(alpha, tail);
                value = comm_with_T(s_store, inner);
            }
            value = canonical_grouping(value, prune);
        }
        return memo.emplace(key, std::move(value)).first->second;
    };

    for (int q = 1; q <= q_max; ++q) {
        LocalHamiltonian acc(ctx.lattice());
        if (q <= d) acc.add_scaled(ctx.h_alpha(q), 1.0);

        if (q >= 2) {
            // alpha = 0 branch: r = 2..q, compositions of q.
            for (int r = 2; r <= q; ++r) {
                std::vector<std::vector<int>> comps;
                std::vector<int> current;
                compositions(q, r, current, comps);
                for (const auto& comp : comps)
                    acc.add_scaled(nested(0, comp), 1.0 / factorial(r));
            }
            // alpha >= 1 branch: compositions of q - alpha.
            for (int alpha = 1; alpha < q; ++alpha) {
                if (alpha > d) continue;  // H^(alpha) = 0 beyond the ladder
                const int s = q - alpha;
                for (int r = 1; r <= s; ++r) {
                    std::vector<std::vector<int>> comps;
                    std::vector<int> current;
                    compositions(s, r, current, comps);
                    for (const auto& comp : comps)
                        acc.add_scaled(nested(alpha, comp), 1.0 / factorial(r));
                }
            }
        }

        double dropped = 0.0;
        LocalHamiltonian v_q = canonical_grouping(acc, prune, &dropped);
        out.pruned_mass += dropped;
        out.max_hermiticity_defect =
            std::max(out.max_hermiticity_defect, v_q.hermiticity_defect());
        out.max_support_seen = std::max(out.max_support_seen, v_q.max_support_size());

        // Locality: V^(q) must stay [q(k'-1)+1]-local.
        const int locality_cap = std::min(q * (k_prime - 1) + 1, ctx.lattice().num_sites());
        if (v_q.max_support_size() > locality_cap)
            throw Error("sw_expand: locality bound violated (internal error)");

        std::size_t total_terms = 0;
        for (const auto& h : out.v) total_terms += h.term_count();
        if (total_terms + v_q.term_count() > term_cap)
            throw TruncationOverflow("sw_expand: term cap exceeded");

        LocalHamiltonian s_q = build_t_store(ctx, v_q);

        // Per-term block-diagonality: V_A + [T_A, H^(0)] has no offdiagonal
        // part with respect to P_A.
        for (std::size_t ti = 0; ti < v_q.terms().size(); ++ti) {
            const auto& vt = v_q.terms()[ti];
            auto [p, qq] = projectors(ctx, vt.support);
            const CMatrix h0a = h0_restricted(ctx, vt.support);
            const CMatrix t_mat = cplx(0.0, 1.0) * s_q.terms()[ti].matrix;
            const CMatrix combined = vt.matrix + commutator(t_mat, h0a);
            const CMatrix off = p * combined * qq + qq * combined * p;
            out.max_blockdiag_defect = std::max(out.max_blockdiag_defect, op_norm(off));
        }

        out.v_fnorm.push_back(f_norm(v_q, ctx.f()));
        out.t_fnorm.push_back(f_norm(s_q, ctx.f()));
        out.v_bound.push_back(ctx.delta() * std::pow(ctx.theta(), q) / 16.0);
        out.t_bound.push_back(std::pow(ctx.theta(), q) / 16.0);
        if (out.v_fnorm.back() > out.v_bound.back() || out.t_fnorm.back() > out.t_bound.back())
            out.bounds_ok = false;

        out.v.push_back(std::move(v_q));
        out.t_herm.push_back(std::move(s_q));
    }

    out.empirical_theta = 0.0;
    for (int q = 1; q <= q_max; ++q) {
        const double growth =
            std::pow(16.0 * out.v_fnorm[std::size_t(q - 1)] / ctx.delta(), 1.0 / double(q));
        out.empirical_theta = std::max(out.empirical_theta, growth);
    }
    return out;
}

CMatrix t_dense(const SWContext& ctx, const SWSeries& series, double x) {
    const std::size_t dim = ctx.lattice().total_dim();
    CMatrix s_total(dim, dim);
    double xp = 1.0;
    for (int q = 1; q <= series.q_max; ++q) {
        xp *= x;
        s_total += xp * series.t_herm[std::size_t(q - 1)].assemble();
    }
    return cplx(0.0, 1.0) * s_total;
}

double block_residual(const SWContext& ctx, const SWSeries& series, double x) {
    static bool warned = false;
    if (x > ctx.x_star() && !warned) {
        std::fprintf(stderr,
                     "gadsim: block_residual at x=%g beyond x_*=%g (worst-case convergence "
                     "threshold); computing anyway\n",
                     x, ctx.x_star());
        warned = true;
    }
    const CMatrix h = ctx.h_dense(x);
    const CMatrix u = mat_exp(t_dense(ctx, series, x));
    const CMatrix rotated = u * h * u.dagger();
    const CMatrix p0 = ctx.p0_dense();
    const CMatrix q0 = CMatrix::identity(p0.rows()) - p0;
    return op_norm(p0 * rotated * q0);
}

namespace {

// Contract the ancilla factors of a term with the local ground vectors,
// leaving an operator on the effective factors of the support.
struct SandwichedTerm {
    std::vector<int> eff_support;  // global site ids
    CMatrix matrix;                // on the effective factors (may be 1x1)
};

SandwichedTerm sandwich_term(const SWContext& ctx, const LocalTerm& term) {
    std::vector<std::size_t> sub_dims;
    std::vector<std::size_t> eff_pos, anc_pos;
    std::vector<int> eff_support;
    for (std::size_t p = 0; p < term.support.size(); ++p) {
        const int s = term.support[p];
        sub_dims.push_back(ctx.lattice().local_dim(s));
        if (ctx.is_ancilla(s)) {
            anc_pos.push_back(p);
        } else {
            eff_pos.push_back(p);
            eff_support.push_back(s);
        }
    }
    const auto eff_map = local_index_map(sub_dims, eff_pos);
    const auto anc_map = local_index_map(sub_dims, anc_pos);

    // Combined ground amplitudes over the ancilla factors.
    std::vector<cplx> g(anc_map.size(), cplx(1.0, 0.0));
    {
        std::size_t count = anc_map.size();
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rem = idx;
            cplx amp = 1.0;
            for (std::size_t k = anc_pos.size(); k-- > 0;) {
                const std::size_t p = anc_pos[k];
                const auto& gv = ctx.ground_vector(term.support[p]);
                amp *= gv[rem % sub_dims[p]];
                rem /= sub_dims[p];
            }
            g[idx] = amp;
        }
    }

    SandwichedTerm out;
    out.eff_support = std::move(eff_support);
    const std::size_t ed = eff_map.size();
    out.matrix = CMatrix(ed, ed);
    for (std::size_t ei = 0; ei < ed; ++ei)
        for (std::size_t ej = 0; ej < ed; ++ej) {
            cplx acc = 0.0;
            for (std::size_t ai = 0; ai < anc_map.size(); ++ai)
                for (std::size_t aj = 0; aj < anc_map.size(); ++aj)
                    acc += std::conj(g[ai]) * g[aj] *
                           term.matrix(eff_map[ei] + anc_map[ai], eff_map[ej] + anc_map[aj]);
            out.matrix(ei, ej) = acc;
        }
    return out;
}

LocalHamiltonian sandwich_to_eff(const SWContext& ctx, const LocalHamiltonian& h) {
    LocalHamiltonian out(ctx.eff_lattice());
    out.set_identity_coefficient(h.identity_coefficient());
    for (const auto& term : h.terms()) {
        SandwichedTerm st = sandwich_term(ctx, term);
        if (st.eff_support.empty()) {
            out.set_identity_coefficient(out.identity_coefficient() + st.matrix(0, 0).real());
            continue;
        }
        std::vector<int> local_support;
        for (int s : st.eff_support) local_support.push_back(ctx.eff_index(s));
        out.add_term_unchecked(local_support, st.matrix);
    }
    return out;
}

}  // namespace

double p0_block_norm(const SWContext& ctx, const LocalHamiltonian& v_q) {
    return op_norm(sandwich_to_eff(ctx, v_q).assemble());
}

std::vector<LocalHamiltonian> effective_coefficients(const SWContext& ctx,
                                                     const SWSeries& series) {
    const int d = ctx.degree();
    if (series.q_max < d) throw OutOfDomain("effective_coefficients: series shorter than degree");
    for (int q = 1; q < d; ++q) {
        const double blk = p0_block_norm(ctx, series.v[std::size_t(q - 1)]);
        if (blk > 1e-9 * ctx.delta())
            throw NotAGadget("effective_coefficients: P0 V^(q) P0 nonzero below degree, q=" +
                             std::to_string(q));
    }
    std::vector<LocalHamiltonian> coeffs;
    for (int q = 0; q + d <= series.q_max; ++q)
        coeffs.push_back(canonical_grouping(sandwich_to_eff(ctx, series.v[std::size_t(q + d - 1)]),
                                            1e-14 * ctx.delta()));
    return coeffs;
}

LocalHamiltonian effective_hamiltonian(const SWContext& ctx, const SWSeries& series, double x) {
    const auto coeffs = effective_coefficients(ctx, series);
    LocalHamiltonian out(ctx.eff_lattice());
    double xp = 1.0;
    for (std::size_t q = 0; q < coeffs.size(); ++q) {
        out.add_scaled(coeffs[q], xp);
        xp *= x;
    }
    return out;
}

CMatrix simulator_gibbs_state(const SWContext& ctx, double x, double beta) {
    if (x <= 0.0) throw NonPositiveX("simulator_gibbs_state: x must be positive");
    EigDecomp ed = herm_eig(ctx.h_dense(x));
    const double scale = beta * std::pow(x, -double(ctx.degree()));
    const double e0 = ed.values.front();
    std::vector<cplx> w(ed.values.size());
    double z = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double wk = std::exp(-scale * (ed.values[k] - e0));
        w[k] = wk;
        z += wk;
    }
    for (auto& c : w) c /= z;
    return spectral_function(ed, w);
}

GroundState simulator_ground_state(const SWContext& ctx, double x) {
    if (x <= 0.0) throw NonPositiveX("simulator_ground_state: x must be positive");
    EigDecomp ed = herm_eig(ctx.h_dense(x));
    if (ed.values[1] - ed.values[0] < 1e-13)
        throw Degenerate("simulator_ground_state: unresolved ground degeneracy");
    GroundState out;
    const double scale = std::pow(x, -double(ctx.degree()));
    out.energy = scale * ed.values[0];
    out.gap = scale * (ed.values[1] - ed.values[0]);
    out.vector.resize(ed.values.size());
    for (std::size_t i = 0; i < out.vector.size(); ++i) out.vector[i] = ed.vectors(i, 0);
    std::size_t arg_max = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < out.vector.size(); ++i)
        if (std::abs(out.vector[i]) > best) {
            best = std::abs(out.vector[i]);
            arg_max = i;
        }
    const cplx phase = out.vector[arg_max] / std::abs(out.vector[arg_max]);
    for (auto& c : out.vector) c /= phase;
    return out;
}

namespace {

CMatrix ground_space_projector(const CMatrix& h, double tol) {
    EigDecomp ed = herm_eig(h);
    const std::size_t n = ed.values.size();
    CMatrix p(n, n);
    for (std::size_t k = 0; k < n && ed.values[k] - ed.values[0] <= tol; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p(i, j) += ed.vectors(i, k) * std::conj(ed.vectors(j, k));
    return p;
}

}  // namespace

SubspaceReport subspace_checks(const SWContext& ctx, const SWSeries& series, double x,
                               double beta) {
    SubspaceReport rep;
    rep.x = x;
    rep.beta = beta;
    const int d = ctx.degree();
    const double xmd = std::pow(x, -double(d));

    int m_dim = 2;
    for (int s : ctx.anc_sites()) m_dim = std::max(m_dim, int(ctx.lattice().local_dim(s)));
    const double n_anc = double(ctx.anc_sites().size());

    rep.block_residual_value = block_residual(ctx, series, x);

    // --- Theorem II: Gibbs state against the rotated effective Gibbs state.
    const CMatrix rho_sim = simulator_gibbs_state(ctx, x, beta);
    const CMatrix p0 = ctx.p0_dense();

    auto model_state = [&](int orders) {
        SWSeries trimmed = series;
        trimmed.q_max = orders;
        trimmed.v.resize(std::size_t(orders));
        trimmed.t_herm.resize(std::size_t(orders));
        const CMatrix h_eff = effective_hamiltonian(ctx, trimmed, x).assemble();
        const CMatrix rho_eff = gibbs(h_eff, beta).rho;
        const CMatrix u = mat_exp(t_dense(ctx, trimmed, x));
        // e^{-T} (rho_eff otimes P0) e^{T}
        const CMatrix product = embed(rho_eff, ctx.eff_sites(), ctx.lattice()) * p0;
        return u.dagger() * product * u;
    };

    const CMatrix model_full = model_state(series.q_max);
    rep.gibbs_distance = trace_norm(rho_sim - model_full);
    rep.gibbs_bound = 2.0 * double(m_dim - 1) * n_anc * std::exp(-0.5 * beta * ctx.delta() * xmd);
    // Series truncation keeps the comparison from reaching exact zero; the
    // allowance is measured from the last-order shift of the model state.
    if (series.q_max > d) {
        const CMatrix model_prev = model_state(series.q_max - 1);
        rep.gibbs_allowance = 10.0 * trace_norm(model_full - model_prev) + 1e-9;
    } else {
        rep.gibbs_allowance = 1e-9;
    }
    rep.gibbs_ok = rep.gibbs_distance <= rep.gibbs_bound + rep.gibbs_allowance;

    // --- Theorem III: ground-space projector identity. The effective gap
    // scaled by x^d sets the window separating the matching ground spaces.
    const CMatrix h_x = ctx.h_dense(x);
    const CMatrix h_eff = effective_hamiltonian(ctx, series, x).assemble();
    GroundState geff = ground(h_eff);
    const CMatrix p_eff = ground_space_projector(h_eff, 0.5 * geff.gap);
    const CMatrix p_sim = ground_space_projector(h_x, 0.5 * std::pow(x, double(d)) * geff.gap);
    const CMatrix u = mat_exp(t_dense(ctx, series, x));
    const CMatrix p_model = u.dagger() * (embed(p_eff, ctx.eff_sites(), ctx.lattice()) * p0) * u;
    rep.ground_distance = op_norm(p_sim - p_model);
    const double gap_unrescaled = std::pow(x, double(d)) * geff.gap;
    rep.ground_tol = 10.0 * rep.block_residual_value / gap_unrescaled + 1e-9;
    rep.ground_ok = rep.ground_distance <= rep.ground_tol;

    // --- Gibbs restriction at the effective inverse temperature beta x^-d.
    // The lemma's V is the block-diagonal remainder of the rotated
    // Hamiltonian, i.e. sum_q x^q ondiag(V^(q)) term by term.
    LocalHamiltonian v_sum(ctx.lattice());
    double xp = 1.0;
    for (int q = 1; q <= series.q_max; ++q) {
        xp *= x;
        for (const auto& term : series.v[std::size_t(q - 1)].terms()) {
            auto [p, qq] = projectors(ctx, term.support);
            v_sum.add_term_unchecked(term.support,
                                     xp * (p * term.matrix * p + qq * term.matrix * qq));
        }
        v_sum.set_identity_coefficient(v_sum.identity_coefficient() +
                                       xp * series.v[std::size_t(q - 1)].identity_coefficient());
    }
    const double v_fnorm = f_norm(v_sum, ctx.f());
    const CMatrix h0v = ctx.h0_dense() + v_sum.assemble();
    const GibbsState sigma = gibbs(h0v, beta * xmd);
    rep.p0_weight = trace(p0 * sigma.rho).real();
    const double exponent_arg = ctx.delta() - 3.0 * v_fnorm * ctx.f_norm_const();
    rep.p0_lower_bound =
        std::exp(-double(m_dim - 1) * n_anc * std::exp(-beta * xmd * exponent_arg));
    rep.p0_ok = rep.p0_weight >= rep.p0_lower_bound - 1e-9;

    return rep;
}

}  // namespace gadsim
