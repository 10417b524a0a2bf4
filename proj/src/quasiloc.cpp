#include "gadsim/quasiloc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>

#include "gadsim/pauli.hpp"
#include "gadsim/tensor.hpp"

namespace gadsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// kappa_beta(t) = (2 / pi beta) log[(e^{pi|t|/beta} + 1)/(e^{pi|t|/beta} - 1)],
// evaluated through e^{-u} so large arguments cannot overflow; the ratio is
// coth(u/2), expanded as log(2/u) + u^2/12 + O(u^4) once u underflows e^-u.
double kappa_beta(double t, double beta) {
    const double u = kPi * std::abs(t) / beta;
    if (u < 1e-4) return (2.0 / (kPi * beta)) * (std::log(2.0 / u) + u * u / 12.0);
    const double em = std::exp(-u);
    return (2.0 / (kPi * beta)) * (std::log1p(em) - std::log1p(-em));
}

struct QuadCounter {
    int evals = 0;
    int limit = 2'000'000;
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth,
                        QuadCounter& counter) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    counter.evals += 2;
    if (counter.evals > counter.limit)
        throw QuadratureFailure("adaptive quadrature: evaluation limit exceeded");
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Roundoff floor: below this the split only resolves noise in delta.
    const double floor_tol =
        8.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
    if (std::abs(delta) <= std::max(15.0 * tol, floor_tol)) return left + right + delta / 15.0;
    if (depth <= 0) throw QuadratureFailure("adaptive quadrature: depth exhausted");
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, counter) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, counter);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    QuadCounter counter;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    counter.evals = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 56, counter);
}

}  // namespace

FilterSpec FilterSpec::qbp(double beta) {
    FilterSpec s;
    s.kind = Kind::Qbp;
    s.beta = beta;
    return s;
}

FilterSpec FilterSpec::spectral_flow(double gamma) {
    FilterSpec s;
    s.kind = Kind::SpectralFlow;
    s.gamma = gamma;
    return s;
}

double FilterSpec::effective_cutoff() const {
    if (time_cutoff > 0.0) return time_cutoff;
    // (4 / pi beta)/(e^{pi T / beta} - 1) <= tail tol
    return (beta / kPi) * std::log1p(4.0 / (kPi * beta * kappa_tail_tol));
}

CMatrix heisenberg(const CMatrix& o, const CMatrix& h, double t) {
    if (o.rows() != h.rows()) throw DimensionMismatch("heisenberg: dimension mismatch");
    EigDecomp ed = herm_eig(h);
    const std::size_t n = ed.values.size();
    // O(t)_{ab} = e^{i(E_a - E_b)t} O_{ab} in the eigenbasis.
    CMatrix o_eig = ed.vectors.dagger() * o * ed.vectors;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            o_eig(a, b) *= std::exp(cplx(0.0, (ed.values[a] - ed.values[b]) * t));
    return ed.vectors * o_eig * ed.vectors.dagger();
}

LRProfile lr_profile(const LocalHamiltonian& h, const CMatrix& o_a_term,
                     const std::vector<int>& support_a, const std::vector<int>& sites_b,
                     const std::vector<double>& times) {
    const Lattice& lat = h.lattice();
    const CMatrix o_a = embed(o_a_term, support_a, lat);
    const CMatrix h_dense = h.assemble();
    EigDecomp ed = herm_eig(h_dense);
    const std::size_t n = ed.values.size();
    CMatrix o_eig = ed.vectors.dagger() * o_a * ed.vectors;

    LRProfile out;
    out.times = times;
    for (int b : sites_b) out.distances.push_back(lat.dist_to_set(b, support_a));

    for (double t : times) {
        CMatrix phased = o_eig;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t bcol = 0; bcol < n; ++bcol)
                phased(a, bcol) *= std::exp(cplx(0.0, (ed.values[a] - ed.values[bcol]) * t));
        CMatrix o_t = ed.vectors * phased * ed.vectors.dagger();

        std::vector<double> row;
        for (int b : sites_b) {
            const CMatrix o_b = embed(pauli_z(), {b}, lat);
            row.push_back(op_norm(commutator(o_t, o_b)));
        }
        out.norms.push_back(std::move(row));
    }

    // Report-only decay-rate fit: log-norm against distance per time.
    for (const auto& row : out.norms) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int count = 0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] <= 1e-300) continue;
            sx += out.distances[i];
            sy += std::log(row[i]);
            sxx += out.distances[i] * out.distances[i];
            sxy += out.distances[i] * std::log(row[i]);
            ++count;
        }
        double rate = 0.0;
        if (count >= 2) {
            const double denom = double(count) * sxx - sx * sx;
            if (std::abs(denom) > 1e-300) rate = -(double(count) * sxy - sx * sy) / denom;
        }
        out.fitted_decay_rates.push_back(rate);
    }
    return out;
}

double qbp_filter_value(double omega, double beta, const FilterSpec& spec) {
    const double t_cut = spec.effective_cutoff();
    const double w = std::abs(omega);
    // khat(omega) = 2 int_0^T kappa(t) cos(omega t) dt, with t = v^2 to tame
    // the logarithmic endpoint of kappa at t = 0.
    const double v_max = std::sqrt(t_cut);
    auto integrand = [beta, w](double v) {
        if (v == 0.0) return 0.0;
        const double t = v * v;
        return 4.0 * v * kappa_beta(t, beta) * std::cos(w * t);
    };
    return integrate(integrand, 0.0, v_max, 0.5 * spec.quad_tol);
}

CMatrix qbp_operator(const CMatrix& h, const CMatrix& x, double beta, const FilterSpec& spec) {
    if (h.rows() != x.rows()) throw DimensionMismatch("qbp_operator: dimension mismatch");
    EigDecomp ed = herm_eig(h);
    const std::size_t n = ed.values.size();
    CMatrix x_eig = ed.vectors.dagger() * x * ed.vectors;

    // Distinct gaps repeat heavily; cache on omega rounded at 1e-12.
    std::unordered_map<long long, double> cache;
    auto filter = [&](double omega) {
        const long long key = llround(std::abs(omega) * 1e12);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double val = qbp_filter_value(std::abs(omega), beta, spec);
        cache.emplace(key, val);
        return val;
    };

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) x_eig(a, b) *= filter(ed.values[a] - ed.values[b]);
    return ed.vectors * x_eig * ed.vectors.dagger();
}

double qbp_derivative_check(const ParamFamily& family, double x0, double beta, double fd_step) {
    const CMatrix h_mid = family.eval(x0).assemble();
    const CMatrix dh = family.derivative(x0).assemble();
    if (op_norm(dh) == 0.0) {
        // Constant family: both sides vanish identically.
        return 0.0;
    }

    const CMatrix rho_plus = gibbs(family.eval(x0 + fd_step).assemble(), beta).rho;
    const CMatrix rho_minus = gibbs(family.eval(x0 - fd_step).assemble(), beta).rho;
    CMatrix fd = rho_plus - rho_minus;
    fd *= cplx(1.0 / (2.0 * fd_step), 0.0);

    const GibbsState gs = gibbs(h_mid, beta);
    const CMatrix phi = qbp_operator(h_mid, dh, beta, FilterSpec::qbp(beta));
    CMatrix rhs = anticommutator(gs.rho, phi);
    rhs *= cplx(-0.5 * beta, 0.0);
    const double mean = trace(gs.rho * phi).real();
    rhs += (beta * mean) * gs.rho;

    return trace_norm(fd - rhs);
}

cplx spectral_flow_filter(double omega, double gamma) {
    if (omega == 0.0) return cplx(0.0, 0.0);
    const double sign = (omega > 0.0) ? 1.0 : -1.0;
    if (std::abs(omega) <= gamma) return cplx(0.0, sign / gamma);
    return cplx(0.0, 1.0 / omega);
}

CMatrix spectral_flow_operator(const CMatrix& h, const CMatrix& x, double gamma) {
    if (gamma <= 0.0) throw OutOfDomain("spectral_flow_operator: gamma must be positive");
    if (h.rows() != x.rows()) throw DimensionMismatch("spectral_flow_operator: dimension mismatch");
    EigDecomp ed = herm_eig(h);
    const std::size_t n = ed.values.size();
    CMatrix x_eig = ed.vectors.dagger() * x * ed.vectors;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            x_eig(a, b) *= spectral_flow_filter(ed.values[a] - ed.values[b], gamma);
    return ed.vectors * x_eig * ed.vectors.dagger();
}

double sf_derivative_check(const ParamFamily& family, double x0, double fd_step, double gamma) {
    const CMatrix h_mid = family.eval(x0).assemble();
    const CMatrix dh = family.derivative(x0).assemble();
    if (op_norm(dh) == 0.0) return 0.0;

    GroundState mid = ground(h_mid);
    if (gamma <= 0.0) gamma = 0.9 * mid.gap;
    if (gamma >= mid.gap)
        throw OutOfDomain("sf_derivative_check: filter gamma must stay below the gap");

    GroundState plus = ground(family.eval(x0 + fd_step).assemble());
    GroundState minus = ground(family.eval(x0 - fd_step).assemble());
    const std::size_t n = mid.vector.size();
    std::vector<cplx> fd(n);
    for (std::size_t i = 0; i < n; ++i)
        fd[i] = (plus.vector[i] - minus.vector[i]) / (2.0 * fd_step);

    const CMatrix psi_op = spectral_flow_operator(h_mid, dh, gamma);
    std::vector<cplx> rhs = matvec(psi_op, mid.vector);
    for (auto& c : rhs) c *= cplx(0.0, 1.0);

    // The identity pins only the excited-space component; project the ground
    // component out of both sides before comparing.
    cplx overlap_fd = 0.0, overlap_rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        overlap_fd += std::conj(mid.vector[i]) * fd[i];
        overlap_rhs += std::conj(mid.vector[i]) * rhs[i];
    }
    double resid2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx diff = (fd[i] - overlap_fd * mid.vector[i]) - (rhs[i] - overlap_rhs * mid.vector[i]);
        resid2 += std::norm(diff);
    }
    return std::sqrt(resid2);
}

std::string lr_profile_csv(const LRProfile& profile) {
    std::ostringstream os;
    os.precision(12);
    os << "t,distance,value\n";
    for (std::size_t it = 0; it < profile.times.size(); ++it)
        for (std::size_t ib = 0; ib < profile.distances.size(); ++ib)
            os << profile.times[it] << ',' << profile.distances[ib] << ','
               << profile.norms[it][ib] << '\n';
    return os.str();
}

std::string gali_scan_csv(const std::vector<GaliPoint>& points) {
    std::ostringstream os;
    os.precision(12);
    os << "r0,value\n";
    for (const auto& p : points) os << p.r0 << ',' << p.difference << '\n';
    return os.str();
}

CMatrix truncate_to_ball(const CMatrix& o, const Lattice& lattice, const std::vector<int>& a,
                         double r) {
    const std::vector<int> ball = lattice.ball(a, r);
    const std::vector<int> outside = lattice.complement(ball);
    if (outside.empty()) return o;
    double dim_outside = 1.0;
    for (int s : outside) dim_outside *= double(lattice.local_dim(s));
    CMatrix reduced = partial_trace(o, lattice, ball);
    reduced *= cplx(1.0 / dim_outside, 0.0);
    return embed(reduced, ball, lattice);
}

std::vector<GaliPoint> gali_scan(const ParamFamily& family, const CMatrix& o_a_term,
                                 const std::vector<int>& support_a, const GaliMode& mode, double x,
                                 const std::vector<double>& r0_values) {
    const Lattice& lat = family.lattice();
    const CMatrix o_a = embed(o_a_term, support_a, lat);

    auto evaluate = [&](const CMatrix& h) {
        if (mode.gibbs_mode) return expect(o_a, gibbs(h, mode.beta));
        return expect(o_a, ground(h));
    };

    std::vector<GaliPoint> out;
    for (double r0 : r0_values) {
        const std::vector<int> region = lat.complement(lat.ball(support_a, r0));
        PartitionedFamily part{family, region};
        const double f_xx = evaluate(part.eval2(x, x).assemble());
        const double f_0x = evaluate(part.eval2(0.0, x).assemble());
        out.push_back({r0, std::abs(f_xx - f_0x)});
    }
    return out;
}

}  // namespace gadsim
