#include "gadsim/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "gadsim/expm.hpp"
#include "gadsim/pauli.hpp"

namespace gadsim {

GibbsState gibbs(const CMatrix& h, double beta) {
    if (beta < 0.0) throw OutOfDomain("gibbs: beta must be nonnegative");
    GibbsState out;
    out.beta = beta;
    out.eig = herm_eig(h);
    const std::size_t n = out.eig.values.size();
    const double e0 = out.eig.values.front();

    double z_shifted = 0.0;
    std::vector<cplx> weights(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = std::exp(-beta * (out.eig.values[k] - e0));
        weights[k] = w;
        z_shifted += w;
    }
    out.log_z = -beta * e0 + std::log(z_shifted);
    for (auto& w : weights) w /= z_shifted;
    out.rho = spectral_function(out.eig, weights);
    return out;
}

GroundState ground(const CMatrix& h, double degeneracy_tol) {
    EigDecomp ed = herm_eig(h);
    if (ed.values.size() < 2) throw DimensionMismatch("ground: need dimension >= 2");
    const double gap = ed.values[1] - ed.values[0];
    if (degeneracy_tol < 0.0)
        degeneracy_tol = 1e-8 * (1.0 + std::max(std::abs(ed.values.front()), std::abs(ed.values.back())));
    if (gap < degeneracy_tol) throw Degenerate("ground: ground space not unique within tolerance");

    GroundState out;
    out.energy = ed.values[0];
    out.gap = gap;
    out.vector.resize(ed.values.size());
    for (std::size_t i = 0; i < out.vector.size(); ++i) out.vector[i] = ed.vectors(i, 0);

    // Fix the phase: largest-magnitude component real positive.
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

double expect(const CMatrix& o, const GibbsState& state) {
    const cplx v = trace(o * state.rho);
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
        throw NonHermitian("expect: expectation has imaginary residue");
    return v.real();
}

double expect(const CMatrix& o, const GroundState& state) {
    const auto ov = matvec(o, state.vector);
    cplx v = 0.0;
    for (std::size_t i = 0; i < ov.size(); ++i) v += std::conj(state.vector[i]) * ov[i];
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
        throw NonHermitian("expect: expectation has imaginary residue");
    return v.real();
}

double cov(const CMatrix& rho, const CMatrix& x, const CMatrix& y) {
    if (rho.rows() != x.rows() || rho.rows() != y.rows())
        throw DimensionMismatch("cov: dimension mismatch");
    const cplx mixed = 0.5 * trace(rho * anticommutator(x, y));
    const cplx mx = trace(rho * x);
    const cplx my = trace(rho * y);
    return (mixed - mx * my).real();
}

CorrelationScan correlation_scan(const CMatrix& rho, const Lattice& lattice,
                                 const std::vector<CMatrix>& probes_in) {
    std::vector<CMatrix> probes = probes_in;
    if (probes.empty()) probes = {pauli_z(), pauli_x()};

    const int n = lattice.num_sites();
    std::vector<double> probe_norms;
    for (const auto& p : probes) probe_norms.push_back(op_norm(p));

    // Single-site probes on distinct sites commute, so every covariance is a
    // function of one- and two-site reduced density matrices.
    std::vector<CMatrix> rdm1;
    for (int i = 0; i < n; ++i) rdm1.push_back(partial_trace(rho, lattice, {i}));

    std::vector<CorrelationPoint> pts;
    for (double dval : lattice.distance_values()) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (std::abs(lattice.dist(i, j) - dval) > 1e-12) continue;
                const CMatrix rdm2 = partial_trace(rho, lattice, {i, j});
                for (std::size_t p = 0; p < probes.size(); ++p)
                    for (std::size_t q = 0; q < probes.size(); ++q) {
                        const cplx joint = trace(rdm2 * kron(probes[p], probes[q]));
                        const cplx mi = trace(rdm1[std::size_t(i)] * probes[p]);
                        const cplx nj = trace(rdm1[std::size_t(j)] * probes[q]);
                        const double c = std::abs((joint - mi * nj).real());
                        worst = std::max(worst, c / (probe_norms[p] * probe_norms[q]));
                    }
            }
        pts.push_back({dval, worst});
    }

    CorrelationScan scan;
    scan.points = pts;
    // Least-squares fit of log(value) against distance; report-only.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& p : pts) {
        if (p.value <= 1e-300) continue;
        const double lx = p.distance, ly = std::log(p.value);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count >= 2) {
        const double denom = double(count) * sxx - sx * sx;
        if (std::abs(denom) > 1e-300) {
            const double slope = (double(count) * sxy - sx * sy) / denom;
            const double intercept = (sy - slope * sx) / double(count);
            scan.fitted_k = std::exp(intercept);
            scan.fitted_xi = (slope < 0.0) ? -1.0 / slope : std::numeric_limits<double>::infinity();
        }
    }
    return scan;
}

std::string correlation_scan_csv(const CorrelationScan& scan) {
    std::ostringstream os;
    os.precision(12);
    os << "distance,value\n";
    for (const auto& p : scan.points) os << p.distance << ',' << p.value << '\n';
    return os.str();
}

TraceRatio trace_ratio(const CMatrix& x, const CMatrix& y) {
    if (!x.is_hermitian(1e-10 * (1.0 + x.max_abs())))
        throw NonHermitian("trace_ratio: X must be Hermitian");
    const double ynorm = op_norm(y);
    TraceRatio out;
    out.lower = 2.0 - std::exp(ynorm);
    out.upper = std::exp(ynorm);

    const CMatrix num = mat_exp(x + y);
    EigDecomp ed = herm_eig(x);
    double den = 0.0;
    for (double lam : ed.values) den += std::exp(lam);
    out.omega = std::abs(trace(num)) / den;
    return out;
}

}  // namespace gadsim
