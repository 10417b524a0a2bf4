#include "gadsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace gadsim {

namespace {

void check_metric(const std::vector<std::vector<double>>& d) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i].size() != n) throw DimensionMismatch("Lattice: metric table not square");
        if (d[i][i] != 0.0) throw Error("Lattice: metric nonzero on diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] < 0.0) throw Error("Lattice: negative distance");
            if (std::abs(d[i][j] - d[j][i]) > 1e-12) throw Error("Lattice: metric not symmetric");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (d[i][j] > d[i][k] + d[k][j] + 1e-12)
                    throw Error("Lattice: triangle inequality violated");
}

}  // namespace

Lattice Lattice::chain(int n, std::size_t local_dim) {
    const std::size_t un = std::size_t(n);
    std::vector<std::vector<double>> d(un, std::vector<double>(un, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[std::size_t(i)][std::size_t(j)] = std::abs(i - j);
    return custom(std::move(d), std::vector<std::size_t>(un, local_dim), 1);
}

Lattice Lattice::ring(int n, std::size_t local_dim) {
    const std::size_t un = std::size_t(n);
    std::vector<std::vector<double>> d(un, std::vector<double>(un, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int raw = std::abs(i - j);
            d[std::size_t(i)][std::size_t(j)] = std::min(raw, n - raw);
        }
    return custom(std::move(d), std::vector<std::size_t>(un, local_dim), 1);
}

Lattice Lattice::grid(int w, int h, std::size_t local_dim) {
    const int n = w * h;
    const std::size_t un = std::size_t(n);
    std::vector<std::vector<double>> d(un, std::vector<double>(un, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int xi = i % w, yi = i / w, xj = j % w, yj = j / w;
            d[std::size_t(i)][std::size_t(j)] = std::abs(xi - xj) + std::abs(yi - yj);
        }
    return custom(std::move(d), std::vector<std::size_t>(un, local_dim), 2);
}

Lattice Lattice::custom(std::vector<std::vector<double>> dist, std::vector<std::size_t> dims,
                        int dim_d) {
    if (dist.size() != dims.size()) throw DimensionMismatch("Lattice: dims/metric size mismatch");
    check_metric(dist);
    Lattice l;
    l.dist_ = std::move(dist);
    l.dims_ = std::move(dims);
    l.dim_d_ = dim_d;
    return l;
}

Lattice Lattice::from_edges(int n, const std::vector<std::pair<int, int>>& edges, int dim_d,
                            std::size_t local_dim) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(std::size_t(n), std::vector<double>(std::size_t(n), inf));
    for (int i = 0; i < n; ++i) d[std::size_t(i)][std::size_t(i)] = 0.0;
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw UnknownSite("from_edges: bad endpoint");
        d[std::size_t(u)][std::size_t(v)] = 1.0;
        d[std::size_t(v)][std::size_t(u)] = 1.0;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double via = d[std::size_t(i)][std::size_t(k)] + d[std::size_t(k)][std::size_t(j)];
                if (via < d[std::size_t(i)][std::size_t(j)]) d[std::size_t(i)][std::size_t(j)] = via;
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(d[std::size_t(i)][std::size_t(j)]))
                throw Error("from_edges: graph not connected");
    return custom(std::move(d), std::vector<std::size_t>(std::size_t(n), local_dim), dim_d);
}

int Lattice::check_site(int i) const {
    if (i < 0 || i >= num_sites()) throw UnknownSite("Lattice: site index out of range");
    return i;
}

std::size_t Lattice::total_dim() const {
    std::size_t p = 1;
    for (std::size_t d : dims_) p *= d;
    return p;
}

double Lattice::dist_to_set(int i, const std::vector<int>& a) const {
    double best = std::numeric_limits<double>::infinity();
    for (int s : a) best = std::min(best, dist(i, s));
    return best;
}

double Lattice::set_dist(const std::vector<int>& a, const std::vector<int>& b) const {
    double best = std::numeric_limits<double>::infinity();
    for (int s : a) best = std::min(best, dist_to_set(s, b));
    return best;
}

double Lattice::diameter() const {
    double worst = 0.0;
    for (int i = 0; i < num_sites(); ++i)
        for (int j = 0; j < num_sites(); ++j) worst = std::max(worst, dist(i, j));
    return worst;
}

std::vector<int> Lattice::ball(const std::vector<int>& a, double r) const {
    for (int s : a) check_site(s);
    std::vector<int> out;
    for (int i = 0; i < num_sites(); ++i)
        if (dist_to_set(i, a) <= r + 1e-12) out.push_back(i);
    return out;
}

std::vector<int> Lattice::complement(const std::vector<int>& a) const {
    std::set<int> in(a.begin(), a.end());
    std::vector<int> out;
    for (int i = 0; i < num_sites(); ++i)
        if (!in.count(i)) out.push_back(i);
    return out;
}

std::vector<int> Lattice::all_sites() const {
    std::vector<int> out;
    out.reserve(std::size_t(num_sites()));
    for (int i = 0; i < num_sites(); ++i) out.push_back(i);
    return out;
}

std::vector<double> Lattice::distance_values() const {
    std::set<double> vals;
    for (int i = 0; i < num_sites(); ++i)
        for (int j = 0; j < num_sites(); ++j)
            if (dist(i, j) > 0.0) vals.insert(dist(i, j));
    return {vals.begin(), vals.end()};
}

double Lattice::k_constant() const {
    // |B_r(i)| is a step function of r, so the sup over r >= 1 is attained
    // at r = 1 or at a distance value.
    std::vector<double> radii{1.0};
    for (double v : distance_values())
        if (v >= 1.0) radii.push_back(v);
    double worst = 0.0;
    for (int i = 0; i < num_sites(); ++i)
        for (double r : radii) {
            const double count = double(ball({i}, r).size());
            worst = std::max(worst, count * std::pow(r, -double(dim_d_)));
        }
    return worst;
}

double FFunction::operator()(double r) const {
    const double base = std::pow(1.0 + r, -double(dim_d + 1));
    if (kind == Kind::PowerLaw) return prefactor * base;
    return prefactor * base * std::exp(-decay_a * r);
}

std::string FFunction::describe() const {
    if (kind == Kind::PowerLaw)
        return "power_law(D=" + std::to_string(dim_d) + ", prefactor=" + std::to_string(prefactor) + ")";
    return "exp_weighted(D=" + std::to_string(dim_d) + ", a=" + std::to_string(decay_a) +
           ", prefactor=" + std::to_string(prefactor) + ")";
}

FConstants f_constants(const FFunction& f, const Lattice& lattice) {
    const int n = lattice.num_sites();
    FConstants out;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += f(lattice.dist(i, j));
        out.norm_f = std::max(out.norm_f, row);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double conv = 0.0;
            for (int k = 0; k < n; ++k) conv += f(lattice.dist(i, k)) * f(lattice.dist(k, j));
            out.c_f = std::max(out.c_f, conv / f(lattice.dist(i, j)));
        }
    return out;
}

FFunction normalize(const FFunction& f, const Lattice& lattice) {
    const FConstants c = f_constants(f, lattice);
    FFunction out = f;
    out.prefactor = f.prefactor / c.c_f;
    return out;
}

}  // namespace gadsim
