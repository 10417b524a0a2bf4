#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gadsim/errors.hpp"

namespace gadsim {

// Finite site set with an explicit metric table. Immutable after
// construction; freely shared between threads.
class Lattice {
  public:
    Lattice() = default;

    static Lattice chain(int n, std::size_t local_dim = 2);
    static Lattice ring(int n, std::size_t local_dim = 2);
    static Lattice grid(int w, int h, std::size_t local_dim = 2);
    static Lattice custom(std::vector<std::vector<double>> dist, std::vector<std::size_t> dims,
                          int dim_d);
    // Graph metric (all-pairs shortest path over unit-weight edges).
    static Lattice from_edges(int n, const std::vector<std::pair<int, int>>& edges, int dim_d,
                              std::size_t local_dim = 2);

    int num_sites() const { return int(dims_.size()); }
    std::size_t local_dim(int i) const { return dims_[std::size_t(check_site(i))]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dim() const;
    int dim_d() const { return dim_d_; }

    double dist(int i, int j) const { return dist_[std::size_t(check_site(i))][std::size_t(check_site(j))]; }
    double dist_to_set(int i, const std::vector<int>& a) const;
    double set_dist(const std::vector<int>& a, const std::vector<int>& b) const;
    double diameter() const;

    // B_r(A) = { i : dist(i, A) <= r }, sorted.
    std::vector<int> ball(const std::vector<int>& a, double r) const;
    std::vector<int> complement(const std::vector<int>& a) const;
    std::vector<int> all_sites() const;

    // k_D = sup over sites i and radii r >= 1 of |B_r(i)| r^-D; the sup is
    // attained either at r = 1 or at one of the distinct distances.
    double k_constant() const;

    // Distinct positive distances, ascending.
    std::vector<double> distance_values() const;

  private:
    int check_site(int i) const;

    std::vector<std::size_t> dims_;
    std::vector<std::vector<double>> dist_;
    int dim_d_ = 1;
};

// Decay profile F(r) for locality bounds. Two families: the power law
// (1+r)^-(D+1) and the exponentially weighted (1+r)^-(D+1) e^{-ar}.
// A scalar prefactor implements normalization.
struct FFunction {
    enum class Kind { PowerLaw, ExpWeighted };

    Kind kind = Kind::ExpWeighted;
    int dim_d = 1;
    double decay_a = 1.0;
    double prefactor = 1.0;

    static FFunction power_law(int dim_d) { return {Kind::PowerLaw, dim_d, 0.0, 1.0}; }
    static FFunction exp_weighted(int dim_d, double a) { return {Kind::ExpWeighted, dim_d, a, 1.0}; }

    double operator()(double r) const;
    std::string describe() const;
};

struct FConstants {
    double norm_f = 0.0;  // ||F|| = sup_i sum_j F(dist(i,j))
    double c_f = 0.0;     // C_F = sup_{i,j} sum_k F(d(i,k)) F(d(k,j)) / F(d(i,j))
};

FConstants f_constants(const FFunction& f, const Lattice& lattice);

// Rescale so that C_F = 1 on this lattice.
FFunction normalize(const FFunction& f, const Lattice& lattice);

}  // namespace gadsim
