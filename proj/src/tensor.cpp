#include "gadsim/tensor.hpp"

#include <algorithm>

namespace gadsim {

namespace {

// For each composite index of `sites`, the contribution to the global index
// under the site-major ordering (site 0 most significant).
std::vector<std::size_t> index_map(const std::vector<int>& sites,
                                   const std::vector<std::size_t>& dims) {
    const std::size_t nsites = dims.size();
    std::vector<std::size_t> stride(nsites, 1);
    for (std::size_t s = nsites; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

    std::size_t sub = 1;
    for (int s : sites) sub *= dims[std::size_t(s)];

    std::vector<std::size_t> map(sub, 0);
    for (std::size_t idx = 0; idx < sub; ++idx) {
        std::size_t rem = idx, acc = 0;
        for (std::size_t pos = sites.size(); pos-- > 0;) {
            const std::size_t d = dims[std::size_t(sites[pos])];
            acc += (rem % d) * stride[std::size_t(sites[pos])];
            rem /= d;
        }
        map[idx] = acc;
    }
    return map;
}

void require_sorted(const std::vector<int>& sites, const char* what) {
    if (!std::is_sorted(sites.begin(), sites.end()) ||
        std::adjacent_find(sites.begin(), sites.end()) != sites.end())
        throw Error(std::string(what) + ": support must be strictly ascending");
}

}  // namespace

std::size_t subsystem_dim(const std::vector<int>& sites, const std::vector<std::size_t>& dims) {
    std::size_t p = 1;
    for (int s : sites) {
        if (s < 0 || std::size_t(s) >= dims.size()) throw UnknownSite("subsystem_dim: bad site");
        p *= dims[std::size_t(s)];
    }
    return p;
}

CMatrix embed(const CMatrix& term, const std::vector<int>& support,
              const std::vector<std::size_t>& dims) {
    require_sorted(support, "embed");
    const std::size_t sub = subsystem_dim(support, dims);
    if (term.rows() != sub || term.cols() != sub)
        throw DimensionMismatch("embed: term dimension does not match its support");

    std::vector<int> rest;
    {
        std::size_t pos = 0;
        for (int s = 0; s < int(dims.size()); ++s) {
            if (pos < support.size() && support[pos] == s)
                ++pos;
            else
                rest.push_back(s);
        }
    }
    const auto sup_map = index_map(support, dims);
    const auto rest_map = index_map(rest, dims);

    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    CMatrix out(total, total);
    for (std::size_t si = 0; si < sub; ++si)
        for (std::size_t sj = 0; sj < sub; ++sj) {
            const cplx v = term(si, sj);
            if (v == cplx(0.0, 0.0)) continue;
            for (std::size_t r : rest_map) out(sup_map[si] + r, sup_map[sj] + r) = v;
        }
    return out;
}

CMatrix embed(const CMatrix& term, const std::vector<int>& support, const Lattice& lattice) {
    return embed(term, support, lattice.dims());
}

CMatrix embed_into(const CMatrix& term, const std::vector<int>& from, const std::vector<int>& to,
                   const std::vector<std::size_t>& dims) {
    require_sorted(from, "embed_into");
    require_sorted(to, "embed_into");
    // Treat `to` as a little lattice of its own.
    std::vector<std::size_t> sub_dims;
    std::vector<int> local_from;
    for (std::size_t pos = 0; pos < to.size(); ++pos) {
        sub_dims.push_back(dims[std::size_t(to[pos])]);
        if (std::binary_search(from.begin(), from.end(), to[pos])) local_from.push_back(int(pos));
    }
    if (local_from.size() != from.size())
        throw Error("embed_into: target support does not contain source support");
    return embed(term, local_from, sub_dims);
}

CMatrix partial_trace(const CMatrix& a, const std::vector<std::size_t>& dims,
                      const std::vector<int>& keep) {
    require_sorted(keep, "partial_trace");
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    if (a.rows() != total || a.cols() != total)
        throw DimensionMismatch("partial_trace: matrix does not match lattice dimension");

    std::vector<int> rest;
    {
        std::size_t pos = 0;
        for (int s = 0; s < int(dims.size()); ++s) {
            if (pos < keep.size() && keep[pos] == s)
                ++pos;
            else
                rest.push_back(s);
        }
    }
    const auto keep_map = index_map(keep, dims);
    const auto rest_map = index_map(rest, dims);

    const std::size_t kd = subsystem_dim(keep, dims);
    CMatrix out(kd, kd);
    for (std::size_t ki = 0; ki < kd; ++ki)
        for (std::size_t kj = 0; kj < kd; ++kj) {
            cplx acc = 0.0;
            for (std::size_t r : rest_map) acc += a(keep_map[ki] + r, keep_map[kj] + r);
            out(ki, kj) = acc;
        }
    return out;
}

CMatrix partial_trace(const CMatrix& a, const Lattice& lattice, const std::vector<int>& keep) {
    return partial_trace(a, lattice.dims(), keep);
}

}  // namespace gadsim
