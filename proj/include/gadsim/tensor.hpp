#pragma once

#include <vector>

#include "gadsim/cmatrix.hpp"
#include "gadsim/lattice.hpp"

namespace gadsim {

// Site-ordering convention used everywhere: site 0 is the most significant
// tensor factor, basis states enumerate lexicographically. Supports are
// sorted ascending and a term matrix on a support is written in the basis
// ordered the same way.

// Place a term acting on `support` into the full Hilbert space, identity on
// all other sites.
CMatrix embed(const CMatrix& term, const std::vector<int>& support,
              const std::vector<std::size_t>& dims);
CMatrix embed(const CMatrix& term, const std::vector<int>& support, const Lattice& lattice);

// Embed a term given on `from` (sorted) into the larger support `to`
// (sorted, containing `from`), identity on the extra factors.
CMatrix embed_into(const CMatrix& term, const std::vector<int>& from, const std::vector<int>& to,
                   const std::vector<std::size_t>& dims);

// Trace out every site not in `keep`; result is on the `keep` factors in
// ascending order. Preserves the trace.
CMatrix partial_trace(const CMatrix& a, const std::vector<std::size_t>& dims,
                      const std::vector<int>& keep);
CMatrix partial_trace(const CMatrix& a, const Lattice& lattice, const std::vector<int>& keep);

std::size_t subsystem_dim(const std::vector<int>& sites, const std::vector<std::size_t>& dims);

}  // namespace gadsim
