#include "gadsim/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gadsim/pauli.hpp"

namespace gadsim {

double LocalTerm::norm() const {
    if (support.empty()) return matrix.empty() ? 0.0 : std::abs(matrix(0, 0));
    return op_norm(matrix);
}

void LocalHamiltonian::add_term(std::vector<int> support, const CMatrix& matrix, double herm_tol) {
    if (!std::is_sorted(support.begin(), support.end()))
        std::sort(support.begin(), support.end());
    if (support.empty()) {
        if (matrix.rows() != 1 || matrix.cols() != 1)
            throw DimensionMismatch("add_term: identity component must be 1x1");
        if (std::abs(matrix(0, 0).imag()) > herm_tol)
            throw NonHermitian("add_term: identity coefficient not real");
        identity_ += matrix(0, 0).real();
        return;
    }
    const std::size_t dim = subsystem_dim(support, lattice_.dims());
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw DimensionMismatch("add_term: matrix does not match support dimension");
    if (matrix.hermiticity_defect() > herm_tol * (1.0 + matrix.max_abs()))
        throw NonHermitian("add_term: term fails Hermiticity check");

    for (auto& t : terms_) {
        if (t.support == support) {
            t.matrix += matrix;
            return;
        }
    }
    terms_.push_back({std::move(support), matrix});
}

void LocalHamiltonian::add_term_unchecked(std::vector<int> support, const CMatrix& matrix) {
    if (!std::is_sorted(support.begin(), support.end()))
        std::sort(support.begin(), support.end());
    if (support.empty()) {
        identity_ += matrix(0, 0).real();
        return;
    }
    const std::size_t dim = subsystem_dim(support, lattice_.dims());
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw DimensionMismatch("add_term_unchecked: matrix does not match support dimension");
    for (auto& t : terms_) {
        if (t.support == support) {
            t.matrix += matrix;
            return;
        }
    }
    terms_.push_back({std::move(support), matrix});
}

void LocalHamiltonian::add_scaled(const LocalHamiltonian& other, double factor) {
    identity_ += factor * other.identity_;
    for (const auto& t : other.terms_) add_term_unchecked(t.support, factor * t.matrix);
}

double LocalHamiltonian::hermiticity_defect() const {
    double worst = 0.0;
    for (const auto& t : terms_) worst = std::max(worst, t.matrix.hermiticity_defect());
    return worst;
}

double LocalHamiltonian::antihermiticity_defect() const {
    double worst = 0.0;
    for (const auto& t : terms_) worst = std::max(worst, t.matrix.antihermiticity_defect());
    return worst;
}

CMatrix LocalHamiltonian::assemble() const {
    const std::size_t dim = lattice_.total_dim();
    CMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = identity_;
    for (const auto& t : terms_) out += embed(t.matrix, t.support, lattice_);
    return out;
}

double LocalHamiltonian::max_term_norm() const {
    double worst = 0.0;
    for (const auto& t : terms_) worst = std::max(worst, t.norm());
    return worst;
}

int LocalHamiltonian::max_support_size() const {
    int worst = 0;
    for (const auto& t : terms_) worst = std::max(worst, int(t.support.size()));
    return worst;
}

LocalHamiltonian LocalHamiltonian::scaled(double factor) const {
    LocalHamiltonian out(lattice_);
    out.identity_ = factor * identity_;
    for (const auto& t : terms_) out.terms_.push_back({t.support, factor * t.matrix});
    return out;
}

double f_norm(const LocalHamiltonian& h, const FFunction& f) {
    const int n = h.lattice().num_sites();
    if (h.terms().empty()) return 0.0;
    std::vector<double> norms(h.terms().size());
    for (std::size_t t = 0; t < h.terms().size(); ++t) norms[t] = h.terms()[t].norm();

    double sup = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double total = 0.0;
            for (std::size_t t = 0; t < h.terms().size(); ++t) {
                const auto& s = h.terms()[t].support;
                if (std::binary_search(s.begin(), s.end(), i) &&
                    std::binary_search(s.begin(), s.end(), j))
                    total += norms[t];
            }
            if (total > 0.0) sup = std::max(sup, total / f(h.lattice().dist(i, j)));
        }
    return sup;
}

RestrictResult restrict_to(const LocalHamiltonian& h, const std::vector<int>& region,
                           const FFunction& f) {
    std::vector<int> sorted_region = region;
    std::sort(sorted_region.begin(), sorted_region.end());

    LocalHamiltonian out(h.lattice());
    out.set_identity_coefficient(h.identity_coefficient());
    for (const auto& t : h.terms()) {
        const bool inside = std::all_of(t.support.begin(), t.support.end(), [&](int s) {
            return std::binary_search(sorted_region.begin(), sorted_region.end(), s);
        });
        if (inside) out.add_term(t.support, t.matrix);
    }
    const double dropped_sites = double(h.lattice().num_sites()) - double(sorted_region.size());
    const FConstants fc = f_constants(f, h.lattice());
    const double bound = dropped_sites * f_norm(h, f) * fc.norm_f;
    return {std::move(out), bound};
}

LocalHamiltonian canonical_grouping(const LocalHamiltonian& h, double prune_threshold,
                                    double* dropped_mass) {
    // Pauli-decompose each term on its own support and regroup by the exact
    // (non-identity) sites of each word.
    std::map<std::vector<int>, CMatrix> buckets;
    double identity = h.identity_coefficient();

    for (const auto& t : h.terms()) {
        for (int s : t.support)
            if (h.lattice().local_dim(s) != 2)
                throw NonQubit("canonical_grouping: non-qubit site in support");
        const int k = int(t.support.size());
        for (const auto& word : pauli_words(k)) {
            const cplx c = pauli_coefficient(word, t.matrix);
            if (std::abs(c) == 0.0) continue;
            std::vector<int> sub_support;
            std::string sub_word;
            for (int q = 0; q < k; ++q) {
                if (word[std::size_t(q)] != 'I') {
                    sub_support.push_back(t.support[std::size_t(q)]);
                    sub_word.push_back(word[std::size_t(q)]);
                }
            }
            if (sub_support.empty()) {
                identity += c.real();
                continue;
            }
            CMatrix w = pauli_word_matrix(sub_word);
            auto it = buckets.find(sub_support);
            if (it == buckets.end())
                buckets.emplace(sub_support, c * w);
            else
                it->second += c * w;
        }
    }

    LocalHamiltonian out(h.lattice());
    out.set_identity_coefficient(identity);
    for (auto& [support, matrix] : buckets) {
        if (prune_threshold > 0.0) {
            const double nrm = op_norm(matrix);
            if (nrm < prune_threshold) {
                if (dropped_mass) *dropped_mass += nrm;
                continue;
            }
        }
        out.add_term_unchecked(support, matrix);
    }
    return out;
}

LocalHamiltonian lh_commutator(const LocalHamiltonian& x, const LocalHamiltonian& y,
                               double prune_threshold) {
    // Accumulate per support union; the result is generally non-Hermitian
    // (anti-Hermitian for Hermitian inputs), so skip the guard on insert.
    std::map<std::vector<int>, CMatrix> buckets;
    const auto& dims = x.lattice().dims();
    for (const auto& tx : x.terms()) {
        for (const auto& ty : y.terms()) {
            // Skip disjoint supports: they commute.
            bool overlap = false;
            for (int s : tx.support)
                if (std::binary_search(ty.support.begin(), ty.support.end(), s)) {
                    overlap = true;
                    break;
                }
            if (!overlap) continue;
            std::vector<int> u;
            std::set_union(tx.support.begin(), tx.support.end(), ty.support.begin(),
                           ty.support.end(), std::back_inserter(u));
            CMatrix a = embed_into(tx.matrix, tx.support, u, dims);
            CMatrix b = embed_into(ty.matrix, ty.support, u, dims);
            CMatrix comm = commutator(a, b);
            auto it = buckets.find(u);
            if (it == buckets.end())
                buckets.emplace(std::move(u), std::move(comm));
            else
                it->second += comm;
        }
    }

    // i[X,Y] is Hermitian when X and Y are; keep the raw commutator by
    // storing matrices as given (callers multiply by the right unit).
    LocalHamiltonian out(x.lattice());
    for (auto& [support, matrix] : buckets) {
        if (prune_threshold > 0.0 && op_norm(matrix) < prune_threshold) continue;
        // Bypass the Hermiticity guard: commutators of Hermitian terms are
        // anti-Hermitian and enter larger Hermitian combinations later.
        out.add_term_unchecked(support, matrix);
    }
    return out;
}

void ParamFamily::add_poly_term(std::vector<int> support, std::vector<CMatrix> coeffs) {
    std::sort(support.begin(), support.end());
    const std::size_t dim = subsystem_dim(support, lattice_.dims());
    for (const auto& c : coeffs)
        if (c.rows() != dim || c.cols() != dim)
            throw DimensionMismatch("add_poly_term: coefficient dimension mismatch");
    terms_.push_back({std::move(support), std::move(coeffs)});
}

void ParamFamily::check_domain(double x) const {
    if (x < x_lo_ || x > x_hi_) throw OutOfDomain("ParamFamily: x outside domain");
}

LocalHamiltonian ParamFamily::eval(double x) const {
    check_domain(x);
    LocalHamiltonian out(lattice_);
    for (const auto& t : terms_) {
        if (t.coeffs.empty()) continue;
        CMatrix acc = t.coeffs.back();
        for (std::size_t k = t.coeffs.size() - 1; k-- > 0;) acc = x * acc + t.coeffs[k];
        out.add_term(t.support, acc);
    }
    return out;
}

LocalHamiltonian ParamFamily::derivative(double x) const {
    check_domain(x);
    LocalHamiltonian out(lattice_);
    for (const auto& t : terms_) {
        if (t.coeffs.size() < 2) continue;
        CMatrix acc = double(t.coeffs.size() - 1) * t.coeffs.back();
        for (std::size_t k = t.coeffs.size() - 1; k-- > 1;) acc = x * acc + double(k) * t.coeffs[k];
        out.add_term(t.support, acc);
    }
    return out;
}

LocalHamiltonian PartitionedFamily::eval2(double x, double y) const {
    std::vector<int> sorted_region = region;
    std::sort(sorted_region.begin(), sorted_region.end());
    LocalHamiltonian out(base.lattice());
    for (const auto& t : base.terms()) {
        const bool inside = std::all_of(t.support.begin(), t.support.end(), [&](int s) {
            return std::binary_search(sorted_region.begin(), sorted_region.end(), s);
        });
        const double param = inside ? x : y;
        if (t.coeffs.empty()) continue;
        CMatrix acc = t.coeffs.back();
        for (std::size_t k = t.coeffs.size() - 1; k-- > 0;) acc = param * acc + t.coeffs[k];
        out.add_term(t.support, acc);
    }
    return out;
}

LocalHamiltonian pauli_decompose(const CMatrix& m, const Lattice& lattice,
                                 double drop_threshold_rel) {
    const int n = lattice.num_sites();
    for (int i = 0; i < n; ++i)
        if (lattice.local_dim(i) != 2) throw NonQubit("pauli_decompose: non-qubit site");
    if (m.rows() != lattice.total_dim())
        throw DimensionMismatch("pauli_decompose: matrix does not match lattice");

    const double scale = op_norm(m);
    const double drop = drop_threshold_rel * scale;

    std::map<std::vector<int>, CMatrix> buckets;
    double identity = 0.0;
    for (const auto& word : pauli_words(n)) {
        const cplx c = pauli_coefficient(word, m);
        if (std::abs(c) <= drop) continue;
        std::vector<int> support;
        std::string sub_word;
        for (int q = 0; q < n; ++q)
            if (word[std::size_t(q)] != 'I') {
                support.push_back(q);
                sub_word.push_back(word[std::size_t(q)]);
            }
        if (support.empty()) {
            identity += c.real();
            continue;
        }
        CMatrix w = pauli_word_matrix(sub_word);
        auto it = buckets.find(support);
        if (it == buckets.end())
            buckets.emplace(std::move(support), c * w);
        else
            it->second += c * w;
    }

    LocalHamiltonian out(lattice);
    out.set_identity_coefficient(identity);
    for (auto& [support, matrix] : buckets) out.add_term(support, matrix, 1e-8);
    return out;
}

}  // namespace gadsim
