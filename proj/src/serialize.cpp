#include "gadsim/serialize.hpp"

#include <sstream>

#include "gadsim/pauli.hpp"

namespace gadsim {

Lattice lattice_from_json(const json& j) {
    if (j.contains("chain")) return Lattice::chain(j.at("chain").get<int>());
    if (j.contains("ring")) return Lattice::ring(j.at("ring").get<int>());
    if (j.contains("grid")) {
        const auto wh = j.at("grid");
        return Lattice::grid(wh.at(0).get<int>(), wh.at(1).get<int>());
    }
    if (j.contains("chain_with_ancillas")) {
        const auto& c = j.at("chain_with_ancillas");
        std::vector<std::array<int, 3>> triples;
        for (const auto& t : c.at("triples"))
            triples.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
        return chain_with_ancillas(c.at("n_eff").get<int>(), triples);
    }
    if (j.contains("custom")) {
        const auto& c = j.at("custom");
        std::vector<std::vector<double>> dist;
        for (const auto& row : c.at("dist")) dist.push_back(row.get<std::vector<double>>());
        std::vector<std::size_t> dims(dist.size(), 2);
        if (c.contains("dims")) dims = c.at("dims").get<std::vector<std::size_t>>();
        const int d = c.value("D", 1);
        return Lattice::custom(std::move(dist), std::move(dims), d);
    }
    throw Error("lattice_from_json: unrecognized lattice spec");
}

json lattice_to_json(const Lattice& l) {
    json dist = json::array();
    for (int i = 0; i < l.num_sites(); ++i) {
        json row = json::array();
        for (int k = 0; k < l.num_sites(); ++k) row.push_back(l.dist(i, k));
        dist.push_back(row);
    }
    return json{{"custom", json{{"dist", dist}, {"dims", l.dims()}, {"D", l.dim_d()}}}};
}

json hamiltonian_to_json(const LocalHamiltonian& h) {
    json terms = json::array();
    if (h.identity_coefficient() != 0.0)
        terms.push_back(json{{"support", json::array()},
                             {"pauli_terms", json::array({json{{"word", ""},
                                                               {"coeff", h.identity_coefficient()}}})}});
    for (const auto& t : h.terms()) {
        bool qubits_only = true;
        for (int s : t.support) qubits_only &= (h.lattice().local_dim(s) == 2);
        json entry{{"support", t.support}};
        if (qubits_only) {
            json words = json::array();
            const int k = int(t.support.size());
            for (const auto& word : pauli_words(k)) {
                const cplx c = pauli_coefficient(word, t.matrix);
                if (std::abs(c) < 1e-14) continue;
                if (std::abs(c.imag()) > 1e-12 * (1.0 + std::abs(c.real()))) {
                    qubits_only = false;  // fall through to dense
                    break;
                }
                words.push_back(json{{"word", word}, {"coeff", c.real()}});
            }
            if (qubits_only) {
                entry["pauli_terms"] = words;
                terms.push_back(entry);
                continue;
            }
        }
        json dense = json::array();
        for (const auto& v : t.matrix.data())
            dense.push_back(json::array({v.real(), v.imag()}));
        entry["dense"] = dense;
        terms.push_back(entry);
    }
    return terms;
}

LocalHamiltonian hamiltonian_from_json(const json& j, const Lattice& lattice) {
    LocalHamiltonian out{lattice};
    for (const auto& entry : j) {
        std::vector<int> support = entry.at("support").get<std::vector<int>>();
        const std::size_t dim = support.empty() ? 1 : subsystem_dim(support, lattice.dims());
        if (entry.contains("pauli_terms")) {
            CMatrix m(dim, dim);
            for (const auto& pt : entry.at("pauli_terms")) {
                const std::string word = pt.at("word").get<std::string>();
                const double coeff = pt.at("coeff").get<double>();
                if (word.empty()) {
                    for (std::size_t i = 0; i < dim; ++i) m(i, i) += coeff;
                    continue;
                }
                if (word.size() != support.size())
                    throw DimensionMismatch("hamiltonian_from_json: word/support mismatch");
                m += coeff * pauli_word_matrix(word);
            }
            if (support.empty())
                out.set_identity_coefficient(out.identity_coefficient() + m(0, 0).real());
            else
                out.add_term(support, m);
        } else if (entry.contains("dense")) {
            const auto& dense = entry.at("dense");
            if (dense.size() != dim * dim)
                throw DimensionMismatch("hamiltonian_from_json: dense size mismatch");
            CMatrix m(dim, dim);
            std::size_t idx = 0;
            for (const auto& v : dense) {
                m.data()[idx++] = cplx(v.at(0).get<double>(), v.at(1).get<double>());
            }
            out.add_term(support, m);
        } else {
            throw Error("hamiltonian_from_json: term needs pauli_terms or dense");
        }
    }
    return out;
}

json gadget_to_json(const GadgetSpec& spec) {
    const SWContext& ctx = *spec.ctx;
    json ladder;
    for (int alpha = 1; alpha <= ctx.degree(); ++alpha)
        ladder[std::to_string(alpha)] = hamiltonian_to_json(ctx.h_alpha(alpha));
    json out{{"lattice", lattice_to_json(ctx.lattice())},
             {"anc_sites", ctx.anc_sites()},
             {"delta", ctx.delta()},
             {"degree", ctx.degree()},
             {"ladder", ladder}};
    if (spec.target) out["target"] = hamiltonian_to_json(*spec.target);
    return out;
}

GadgetSpec gadget_from_json(const json& j) {
    Lattice lattice = lattice_from_json(j.at("lattice"));
    std::vector<int> anc = j.at("anc_sites").get<std::vector<int>>();
    const double delta = j.value("delta", 1.0);
    const int degree = j.at("degree").get<int>();
    std::vector<LocalHamiltonian> ladder;
    for (int alpha = 1; alpha <= degree; ++alpha) {
        const std::string key = std::to_string(alpha);
        if (j.at("ladder").contains(key))
            ladder.push_back(hamiltonian_from_json(j.at("ladder").at(key), lattice));
        else
            ladder.push_back(LocalHamiltonian{lattice});
    }
    GadgetSpec spec;
    spec.ctx = std::make_shared<SWContext>(lattice, anc, delta, std::move(ladder),
                                           FFunction::exp_weighted(lattice.dim_d(), 1.0));
    if (j.contains("target"))
        spec.target = hamiltonian_from_json(j.at("target"), spec.ctx->eff_lattice());
    return spec;
}

json node_plan_to_json(const NodePlan& plan) {
    return json{{"m", plan.m},
                {"x_max", plan.x_max},
                {"nodes", plan.nodes},
                {"weights", plan.weights},
                {"alpha", plan.alpha}};
}

json estimate_to_json(const Estimate& est, const NodePlan& plan) {
    return json{{"c0_hat", est.c0_hat},
                {"budget", est.budget},
                {"samples", est.samples},
                {"plan", node_plan_to_json(plan)}};
}

json series_to_json(const SWSeries& series) {
    json out = json::array();
    for (int q = 1; q <= series.q_max; ++q) {
        out.push_back(json{{"q", q},
                           {"terms", hamiltonian_to_json(series.v[std::size_t(q - 1)])},
                           {"f_norm", series.v_fnorm[std::size_t(q - 1)]},
                           {"bound", series.v_bound[std::size_t(q - 1)]}});
    }
    return out;
}

std::string series_summary_csv(const SWContext& ctx, const SWSeries& series) {
    std::ostringstream os;
    os << "q,f_norm,bound,t_f_norm,t_bound,offdiag_mass\n";
    os.precision(12);
    for (int q = 1; q <= series.q_max; ++q) {
        // Off-diagonal mass of V^(q): what the q-th order of the rotation has
        // to cancel; its x^q multiple is that order's block-residual share.
        double offdiag_mass = 0.0;
        for (const auto& term : series.v[std::size_t(q - 1)].terms()) {
            auto [p, qq] = projectors(ctx, term.support);
            offdiag_mass += op_norm(p * term.matrix * qq + qq * term.matrix * p);
        }
        os << q << ',' << series.v_fnorm[std::size_t(q - 1)] << ','
           << series.v_bound[std::size_t(q - 1)] << ',' << series.t_fnorm[std::size_t(q - 1)]
           << ',' << series.t_bound[std::size_t(q - 1)] << ',' << offdiag_mass << '\n';
    }
    return os.str();
}

}  // namespace gadsim
