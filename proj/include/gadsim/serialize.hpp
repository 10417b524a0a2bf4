#pragma once

#include <string>

#include "json.hpp"

#include "gadsim/extrapolation.hpp"
#include "gadsim/gadgets.hpp"
#include "gadsim/hamiltonian.hpp"

namespace gadsim {

using json = nlohmann::ordered_json;

// Lattice from config: {"chain": n}, {"ring": n}, {"grid": [w,h]},
// {"custom": {"dist": [[...]], "dims": [...], "D": d}} or
// {"chain_with_ancillas": {"n_eff": n, "triples": [[i,j,k], ...]}}.
Lattice lattice_from_json(const json& j);
json lattice_to_json(const Lattice& l);

// Term lists: [{support: [...], pauli_terms: [{word, coeff}, ...]}] or
// [{support: [...], dense: [[re, im], ...]}].
json hamiltonian_to_json(const LocalHamiltonian& h);
LocalHamiltonian hamiltonian_from_json(const json& j, const Lattice& lattice);

json gadget_to_json(const GadgetSpec& spec);
GadgetSpec gadget_from_json(const json& j);

json node_plan_to_json(const NodePlan& plan);
json estimate_to_json(const Estimate& est, const NodePlan& plan);

json series_to_json(const SWSeries& series);
std::string series_summary_csv(const SWContext& ctx, const SWSeries& series);

}  // namespace gadsim
