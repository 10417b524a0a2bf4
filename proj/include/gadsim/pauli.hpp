#pragma once

#include <string>
#include <vector>

#include "gadsim/cmatrix.hpp"

namespace gadsim {

const CMatrix& pauli_i();
const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();

// Single-qubit Pauli from a character in "IXYZ".
const CMatrix& pauli_from_char(char c);

// Tensor product of single-qubit Paulis, site 0 most significant.
CMatrix pauli_word_matrix(const std::string& word);

// tr(W M) / 2^k for the word W on k qubits (M is 2^k x 2^k).
cplx pauli_coefficient(const std::string& word, const CMatrix& m);

// All length-k words in lexicographic I < X < Y < Z order.
std::vector<std::string> pauli_words(int k);

}  // namespace gadsim
