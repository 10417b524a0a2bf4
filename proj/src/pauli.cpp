#include "gadsim/pauli.hpp"

namespace gadsim {

namespace {

CMatrix make_pauli(char c) {
    CMatrix m(2, 2);
    switch (c) {
        case 'I':
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case 'X':
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 'Y':
            m(0, 1) = cplx(0.0, -1.0);
            m(1, 0) = cplx(0.0, 1.0);
            break;
        case 'Z':
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw Error(std::string("unknown Pauli letter '") + c + "'");
    }
    return m;
}

}  // namespace

const CMatrix& pauli_i() {
    static const CMatrix m = make_pauli('I');
    return m;
}
const CMatrix& pauli_x() {
    static const CMatrix m = make_pauli('X');
    return m;
}
const CMatrix& pauli_y() {
    static const CMatrix m = make_pauli('Y');
    return m;
}
const CMatrix& pauli_z() {
    static const CMatrix m = make_pauli('Z');
    return m;
}

const CMatrix& pauli_from_char(char c) {
    switch (c) {
        case 'I':
            return pauli_i();
        case 'X':
            return pauli_x();
        case 'Y':
            return pauli_y();
        case 'Z':
            return pauli_z();
        default:
            throw Error(std::string("unknown Pauli letter '") + c + "'");
    }
}

CMatrix pauli_word_matrix(const std::string& word) {
    CMatrix out(1, 1);
    out(0, 0) = 1.0;
    for (char c : word) out = kron(out, pauli_from_char(c));
    return out;
}

cplx pauli_coefficient(const std::string& word, const CMatrix& m) {
    const int k = int(word.size());
    const std::size_t dim = std::size_t(1) << k;
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionMismatch("pauli_coefficient: matrix/word size mismatch");

    // W |l> = phase(l) |pi(l)> computed bitwise, so tr(W M) = sum_l phase(l) M(l, pi(l)).
    cplx t = 0.0;
    for (std::size_t l = 0; l < dim; ++l) {
        std::size_t target = l;
        cplx phase = 1.0;
        for (int q = 0; q < k; ++q) {
            const std::size_t bit_pos = std::size_t(k - 1 - q);  // site q is most significant
            const std::size_t bit = (l >> bit_pos) & 1u;
            switch (word[std::size_t(q)]) {
                case 'I':
                    break;
                case 'X':
                    target ^= (std::size_t(1) << bit_pos);
                    break;
                case 'Y':
                    target ^= (std::size_t(1) << bit_pos);
                    phase *= bit ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
                    break;
                case 'Z':
                    if (bit) phase = -phase;
                    break;
                default:
                    throw Error("pauli_coefficient: bad word");
            }
        }
        t += phase * m(l, target);
    }
    return t / double(dim);
}

std::vector<std::string> pauli_words(int k) {
    static const char letters[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<std::string> out;
    std::size_t count = 1;
    for (int i = 0; i < k; ++i) count *= 4;
    out.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::string w(std::size_t(k), 'I');
        std::size_t rem = idx;
        for (int q = k; q-- > 0;) {
            w[std::size_t(q)] = letters[rem % 4];
            rem /= 4;
        }
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace gadsim
