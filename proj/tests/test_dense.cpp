#include <cmath>

#include "doctest.h"
#include "gadsim/cmatrix.hpp"
#include "gadsim/eig.hpp"
#include "gadsim/expm.hpp"
#include "gadsim/pauli.hpp"
#include "gadsim/tensor.hpp"
#include "test_helpers.hpp"

using namespace gadsim;
using gadsim::testing::random_hermitian;
using gadsim::testing::random_matrix;
using gadsim::testing::random_with_norm;
using gadsim::testing::rng;

TEST_CASE("herm_eig: diagonal input sorts ascending with permutation vectors") {
    CMatrix h = CMatrix::diag_real({3.0, 1.0, 2.0});
    EigDecomp ed = herm_eig(h);
    CHECK(ed.values[0] == doctest::Approx(1.0));
    CHECK(ed.values[1] == doctest::Approx(2.0));
    CHECK(ed.values[2] == doctest::Approx(3.0));
    // Eigenvector for value 1 is e_1, etc.
    CHECK(std::abs(ed.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(ed.vectors(2, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(ed.vectors(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig: Pauli X spectrum") {
    EigDecomp ed = herm_eig(pauli_x());
    CHECK(ed.values[0] == doctest::Approx(-1.0));
    CHECK(ed.values[1] == doctest::Approx(1.0));
}

TEST_CASE("herm_eig: random reconstruction and unitarity") {
    auto gen = rng(11);
    for (std::size_t n : {2, 3, 5, 16, 64}) {
        CMatrix h = random_hermitian(gen, n, 2.0);
        EigDecomp ed = herm_eig(h);
        const double hnorm = op_norm(h);
        CHECK(ed.reconstruction_residual(h) <= 1e-9 * (1.0 + hnorm));
        CHECK(ed.unitarity_residual() <= 1e-10);
        for (std::size_t i = 0; i + 1 < ed.values.size(); ++i)
            CHECK(ed.values[i] <= ed.values[i + 1]);
    }
}

TEST_CASE("herm_eig: degenerate spectra stay orthonormal") {
    auto gen = rng(12);
    // Project a random Hermitian onto a degenerate-friendly form: A + A with
    // block identities.
    CMatrix h = CMatrix::identity(8);
    CMatrix r = random_hermitian(gen, 4, 1.0);
    CMatrix blown = kron(CMatrix::identity(2), r);  // every eigenvalue doubled
    EigDecomp ed = herm_eig(blown);
    CHECK(ed.reconstruction_residual(blown) <= 1e-9 * (1.0 + op_norm(blown)));
    CHECK(ed.unitarity_residual() <= 1e-10);
    (void)h;
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    auto gen = rng(13);
    CMatrix m = random_matrix(gen, 4, 1.0);
    CHECK_THROWS_AS(herm_eig(m), NonHermitian);
}

TEST_CASE("mat_exp: zero matrix gives identity") {
    CMatrix z(3, 3);
    CMatrix e = mat_exp(z);
    CHECK(op_norm(e - CMatrix::identity(3)) <= 1e-14);
}

TEST_CASE("mat_exp: diagonal log values") {
    CMatrix d = CMatrix::diag_real({std::log(2.0), std::log(3.0)});
    CMatrix e = mat_exp(d);
    CHECK(e(0, 0).real() == doctest::Approx(2.0));
    CHECK(e(1, 1).real() == doctest::Approx(3.0));
}

TEST_CASE("mat_exp: anti-Hermitian rotation matches closed form and eigen path") {
    const double theta = 1.57079632679489662;  // pi/2
    CMatrix a = cplx(0.0, theta) * pauli_x();
    CMatrix e = mat_exp(a);
    CMatrix expected = std::cos(theta) * CMatrix::identity(2) + cplx(0.0, std::sin(theta)) * pauli_x();
    CHECK(op_norm(e - expected) <= 1e-10);
    CHECK(op_norm(e * e.dagger() - CMatrix::identity(2)) <= 1e-10);

    // Compare the series path against the eigenbasis path for a shifted
    // (neither Hermitian nor anti-Hermitian) variant.
    CMatrix b = a + 0.3 * CMatrix::identity(2);
    CMatrix via_series = mat_exp(b);
    CMatrix via_eig = std::exp(0.3) * mat_exp(a);
    CHECK(op_norm(via_series - via_eig) <= 1e-10 * op_norm(via_eig));
}

TEST_CASE("mat_exp: inverse property for moderate norms") {
    auto gen = rng(21);
    for (int rep = 0; rep < 5; ++rep) {
        CMatrix a = random_with_norm(gen, 8, 5.0);
        CMatrix lhs = mat_exp(a) * mat_exp(cplx(-1.0, 0.0) * a);
        CHECK(op_norm(lhs - CMatrix::identity(8)) <= 1e-9);
    }
}

TEST_CASE("norms: identity and diagonal examples") {
    CMatrix eye = CMatrix::identity(8);
    CHECK(op_norm(eye) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(trace_norm(eye) == doctest::Approx(8.0).epsilon(1e-10));

    CMatrix d = CMatrix::diag({cplx(1.0, 0.0), cplx(-2.0, 0.0), cplx(0.0, 3.0)});
    CHECK(op_norm(d) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(trace_norm(d) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("norms: Hoelder sanity, trace_norm >= |trace|") {
    auto gen = rng(31);
    CMatrix a = random_matrix(gen, 32, 1.0);
    CHECK(trace_norm(a) >= std::abs(trace(a)) - 1e-9);
}

TEST_CASE("exp 1-norm bound: ||e^{X+Y}||_1 <= e^{||Y||} tr e^X") {
    auto gen = rng(32);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + (rep % 15);
        CMatrix x = random_hermitian(gen, n, 1.5);
        CMatrix y = random_with_norm(gen, n, 2.0 * (0.1 + 0.9 * double(rep) / 25.0));
        const double lhs = trace_norm(mat_exp(x + y));
        EigDecomp ed = herm_eig(x);
        double tr_ex = 0.0;
        for (double lam : ed.values) tr_ex += std::exp(lam);
        CHECK(lhs <= std::exp(op_norm(y)) * tr_ex * (1.0 + 1e-9));
    }
}

TEST_CASE("embed: single-site placements") {
    std::vector<std::size_t> dims{2, 2};
    CMatrix x0 = embed(pauli_x(), {0}, dims);
    CHECK(op_norm(x0 - kron(pauli_x(), pauli_i())) <= 1e-14);
    CMatrix z1 = embed(pauli_z(), {1}, dims);
    CHECK(op_norm(z1 - kron(pauli_i(), pauli_z())) <= 1e-14);
}

TEST_CASE("embed: two-site term equals kron") {
    std::vector<std::size_t> dims{2, 2};
    CMatrix xz = kron(pauli_x(), pauli_z());
    CHECK(op_norm(embed(xz, {0, 1}, dims) - xz) <= 1e-14);
}

TEST_CASE("partial_trace: product state factors") {
    auto gen = rng(41);
    CMatrix rho = random_hermitian(gen, 2, 1.0);
    CMatrix sigma = random_hermitian(gen, 2, 1.0);
    CMatrix joint = kron(rho, sigma);
    std::vector<std::size_t> dims{2, 2};
    CMatrix reduced = partial_trace(joint, dims, {0});
    CMatrix expected = trace(sigma) * rho;
    CHECK(op_norm(reduced - expected) <= 1e-12);
    CHECK(std::abs(trace(reduced) - trace(joint)) <= 1e-12 * (1.0 + std::abs(trace(joint))));
}

TEST_CASE("partial_trace: maximally entangled pair reduces to I/2") {
    CMatrix bell(4, 4);
    // |phi+><phi+| with |phi+> = (|00> + |11>)/sqrt(2)
    const double half = 0.5;
    bell(0, 0) = half;
    bell(0, 3) = half;
    bell(3, 0) = half;
    bell(3, 3) = half;
    CMatrix reduced = partial_trace(bell, std::vector<std::size_t>{2, 2}, {1});
    CHECK(op_norm(reduced - 0.5 * CMatrix::identity(2)) <= 1e-14);
}

TEST_CASE("partial_trace: 3-qubit keep {0,2} matches index-sum oracle") {
    auto gen = rng(42);
    CMatrix a = random_matrix(gen, 8, 1.0);
    std::vector<std::size_t> dims{2, 2, 2};
    CMatrix got = partial_trace(a, dims, {0, 2});

    // Oracle: direct sum over the middle site's computational basis. Site 0
    // is most significant: index = 4*b0 + 2*b1 + b2.
    CMatrix want(4, 4);
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int c0 = 0; c0 < 2; ++c0)
                for (int c2 = 0; c2 < 2; ++c2) {
                    cplx acc = 0.0;
                    for (int b1 = 0; b1 < 2; ++b1)
                        acc += a(std::size_t(4 * b0 + 2 * b1 + b2), std::size_t(4 * c0 + 2 * b1 + c2));
                    want(std::size_t(2 * b0 + b2), std::size_t(2 * c0 + c2)) = acc;
                }
    CHECK(op_norm(got - want) <= 1e-12);
}

TEST_CASE("embed/partial_trace duality on random inputs") {
    auto gen = rng(43);
    std::vector<std::size_t> dims{2, 2, 2};
    CMatrix t = random_hermitian(gen, 4, 1.0);
    CMatrix rho = random_hermitian(gen, 8, 1.0);
    const cplx lhs = trace(embed(t, {0, 2}, dims) * rho);
    const cplx rhs = trace(t * partial_trace(rho, dims, {0, 2}));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
}

TEST_CASE("heisenberg-spectrum prerequisite: spectral_function applies filters") {
    auto gen = rng(44);
    CMatrix h = random_hermitian(gen, 6, 1.0);
    EigDecomp ed = herm_eig(h);
    std::vector<cplx> ones(6, cplx(1.0, 0.0));
    CHECK(op_norm(spectral_function(ed, ones) - CMatrix::identity(6)) <= 1e-10);
}
