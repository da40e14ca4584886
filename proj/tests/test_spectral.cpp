#include <doctest.h>

#include <cmath>

#include "netctl/random_graph.hpp"
#include "netctl/spectral.hpp"

using namespace netctl;

namespace {

const Graph k2(2, {{0, 1, 1.0}});
const Graph p3(3, {{0, 1, 1.0}, {1, 2, 1.0}});
const Graph k3(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});

Eigen::VectorXd random_signal(int n, std::uint64_t seed) {
    auto eng = RngStream{seed, 0}.make_engine();
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = 2.0 * uniform01(eng) - 1.0;
    return x;
}

}  // namespace

TEST_CASE("shift operators on tiny graphs") {
    Eigen::MatrixXd l2 = build_shift(k2, ShiftKind::Laplacian).matrix;
    CHECK(l2(0, 0) == 1.0);
    CHECK(l2(0, 1) == -1.0);

    Eigen::MatrixXd w2 = build_shift(k2, ShiftKind::Adjacency).matrix;
    CHECK(w2(0, 0) == 0.0);
    CHECK(w2(0, 1) == 1.0);

    Eigen::MatrixXd l3 = build_shift(p3, ShiftKind::Laplacian).matrix;
    Eigen::MatrixXd expect(3, 3);
    expect << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK((l3 - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigendecomposition: hand-computed spectra") {
    auto b3 = eigendecompose(build_shift(p3, ShiftKind::Laplacian));
    CHECK(b3.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b3.eigenvalues(1) == doctest::Approx(1.0));
    CHECK(b3.eigenvalues(2) == doctest::Approx(3.0));

    auto b2 = eigendecompose(build_shift(k2, ShiftKind::Laplacian));
    CHECK(b2.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b2.eigenvalues(1) == doctest::Approx(2.0));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(b2.eigenvectors(0, 0) == doctest::Approx(s));
    CHECK(b2.eigenvectors(1, 0) == doctest::Approx(s));

    // K3 adjacency: descending order (2, -1, -1); the degenerate pair spans
    // the orthogonal complement of the constant mode.
    auto bk3 = eigendecompose(build_shift(k3, ShiftKind::Adjacency));
    CHECK(bk3.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(bk3.eigenvalues(1) == doctest::Approx(-1.0));
    CHECK(bk3.eigenvalues(2) == doctest::Approx(-1.0));
    Eigen::MatrixXd pair = bk3.eigenvectors.rightCols(2);
    Eigen::MatrixXd proj = pair * pair.transpose();
    Eigen::MatrixXd expect =
        Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
    CHECK((proj - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eigendecomposition conventions and reconstruction") {
    RngStream rng{11, 0};
    Graph g = generate_er(12, 0.4, rng, true);
    for (auto kind : {ShiftKind::Laplacian, ShiftKind::Adjacency}) {
        ShiftOperator s = build_shift(g, kind);
        auto basis = eigendecompose(s);
        // sign convention: largest-magnitude entry positive
        for (int c = 0; c < basis.size(); ++c) {
            Eigen::Index idx;
            basis.eigenvectors.col(c).cwiseAbs().maxCoeff(&idx);
            CHECK(basis.eigenvectors(idx, c) > 0.0);
        }
        // reconstruction
        Eigen::MatrixXd recon = basis.eigenvectors *
                                basis.eigenvalues.asDiagonal() *
                                basis.eigenvectors.transpose();
        CHECK(spectral_norm(Eigen::MatrixXd(recon - s.matrix)) <=
              1e-10 * std::max(1.0, spectral_norm(s)));
        // ordering
        for (int c = 1; c < basis.size(); ++c) {
            if (kind == ShiftKind::Laplacian)
                CHECK(basis.eigenvalues(c) >= basis.eigenvalues(c - 1) - 1e-12);
            else
                CHECK(basis.eigenvalues(c) <= basis.eigenvalues(c - 1) + 1e-12);
        }
    }
}

TEST_CASE("laplacian of a connected graph: one zero eigenvalue, constant mode") {
    RngStream rng{12, 0};
    Graph g = generate_geometric(20, 3, rng, true);
    auto basis = eigendecompose(build_shift(g, ShiftKind::Laplacian));
    CHECK(std::abs(basis.eigenvalues(0)) < 1e-8);
    CHECK(basis.eigenvalues(1) > 1e-8);
    const double c = 1.0 / std::sqrt(20.0);
    CHECK((basis.eigenvectors.col(0) - Eigen::VectorXd::Constant(20, c)).norm() < 1e-8);
}

TEST_CASE("gft/igft: transform pairs and Parseval") {
    auto basis = eigendecompose(build_shift(p3, ShiftKind::Laplacian));

    Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
    Eigen::VectorXd tilde = gft(basis, ones);
    CHECK(tilde(0) == doctest::Approx(std::sqrt(3.0)));
    CHECK(std::abs(tilde(1)) < 1e-12);
    CHECK(std::abs(tilde(2)) < 1e-12);

    for (int k = 0; k < 3; ++k) {
        Eigen::VectorXd ek = gft(basis, basis.eigenvectors.col(k));
        for (int i = 0; i < 3; ++i)
            CHECK(ek(i) == doctest::Approx(i == k ? 1.0 : 0.0).epsilon(1e-12));
    }

    Eigen::VectorXd x = random_signal(3, 5);
    CHECK((igft(basis, gft(basis, x)) - x).norm() < 1e-12);
    CHECK(gft(basis, x).norm() == doctest::Approx(x.norm()).epsilon(1e-10));
}

TEST_CASE("bandlimited synthesis") {
    auto basis = eigendecompose(build_shift(p3, ShiftKind::Laplacian));

    // k = n is the same as an igft of zero-padded coefficients
    Eigen::VectorXd full(3);
    full << 0.3, -1.2, 0.7;
    CHECK((synthesize_bandlimited(basis, {3, full}) - igft(basis, full)).norm() < 1e-12);

    // k = 1 on a connected Laplacian basis is the constant c/sqrt(N)
    Eigen::VectorXd c1(1);
    c1 << 2.0;
    Eigen::VectorXd x1 = synthesize_bandlimited(basis, {1, c1});
    CHECK((x1 - Eigen::VectorXd::Constant(3, 2.0 / std::sqrt(3.0))).norm() < 1e-12);

    // k = 2, coefficients (1,1): v1 + v2, with vanishing out-of-band content
    Eigen::VectorXd c2(2);
    c2 << 1.0, 1.0;
    Eigen::VectorXd x2 = synthesize_bandlimited(basis, {2, c2});
    CHECK((x2 - (basis.eigenvectors.col(0) + basis.eigenvectors.col(1))).norm() < 1e-12);
    CHECK(std::abs(gft(basis, x2)(2)) < 1e-10);
}

TEST_CASE("bandlimiting projector") {
    auto b2 = eigendecompose(build_shift(k2, ShiftKind::Laplacian));
    Eigen::MatrixXd h1 = bandlimiting_filter(b2, 1);
    CHECK(h1(0, 0) == doctest::Approx(0.5));
    CHECK(h1(0, 1) == doctest::Approx(0.5));

    RngStream rng{13, 0};
    Graph g = generate_er(10, 0.5, rng, true);
    auto basis = eigendecompose(build_shift(g, ShiftKind::Laplacian));
    CHECK((bandlimiting_filter(basis, 10) - Eigen::MatrixXd::Identity(10, 10))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (int k : {1, 3, 7}) {
        Eigen::MatrixXd h = bandlimiting_filter(basis, k);
        CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((h * h - h).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(spectral_norm(h) == doctest::Approx(1.0).epsilon(1e-10));
        Eigen::VectorXd coeffs = random_signal(k, 99);
        Eigen::VectorXd inband = synthesize_bandlimited(basis, {k, coeffs});
        CHECK((h * inband - inband).norm() < 1e-10);
    }
}

TEST_CASE("spectral norm") {
    CHECK(spectral_norm(build_shift(k2, ShiftKind::Laplacian)) == doctest::Approx(2.0));
    CHECK(spectral_norm(build_shift(p3, ShiftKind::Laplacian)) == doctest::Approx(3.0));
    CHECK(spectral_norm(Eigen::MatrixXd::Zero(4, 4)) == 0.0);
}
