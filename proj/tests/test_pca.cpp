#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semacc/error.hpp"
#include "semacc/pca.hpp"
#include "semacc/rng.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using checks::code_of;
using namespace semacc;

namespace {

Matrix random_matrix(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.gaussian();
    }
    return m;
}

}  // namespace

TEST_CASE("three collinear points, k=1") {
    Matrix data(3, 2);
    data << 0, 0, 1, 0, 2, 0;
    PcaModel model = pca_fit(data, 1);

    CHECK(model.mean(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(model.mean(1) == doctest::Approx(0.0).epsilon(1e-12));
    // sign convention makes the dominant entry positive
    CHECK(model.components(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(model.components(0, 1)) < 1e-12);
    // sample variance with divisor n-1: ((-1)^2 + 0 + 1^2) / 2
    CHECK(model.explained_variance(0) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix projected = pca_transform(model, data);
    CHECK(projected(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(projected(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(projected(2, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sign convention flips components whose largest entry is negative") {
    // data varies along -e1, so the raw eigenvector could point either way
    Matrix data(4, 3);
    data << 0, 0, 0, -1, 0.1, 0, -2, 0.2, 0, -3, 0.3, 0;
    PcaModel model = pca_fit(data, 1);
    // |component| is largest on axis 0; convention forces it positive
    CHECK(model.components(0, 0) > 0.9);
}

TEST_CASE("k bounds are enforced") {
    Matrix data = random_matrix(3, 2, 1);
    CHECK(code_of([&] { pca_fit(data, 0); }) == Errc::KTooLarge);
    CHECK(code_of([&] { pca_fit(data, 3); }) == Errc::KTooLarge);
    CHECK_NOTHROW(pca_fit(data, 2));
}

TEST_CASE("non-finite input is rejected") {
    Matrix data = random_matrix(4, 3, 2);
    data(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of([&] { pca_fit(data, 2); }) == Errc::NonFiniteValue);
}

TEST_CASE("components are orthonormal with non-increasing variances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Matrix data = random_matrix(20, 8, 100 + seed);
        PcaModel model = pca_fit(data, 5);
        Matrix gram = model.components * model.components.transpose();
        CHECK((gram - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
        for (Eigen::Index i = 0; i + 1 < 5; ++i) {
            CHECK(model.explained_variance(i) >= model.explained_variance(i + 1) - 1e-12);
        }
        CHECK(model.explained_variance(4) >= 0.0);
    }
}

TEST_CASE("covariance path agrees with the brute-force reference") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Matrix data = random_matrix(20, 8, 200 + seed);
        PcaModel model = pca_fit(data, 3);
        oracle::PcaReference ref = oracle::pca_reference(data, 3);
        CHECK(oracle::max_principal_angle(model.components, ref.components) < 1e-8);
        for (Eigen::Index i = 0; i < 3; ++i) {
            CHECK(model.explained_variance(i) ==
                  doctest::Approx(ref.variances(i)).epsilon(1e-9));
        }
    }
}

TEST_CASE("gram path (n < D) agrees with the covariance reference") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Matrix data = random_matrix(6, 40, 300 + seed);
        PcaModel model = pca_fit(data, 3);  // rank is at most 5
        Matrix gram = model.components * model.components.transpose();
        CHECK((gram - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);

        oracle::PcaReference ref = oracle::pca_reference(data, 3);
        CHECK(oracle::max_principal_angle(model.components, ref.components) < 1e-8);
        for (Eigen::Index i = 0; i < 3; ++i) {
            CHECK(model.explained_variance(i) ==
                  doctest::Approx(ref.variances(i)).epsilon(1e-9));
        }
    }
}

TEST_CASE("constant data yields zero variance and an orthonormal basis") {
    Matrix data = Matrix::Constant(5, 3, 2.5);
    PcaModel model = pca_fit(data, 3);
    CHECK(model.explained_variance.cwiseAbs().maxCoeff() < 1e-12);
    Matrix gram = model.components * model.components.transpose();
    CHECK((gram - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
    Matrix projected = pca_transform(model, data);
    CHECK(projected.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gram path completes the basis on rank-deficient data") {
    // 3 points on a line in 10-D: rank 1, k=2 needs one completed direction
    Matrix direction = Matrix::Zero(1, 10);
    direction(0, 0) = 3.0;
    direction(0, 5) = 4.0;  // length 5
    Matrix data(3, 10);
    data.row(0) = -direction.row(0);
    data.row(1) = Matrix::Zero(1, 10);
    data.row(2) = direction.row(0);
    PcaModel model = pca_fit(data, 2);
    CHECK(model.explained_variance(0) == doctest::Approx(25.0).epsilon(1e-9));
    CHECK(model.explained_variance(1) == doctest::Approx(0.0).epsilon(1e-12));
    Matrix gram = model.components * model.components.transpose();
    CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("full-rank fit reconstructs the data") {
    Matrix data = random_matrix(12, 5, 77);
    PcaModel model = pca_fit(data, 5);
    Matrix projected = pca_transform(model, data);
    Matrix reconstructed =
        (projected * model.components).rowwise() + model.mean.transpose();
    CHECK((reconstructed - data).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("transform rejects mismatched dimensions") {
    PcaModel model = pca_fit(random_matrix(6, 4, 5), 2);
    CHECK(code_of([&] { pca_transform(model, random_matrix(3, 5, 6)); }) ==
          Errc::DimensionMismatch);
}
