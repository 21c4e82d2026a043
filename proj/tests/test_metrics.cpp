#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include "semacc/error.hpp"
#include "semacc/metrics.hpp"
#include "semacc/rng.hpp"
#include "support/checks.hpp"
#include "support/testdata.hpp"

using checks::code_of;
using namespace semacc;

namespace {

ProbabilityMatrix make_probs(const Matrix& rows, std::vector<std::string> class_names = {}) {
    ProbabilityMatrix probs;
    probs.rows = rows;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        probs.ids.push_back("x" + std::to_string(i));
        probs.labels.push_back("p0");
    }
    if (class_names.empty()) {
        for (Eigen::Index j = 0; j < rows.cols(); ++j) {
            class_names.push_back("p" + std::to_string(j));
        }
    }
    probs.class_names = std::move(class_names);
    return probs;
}

Matrix random_distributions(Eigen::Index n, Eigen::Index c, std::uint64_t seed) {
    Rng rng(seed);
    Matrix rows(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < c; ++j) {
            rows(i, j) = 0.05 + rng.uniform();
            sum += rows(i, j);
        }
        rows.row(i) /= sum;
    }
    return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("validation rejects malformed probability matrices") {
    Matrix good(2, 2);
    good << 0.5, 0.5, 0.25, 0.75;
    CHECK_NOTHROW(make_probs(good).validate());

    ProbabilityMatrix out_of_range = make_probs(good);
    out_of_range.rows(0, 0) = 1.5;
    out_of_range.rows(0, 1) = -0.5;
    CHECK(code_of([&] { out_of_range.validate(); }) == Errc::InvalidDistribution);

    ProbabilityMatrix bad_sum = make_probs(good);
    bad_sum.rows(1, 1) = 0.65;  // row sums to 0.9
    CHECK(code_of([&] { bad_sum.validate(); }) == Errc::InvalidDistribution);

    ProbabilityMatrix duplicate = make_probs(good);
    duplicate.ids[1] = duplicate.ids[0];
    CHECK(code_of([&] { duplicate.validate(); }) == Errc::DuplicateId);

    ProbabilityMatrix short_names = make_probs(good);
    short_names.class_names.pop_back();
    CHECK(code_of([&] { short_names.validate(); }) == Errc::InvalidDistribution);

    ProbabilityMatrix nan_entry = make_probs(good);
    nan_entry.rows(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of([&] { nan_entry.validate(); }) == Errc::InvalidDistribution);
}

TEST_CASE("uniform distributions score exactly one") {
    Matrix rows = Matrix::Constant(8, 4, 0.25);
    InceptionScoreResult result = inception_score(make_probs(rows), 2);
    CHECK(result.mean == 1.0);
    CHECK(result.std_dev == 0.0);
}

TEST_CASE("balanced one-hot rows score the class count") {
    Matrix rows = Matrix::Zero(8, 4);
    for (Eigen::Index i = 0; i < 8; ++i) rows(i, i % 4) = 1.0;
    InceptionScoreResult result = inception_score(make_probs(rows), 1);
    CHECK(result.mean == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(result.std_dev == 0.0);
}

TEST_CASE("a remainder row joins the first chunk") {
    // 7 rows over 3 splits must partition 3/2/2. Each block below is uniform
    // within itself, so the score is exactly 1 per split iff the boundaries
    // fall at rows 3 and 5 — any other contiguous partition mixes blocks and
    // pushes the split variance above zero.
    Matrix rows(7, 2);
    rows << 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0.5, 0.5, 0.5, 0.5;
    InceptionScoreResult result = inception_score(make_probs(rows), 3);
    CHECK(result.mean == 1.0);
    CHECK(result.std_dev == 0.0);
}

TEST_CASE("scoring rejects bad split requests") {
    Matrix rows = Matrix::Constant(2, 2, 0.5);
    CHECK(code_of([&] { inception_score(make_probs(rows), 3); }) == Errc::TooFewRows);
    CHECK(code_of([&] { inception_score(make_probs(rows), 0); }) == Errc::InvalidConfig);
}

TEST_CASE("scores are invariant to order within a split") {
    Matrix rows = random_distributions(6, 3, 4);
    ProbabilityMatrix probs = make_probs(rows);
    InceptionScoreResult base = inception_score(probs, 2);

    Matrix permuted(6, 3);
    permuted.row(0) = rows.row(2);
    permuted.row(1) = rows.row(0);
    permuted.row(2) = rows.row(1);
    permuted.row(3) = rows.row(5);
    permuted.row(4) = rows.row(4);
    permuted.row(5) = rows.row(3);
    InceptionScoreResult swapped = inception_score(make_probs(permuted), 2);

    CHECK(swapped.mean == doctest::Approx(base.mean).epsilon(1e-9));
    CHECK(swapped.std_dev == doctest::Approx(base.std_dev).epsilon(1e-9));
}

TEST_CASE("shuffling is seeded and deterministic") {
    Matrix rows(7, 2);
    rows << 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0.5, 0.5, 0.5, 0.5;
    ProbabilityMatrix probs = make_probs(rows);

    InceptionScoreResult a = inception_score(probs, 3, 1);
    InceptionScoreResult b = inception_score(probs, 3, 1);
    CHECK(a.mean == b.mean);
    CHECK(a.std_dev == b.std_dev);

    // the unshuffled partition is block-pure (variance 0); a shuffle breaks it
    InceptionScoreResult plain = inception_score(probs, 3);
    CHECK(plain.std_dev == 0.0);
    CHECK(a.std_dev > 1e-9);

    // with a single split the permutation only reorders sums
    InceptionScoreResult whole = inception_score(probs, 1);
    InceptionScoreResult whole_shuffled = inception_score(probs, 1, 9);
    CHECK(whole_shuffled.mean == doctest::Approx(whole.mean).epsilon(1e-12));
}

TEST_CASE("scores stay within the class-count range") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Matrix rows = random_distributions(20, 5, 60 + seed);
        InceptionScoreResult result = inception_score(make_probs(rows), 4);
        CHECK(result.mean >= 1.0 - 1e-9);
        CHECK(result.mean <= 5.0 + 1e-9);
    }
}

TEST_CASE("direct accuracy scores argmax predictions") {
    Matrix rows = Matrix::Zero(4, 3);
    rows(0, 0) = 1.0;
    rows(1, 2) = 1.0;
    rows(2, 1) = 1.0;
    rows(3, 1) = 1.0;
    ProbabilityMatrix probs = make_probs(rows, {"cat", "dog", "fox"});
    CHECK(direct_accuracy(probs, {"cat", "fox", "dog", "dog"}) == 1.0);
    CHECK(direct_accuracy(probs, {"cat", "fox", "dog", "cat"}) ==
          doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("argmax ties resolve to the lowest class index") {
    Matrix rows = Matrix::Constant(3, 4, 0.25);
    ProbabilityMatrix probs = make_probs(rows, {"a", "b", "c", "d"});
    CHECK(direct_accuracy(probs, {"a", "a", "a"}) == 1.0);
    CHECK(direct_accuracy(probs, {"b", "b", "b"}) == 0.0);
}

TEST_CASE("labels outside the class list are rejected") {
    Matrix rows = Matrix::Constant(2, 2, 0.5);
    ProbabilityMatrix probs = make_probs(rows, {"a", "b"});
    CHECK(code_of([&] { direct_accuracy(probs, {"a", "z"}); }) == Errc::UnknownLabel);
    CHECK(code_of([&] { direct_accuracy(probs, {"a"}); }) == Errc::InvalidConfig);
}

TEST_CASE("accuracy is invariant under monotone rescaling of rows") {
    Matrix rows = random_distributions(15, 4, 8);
    ProbabilityMatrix probs = make_probs(rows);
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < 15; ++i) {
        labels.push_back("p" + std::to_string(i % 4));
    }
    double base = direct_accuracy(probs, labels);

    Matrix cubed = rows.array().pow(3.0).matrix();
    for (Eigen::Index i = 0; i < cubed.rows(); ++i) cubed.row(i) /= cubed.row(i).sum();
    CHECK(direct_accuracy(make_probs(cubed), labels) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("probability CSV round trip is bit exact") {
    auto dir = testdata::fresh_dir("metrics_roundtrip");
    Matrix rows = random_distributions(9, 3, 10);
    ProbabilityMatrix probs = make_probs(rows, {"ape", "bee", "cow"});
    probs.labels = {"ape", "bee", "cow", "ape", "bee", "cow", "ape", "bee", "cow"};

    save_probability_csv(probs, dir / "probs.csv");
    ProbabilityMatrix loaded = load_probability_csv(dir / "probs.csv");

    CHECK(loaded.ids == probs.ids);
    CHECK(loaded.labels == probs.labels);
    CHECK(loaded.class_names == probs.class_names);
    REQUIRE(loaded.rows.rows() == probs.rows.rows());
    REQUIRE(loaded.rows.cols() == probs.rows.cols());
    CHECK(std::memcmp(loaded.rows.data(), probs.rows.data(),
                      sizeof(double) * static_cast<std::size_t>(rows.size())) == 0);
}

TEST_CASE("a class manifest names the columns") {
    auto dir = testdata::fresh_dir("metrics_manifest");
    write_text(dir / "named.csv",
               "# classes cat,dog\nid,label,p0,p1\na,cat,0.75,0.25\nb,dog,0.1,0.9\n");
    ProbabilityMatrix named = load_probability_csv(dir / "named.csv");
    CHECK(named.class_names == std::vector<std::string>{"cat", "dog"});
    CHECK(named.rows(0, 0) == 0.75);

    write_text(dir / "bare.csv", "id,label,p0,p1\na,cat,0.75,0.25\n");
    ProbabilityMatrix bare = load_probability_csv(dir / "bare.csv");
    CHECK(bare.class_names == std::vector<std::string>{"p0", "p1"});

    write_text(dir / "short.csv", "# classes cat\nid,label,p0,p1\na,cat,0.75,0.25\n");
    CHECK(code_of([&] { load_probability_csv(dir / "short.csv"); }) == Errc::MalformedHeader);
}

TEST_CASE("probability CSV errors are specific") {
    auto dir = testdata::fresh_dir("metrics_errors");
    CHECK(code_of([&] { load_probability_csv(dir / "absent.csv"); }) == Errc::MissingFile);

    write_text(dir / "badheader.csv", "id,lbl,p0\na,x,1.0\n");
    CHECK(code_of([&] { load_probability_csv(dir / "badheader.csv"); }) ==
          Errc::MalformedHeader);

    write_text(dir / "badcol.csv", "id,label,q0\na,x,1.0\n");
    CHECK(code_of([&] { load_probability_csv(dir / "badcol.csv"); }) == Errc::MalformedHeader);

    write_text(dir / "ragged.csv", "id,label,p0,p1\na,x,0.5,0.5\nb,x,0.5\n");
    CHECK(code_of([&] { load_probability_csv(dir / "ragged.csv"); }) == Errc::RaggedRow);

    write_text(dir / "nonnum.csv", "id,label,p0,p1\na,x,0.5,oops\n");
    CHECK(code_of([&] { load_probability_csv(dir / "nonnum.csv"); }) == Errc::NonFiniteValue);

    write_text(dir / "headeronly.csv", "id,label,p0,p1\n");
    CHECK(code_of([&] { load_probability_csv(dir / "headeronly.csv"); }) == Errc::TooFewRows);

    write_text(dir / "empty.csv", "");
    CHECK(code_of([&] { load_probability_csv(dir / "empty.csv"); }) == Errc::MalformedHeader);

    write_text(dir / "badrow.csv", "id,label,p0,p1\na,x,0.9,0.2\n");
    CHECK(code_of([&] { load_probability_csv(dir / "badrow.csv"); }) ==
          Errc::InvalidDistribution);
}
