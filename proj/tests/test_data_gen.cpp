#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "heatbvm/data_gen.hpp"
#include "heatbvm/kahan.hpp"
#include "heatbvm/spectral.hpp"

using namespace heatbvm;

namespace {

TruthSpec reference_truth(int m) {
    return TruthSpec(Diffusivity(0.01, 0.001, 0.1), ground_truth_f0(m), 1.5);
}

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "heatbvm_data_gen_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("noiseless data reproduces the exact forward map") {
    const int m = 20;
    const auto truth = reference_truth(m);
    const auto obs = generate(truth, 1.0, 100.0, m, 7, 0.0);
    REQUIRE(obs.truncation() == m);
    const auto kf0 = apply_k(truth.f0, truth.theta0, 1.0);
    for (int k = 1; k <= m; ++k) {
        CHECK(obs.x1[static_cast<std::size_t>(k - 1)] == truth.f0.coeff(k));
        CHECK(obs.x2[static_cast<std::size_t>(k - 1)] == kf0.coeff(k));
    }
    CHECK(obs.n == 100.0);
    CHECK(obs.T == 1.0);
    CHECK(obs.theta0 == 0.01);
    CHECK(obs.seed == 7);
}

TEST_CASE("generation replays exactly for a fixed seed") {
    const auto truth = reference_truth(30);
    const auto a = generate(truth, 1.0, 1e4, 30, 99);
    const auto b = generate(truth, 1.0, 1e4, 30, 99);
    const auto c = generate(truth, 1.0, 1e4, 30, 100);
    CHECK(a.x1 == b.x1);
    CHECK(a.x2 == b.x2);
    CHECK(a.x1 != c.x1);
    CHECK(a.x2 != c.x2);
}

TEST_CASE("noise has variance 1/n and the channels are independent") {
    const int m = 4;
    const auto truth = reference_truth(m);
    const double n = 25.0;
    const auto kf0 = apply_k(truth.f0, truth.theta0, 1.0);
    const int reps = 20000;
    KahanSum s1, s1_sq, s2, s2_sq, cross;
    for (int i = 0; i < reps; ++i) {
        const auto obs = generate(truth, 1.0, n, m, 40000 + static_cast<std::uint64_t>(i));
        const double e1 = obs.x1[0] - truth.f0.coeff(1);
        const double e2 = obs.x2[0] - kf0.coeff(1);
        s1.add(e1);
        s1_sq.add(e1 * e1);
        s2.add(e2);
        s2_sq.add(e2 * e2);
        cross.add(e1 * e2);
    }
    const double m1 = s1.value() / reps;
    const double m2 = s2.value() / reps;
    const double v1 = s1_sq.value() / reps - m1 * m1;
    const double v2 = s2_sq.value() / reps - m2 * m2;
    const double cov = cross.value() / reps - m1 * m2;
    CHECK(std::abs(v1 - 1.0 / n) < 0.05 / n);
    CHECK(std::abs(v2 - 1.0 / n) < 0.05 / n);
    CHECK(std::abs(cov) < 0.05 / n);
    CHECK(std::abs(m1) < 5.0 / std::sqrt(n * reps));
    CHECK(std::abs(m2) < 5.0 / std::sqrt(n * reps));
}

TEST_CASE("noise is independent across coefficients within one draw") {
    const int m = 2;
    const auto truth = reference_truth(m);
    const int reps = 20000;
    KahanSum cross;
    for (int i = 0; i < reps; ++i) {
        const auto obs = generate(truth, 1.0, 1.0, m, 80000 + static_cast<std::uint64_t>(i));
        const double e1 = obs.x1[0] - truth.f0.coeff(1);
        const double e2 = obs.x1[1] - truth.f0.coeff(2);
        cross.add(e1 * e2);
    }
    CHECK(std::abs(cross.value() / reps) < 0.05);
}

TEST_CASE("generate validates its arguments") {
    const auto truth = reference_truth(10);
    CHECK_THROWS_AS(generate(truth, 0.0, 100.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate(truth, 1.0, 0.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate(truth, 1.0, 100.0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate(truth, 1.0, 100.0, 20, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate(truth, 1.0, 100.0, 10, 1, -1.0), std::invalid_argument);
}

TEST_CASE("CSV round trip is bit exact and carries the metadata") {
    const auto dir = temp_dir();
    const auto csv = dir / "obs.csv";
    const auto truth = reference_truth(25);
    const auto obs = generate(truth, 2.0, 1e5, 25, 31337);
    save_observations_csv(obs, csv);

    const auto back = load_observations_csv(csv);
    CHECK(back.x1 == obs.x1);
    CHECK(back.x2 == obs.x2);
    CHECK(back.n == obs.n);
    CHECK(back.T == obs.T);
    CHECK(back.theta0 == obs.theta0);
    CHECK(back.seed == obs.seed);

    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,x1,x2");
    CHECK(std::filesystem::exists(dir / "obs.meta.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("loading rejects missing or malformed files") {
    const auto dir = temp_dir();
    CHECK_THROWS_AS(load_observations_csv(dir / "absent.csv"), std::runtime_error);

    const auto bad_header = dir / "bad_header.csv";
    {
        std::ofstream out(bad_header);
        out << "a,b,c\n1,0.5,0.5\n";
    }
    {
        std::ofstream meta(dir / "bad_header.meta.json");
        meta << "{\"T\":1.0,\"m\":1,\"n\":100.0,\"seed\":1,\"theta0\":0.01}\n";
    }
    CHECK_THROWS_AS(load_observations_csv(bad_header), std::runtime_error);

    const auto bad_field = dir / "bad_field.csv";
    {
        std::ofstream out(bad_field);
        out << "k,x1,x2\n1,zap,0.5\n";
    }
    {
        std::ofstream meta(dir / "bad_field.meta.json");
        meta << "{\"T\":1.0,\"m\":1,\"n\":100.0,\"seed\":1,\"theta0\":0.01}\n";
    }
    CHECK_THROWS_AS(load_observations_csv(bad_field), std::runtime_error);

    const auto no_meta = dir / "no_meta.csv";
    {
        std::ofstream out(no_meta);
        out << "k,x1,x2\n1,0.5,0.5\n";
    }
    CHECK_THROWS_AS(load_observations_csv(no_meta), std::runtime_error);
    std::filesystem::remove_all(dir);
}
