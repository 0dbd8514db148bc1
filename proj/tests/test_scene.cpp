#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "risee/harness.hpp"
#include "risee/scene.hpp"

using namespace risee;

namespace {
constexpr double kLambda = 0.0571;
}

TEST_CASE("ris grid placement") {
    SUBCASE("single element sits at the origin") {
        const ElementGrid g = build_ris_grid(1, 0.01);
        REQUIRE(g.size() == 1);
        CHECK(g.coordinates[0].x == 0.0);
        CHECK(g.coordinates[0].y == 0.0);
        CHECK(g.coordinates[0].z == 0.0);
    }

    SUBCASE("2x2 lattice at quarter-wavelength spacing") {
        const ElementGrid g = build_ris_grid(2, kLambda / 4.0);
        REQUIRE(g.size() == 4);
        const double half = kLambda / 8.0;  // 0.0071375
        for (const auto& c : g.coordinates) {
            CHECK(c.x == 0.0);
            CHECK(std::abs(std::abs(c.y) - half) < 1e-15);
            CHECK(std::abs(std::abs(c.z) - half) < 1e-15);
        }
        // all four sign combinations present
        std::set<std::pair<int, int>> signs;
        for (const auto& c : g.coordinates)
            signs.insert({c.y > 0 ? 1 : -1, c.z > 0 ? 1 : -1});
        CHECK(signs.size() == 4);
    }

    SUBCASE("grid-adjacent elements are spacing apart everywhere") {
        const double spacing = kLambda / 4.0;  // 0.0142750
        const ElementGrid g = build_ris_grid(30, spacing);
        REQUIRE(g.size() == 900);
        for (std::size_t i = 0; i < 30; ++i)
            for (std::size_t j = 0; j + 1 < 30; ++j) {
                const auto& a = g.coordinates[i * 30 + j];
                const auto& b = g.coordinates[i * 30 + j + 1];
                CHECK(pairwise_distance(a, b) == doctest::Approx(spacing).epsilon(1e-12));
                const auto& c = g.coordinates[j * 30 + i];
                const auto& d = g.coordinates[(j + 1) * 30 + i];
                CHECK(pairwise_distance(c, d) == doctest::Approx(spacing).epsilon(1e-12));
            }
    }

    SUBCASE("reflection symmetry about both grid axes") {
        const ElementGrid g = build_ris_grid(5, 0.03);
        auto key = [](double y, double z) {
            return std::pair<long, long>{std::lround(y * 1e9), std::lround(z * 1e9)};
        };
        std::set<std::pair<long, long>> original, mirrored_y, mirrored_z;
        for (const auto& c : g.coordinates) {
            original.insert(key(c.y, c.z));
            mirrored_y.insert(key(-c.y, c.z));
            mirrored_z.insert(key(c.y, -c.z));
        }
        CHECK(original == mirrored_y);
        CHECK(original == mirrored_z);
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(build_ris_grid(0, 0.01), std::invalid_argument);
        CHECK_THROWS_AS(build_ris_grid(4, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(build_ris_grid(4, -1.0), std::invalid_argument);
    }
}

TEST_CASE("fbs array placement") {
    SUBCASE("single element at center") {
        const ElementGrid g = build_fbs_array({1.0, 2.0, 3.0}, 1, 0.1);
        REQUIRE(g.size() == 1);
        CHECK(g.coordinates[0].y == 2.0);
    }

    SUBCASE("two elements split symmetrically") {
        const ElementGrid g = build_fbs_array({0.0, 5.0, 0.0}, 2, kLambda / 2.0);
        REQUIRE(g.size() == 2);
        CHECK(g.coordinates[0].y == doctest::Approx(5.0 - kLambda / 4.0));
        CHECK(g.coordinates[1].y == doctest::Approx(5.0 + kLambda / 4.0));
    }

    SUBCASE("aperture of the reference 8-element array") {
        const ElementGrid g = build_fbs_array({5.0, 0.0, 0.0}, 8, kLambda / 2.0);
        CHECK(aperture_length(g) == doctest::Approx(0.19985).epsilon(1e-12));
    }

    SUBCASE("rejects zero elements") {
        CHECK_THROWS_AS(build_fbs_array({0, 0, 0}, 0, 0.1), std::invalid_argument);
    }
}

TEST_CASE("position sampling") {
    SUBCASE("degenerate region collapses to a point") {
        Rng rng(7);
        const Region region{{2.0, 2.0}, {-1.0, -1.0}, {0.5, 0.5}};
        for (const auto& c : sample_positions(region, 10, rng)) {
            CHECK(c.x == 2.0);
            CHECK(c.y == -1.0);
            CHECK(c.z == 0.5);
        }
    }

    SUBCASE("uniform mean over the reference region") {
        Rng rng(42);
        const Region region{{4.0, 6.0}, {-8.0, 8.0}, {-8.0, 8.0}};
        double mean_x = 0.0;
        const auto points = sample_positions(region, 10000, rng);
        for (const auto& c : points) {
            mean_x += c.x;
            CHECK(c.x >= 4.0);
            CHECK(c.x <= 6.0);
            CHECK(std::abs(c.y) <= 8.0);
            CHECK(std::abs(c.z) <= 8.0);
        }
        mean_x /= static_cast<double>(points.size());
        CHECK(mean_x > 4.95);
        CHECK(mean_x < 5.05);
    }

    SUBCASE("same seed reproduces the same draw") {
        const Region region{{4.0, 6.0}, {-8.0, 8.0}, {-8.0, 8.0}};
        Rng a(123), b(123);
        const auto pa = sample_positions(region, 50, a);
        const auto pb = sample_positions(region, 50, b);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            CHECK(pa[i].x == pb[i].x);
            CHECK(pa[i].y == pb[i].y);
            CHECK(pa[i].z == pb[i].z);
        }
    }

    SUBCASE("inverted region rejected") {
        Rng rng(1);
        const Region bad{{6.0, 4.0}, {0.0, 1.0}, {0.0, 1.0}};
        CHECK_THROWS_AS(sample_positions(bad, 1, rng), std::invalid_argument);
    }
}

TEST_CASE("aperture length") {
    SUBCASE("trivial cases") {
        ElementGrid single;
        single.coordinates = {{1.0, 2.0, 3.0}};
        CHECK(aperture_length(single) == 0.0);

        ElementGrid pair;
        pair.coordinates = {{0, 0, 0}, {0, 0.25, 0}};
        CHECK(aperture_length(pair) == doctest::Approx(0.25).epsilon(1e-15));
    }

    SUBCASE("30x30 grid diagonal") {
        const ElementGrid g = build_ris_grid(30, kLambda / 4.0);
        const double expected = std::sqrt(2.0) * 29.0 * kLambda / 4.0;
        CHECK(aperture_length(g) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(aperture_length(g) == doctest::Approx(0.5854490594834021).epsilon(1e-12));
        // coarser figure quoted for this setup
        CHECK(aperture_length(g) == doctest::Approx(0.5859).epsilon(2e-3));
    }

    SUBCASE("invariant under rigid translation") {
        ElementGrid g = build_ris_grid(4, 0.05);
        const double before = aperture_length(g);
        for (auto& c : g.coordinates) {
            c.x += 3.7;
            c.y -= 11.9;
            c.z += 0.333;
        }
        CHECK(aperture_length(g) == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("fraunhofer distance and near-field criterion") {
    CHECK(fraunhofer_distance(0.0, kLambda) == 0.0);
    CHECK(fraunhofer_distance(kLambda, kLambda) == doctest::Approx(2.0 * kLambda));
    CHECK(fraunhofer_distance(0.5854490594834021, kLambda) ==
          doctest::Approx(12.005275).epsilon(1e-6));
    CHECK(fraunhofer_distance(0.5859, kLambda) == doctest::Approx(12.02).epsilon(1e-3));
    CHECK_THROWS_AS(fraunhofer_distance(1.0, 0.0), std::invalid_argument);

    CHECK(near_field_criterion(0.5859, kLambda, 5.0, 5.0));
    CHECK_FALSE(near_field_criterion(0.0, kLambda, 1.0, 1.0));
    CHECK_FALSE(near_field_criterion(0.1, kLambda, 1000.0, 1000.0));
    CHECK_THROWS_AS(near_field_criterion(0.5, kLambda, 0.0, 1.0), std::invalid_argument);

    SUBCASE("criterion is monotone non-increasing in range") {
        const double aperture = 0.5854490594834021;
        bool previous = true;
        for (double r = 0.5; r <= 4000.0; r *= 1.3) {
            const bool now = near_field_criterion(aperture, kLambda, r, r);
            CHECK((previous || !now));  // once false, never true again
            previous = now;
        }
        CHECK_FALSE(previous);
    }
}

TEST_CASE("reference deployment stays in the near field over 200 seeded drops") {
    ExperimentConfig config;  // Table-style defaults: 30x30 RIS, region x in [4,6]
    const double aperture = aperture_length(build_ris_grid(30, config.wavelength() / 4.0));
    for (std::uint64_t drop = 0; drop < 200; ++drop) {
        Rng rng(mix_seed(99, drop));
        const Scenario scenario = build_scenario(config, 900, rng);
        const Coordinate origin{0.0, 0.0, 0.0};
        // farthest FBS element and each UE against the RIS center
        double r1 = 0.0;
        for (const auto& c : scenario.fbs.coordinates)
            r1 = std::max(r1, pairwise_distance(c, origin));
        for (const auto& ue : scenario.ues) {
            const double r2 = pairwise_distance(ue, origin);
            CHECK(near_field_criterion(aperture, scenario.wavelength, r1, r2));
        }
    }
}

TEST_CASE("scenario wavelength consistency") {
    ExperimentConfig config;
    Rng rng(5);
    const Scenario scenario = build_scenario(config, 100, rng);
    CHECK(scenario.wavelength ==
          doctest::Approx(kSpeedOfLight / scenario.carrier_frequency).epsilon(1e-9));
    CHECK(scenario.wavelength == doctest::Approx(0.0571).epsilon(1e-3));
    // all FBS and UE coordinates inside the configured region
    for (const auto& c : scenario.fbs.coordinates) {
        CHECK(c.x >= config.region.x.lo);
        CHECK(c.x <= config.region.x.hi);
        CHECK(c.y >= config.region.y.lo);
        CHECK(c.y <= config.region.y.hi);
    }
    for (const auto& c : scenario.ues) {
        CHECK(c.x >= config.region.x.lo);
        CHECK(c.x <= config.region.x.hi);
    }
}
