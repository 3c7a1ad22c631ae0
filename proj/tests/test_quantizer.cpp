#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

#include "doctest.h"
#include "macpsk/io.hpp"
#include "macpsk/quantizer.hpp"
#include "macpsk/rng.hpp"
#include "oracles.hpp"

using namespace macpsk;
using std::numbers::pi;

namespace {

double deg(double d) { return d * pi / 180.0; }

CanonicalFadeState canonical_of(cplx value, int order) {
    return canonicalize_ratio(value, order);
}

}  // namespace

TEST_CASE("qpsk violation circles sit at the two wedge states with radius delta/sqrt(2)") {
    const auto m = build_model(4);
    const double delta = 0.35;
    const auto circles = violation_circles(m, delta);
    REQUIRE(circles.size() == 2);
    CHECK(circles[0].center.gamma == doctest::Approx(1.0));
    CHECK(circles[0].center.theta == doctest::Approx(0.0));
    CHECK(circles[1].center.gamma == doctest::Approx(std::sqrt(2.0)));
    CHECK(circles[1].center.theta == doctest::Approx(pi / 4));
    for (const auto& vc : circles) {
        CHECK(vc.radius == doctest::Approx(delta / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(vc.delta == delta);
    }
}

TEST_CASE("8psk circle radii carry the per-state coefficients") {
    const auto m = build_model(8);
    const double delta = 0.05;
    const auto circles = violation_circles(m, delta);
    REQUIRE(circles.size() == 7);
    const double r2 = std::sqrt(2.0);
    const std::vector<double> denom = {std::sqrt(2.0 - r2), r2,  std::sqrt(2.0 - r2),
                                       std::sqrt(2.0 + r2), r2,  std::sqrt(2.0 - r2),
                                       std::sqrt(2.0 - r2)};
    for (int i = 0; i < 7; ++i) {
        CHECK(circles[static_cast<size_t>(i)].radius ==
              doctest::Approx(delta / denom[static_cast<size_t>(i)]).epsilon(1e-12));
    }
}

TEST_CASE("circle radii vanish with delta and reject nonpositive delta") {
    const auto m = build_model(4);
    for (const auto& vc : violation_circles(m, 1e-9)) CHECK(vc.radius < 1e-8);
    CHECK_THROWS_AS(violation_circles(m, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(violation_circles(m, -0.1), std::invalid_argument);
}

TEST_CASE("classification against the circles") {
    const auto m = build_model(4);
    const auto circles = violation_circles(m, 0.35);

    SUBCASE("a center is inside its own circle") {
        CHECK(classify(canonical_of(std::polar(1.0, 0.0), 4), circles) == 1);
        CHECK(classify(canonical_of(std::polar(std::sqrt(2.0), pi / 4), 4), circles) == 2);
    }
    SUBCASE("a state far from both centers reports none") {
        CHECK(!classify(canonical_of(std::polar(2.0, deg(14.0)), 4), circles).has_value());
    }
    SUBCASE("a state hugging the bisector state lands in its circle") {
        CHECK(classify(canonical_of(std::polar(std::sqrt(2.0), deg(44.0)), 4), circles) == 2);
    }
    SUBCASE("the boundary is strict") {
        const double rho = circles[0].radius;
        const cplx center{1.0, 0.0};
        CHECK(!classify(canonical_of(center + rho * 1.000001, 4), circles).has_value());
        CHECK(classify(canonical_of(center + rho * 0.999999, 4), circles) == 1);
    }
    SUBCASE("overlapping circles resolve to the nearest center") {
        // only reachable past the rotation bound
        const auto fat = violation_circles(m, 0.8);
        const cplx c1{1.0, 0.0};
        const cplx c2 = std::polar(std::sqrt(2.0), pi / 4);
        const cplx mid = 0.5 * (c1 + c2);
        CHECK(std::abs(mid - c1) < fat[0].radius);
        CHECK(std::abs(mid - c2) < fat[1].radius);
        CHECK(classify(canonical_of(mid + 0.02 * (c2 - c1), 4), fat) == 2);
        CHECK(classify(canonical_of(mid - 0.02 * (c2 - c1), 4), fat) == 1);

        // bit-identical distances resolve to the lower index
        auto tied = fat;
        tied[1].center = tied[0].center;
        tied[1].radius = tied[0].radius;
        CHECK(classify(canonical_of(c1 + 0.1, 4), tied) == 1);
    }
}

TEST_CASE("feedback message sizes") {
    CHECK(feedback_bits(2) == 3);   // qpsk
    CHECK(feedback_bits(7) == 4);   // 8psk
    CHECK(feedback_bits(1) == 2);
    CHECK(feedback_bits(29) == 6);  // 16psk
}

TEST_CASE("feedback encoding round-trips every valid message") {
    for (int n_wedge : {1, 2, 7, 29}) {
        for (bool swapped : {false, true}) {
            for (int circle = 0; circle <= n_wedge; ++circle) {
                FeedbackMessage msg;
                msg.swapped = swapped;
                if (circle > 0) msg.circle = circle;
                const auto bits = encode_feedback(msg, n_wedge);
                CHECK(static_cast<int>(bits.size()) == feedback_bits(n_wedge));
                const auto back = decode_feedback(bits, n_wedge);
                CHECK(back.swapped == msg.swapped);
                CHECK(back.circle == msg.circle);
            }
        }
    }
}

TEST_CASE("malformed feedback is rejected") {
    CHECK_THROWS_AS(decode_feedback("01", 2), std::invalid_argument);     // short
    CHECK_THROWS_AS(decode_feedback("0100", 2), std::invalid_argument);   // long
    CHECK_THROWS_AS(decode_feedback("011", 2), std::invalid_argument);    // index 3 > 2
    CHECK_THROWS_AS(decode_feedback("0x1", 2), std::invalid_argument);    // not binary
    FeedbackMessage bad;
    bad.circle = 3;
    CHECK_THROWS_AS(encode_feedback(bad, 2), std::invalid_argument);
}

TEST_CASE("raster parameters are validated") {
    const auto m = build_model(4);
    RasterSpec spec;
    spec.gamma_cells = 0;
    CHECK_THROWS_AS(quantization_map(m, spec), std::invalid_argument);
    spec.gamma_cells = 10;
    spec.theta_cells = 0;
    CHECK_THROWS_AS(quantization_map(m, spec), std::invalid_argument);
    spec.theta_cells = 10;
    spec.gamma_max = 1.0;
    CHECK_THROWS_AS(quantization_map(m, spec), std::invalid_argument);
}

TEST_CASE("qpsk raster reproduces the three-region wedge structure") {
    const auto m = build_model(4);
    RasterSpec spec;
    spec.gamma_cells = 160;
    spec.theta_cells = 160;
    spec.gamma_max = 4.0;
    const auto map = quantization_map(m, spec);

    const int k2 = m.wedge_state(1).minimal_class;  // collapses at (1, 0)
    const int k1 = m.wedge_state(2).minimal_class;  // collapses at (sqrt(2), pi/4)
    const cplx c1{1.0, 0.0};
    const cplx c2{1.0, 1.0};

    const double cell_diag = std::hypot((spec.gamma_max - 1.0) / spec.gamma_cells,
                                        (pi / 4) / spec.theta_cells * spec.gamma_max);
    int checked = 0;
    for (int ig = 0; ig < map.gamma_cells; ++ig) {
        for (int it = 0; it < map.theta_cells; ++it) {
            const double g = map.gamma_at(ig);
            const double t = map.theta_at(it);
            const cplx p = std::polar(g, t);
            const double line = g * std::sin(t) - 0.5;
            const double circ2 = std::abs(p - c1) - 1.0;  // boundary of the (1,0) region
            const double circ1 = std::abs(p - c2) - 1.0;  // boundary of the bisector region
            const double margin = 1.5 * cell_diag;
            if (std::abs(line) < margin || std::abs(circ1) < margin || std::abs(circ2) < margin) {
                continue;
            }
            int expected;
            if (line < 0.0) {
                expected = circ2 < 0.0 ? k2 : m.cap_class;
            } else {
                expected = circ1 < 0.0 ? k1 : m.cap_class;
            }
            CHECK(map.at(ig, it) == expected);
            ++checked;
        }
    }
    CHECK(checked > 10000);
}

TEST_CASE("8psk raster region around (1,0) matches its bounding curves") {
    const auto m = build_model(8);
    RasterSpec spec;
    spec.gamma_cells = 140;
    spec.theta_cells = 140;
    spec.gamma_max = 3.2;
    const auto map = quantization_map(m, spec);

    const int k1 = m.wedge_state(1).minimal_class;
    const double r2 = std::sqrt(2.0);

    // signed boundary expressions, negative inside the (1,0) region
    const auto conditions = [&](double g, double t) {
        const double x = g * std::cos(t);
        const double y = g * std::sin(t);
        return std::vector<double>{
            (10.0 - 7.0 * r2) - ((x - (3.0 - r2)) * (x - (3.0 - r2)) + y * y),
            x - 1.0 / (2.0 - r2),
            (3.0 - 2.0 * r2) / 4.0 - ((x - 1.0) * (x - 1.0) + (y - 0.5) * (y - 0.5)),
            (3.0 - 2.0 * r2) -
                ((x - 2.0 + 1.0 / r2) * (x - 2.0 + 1.0 / r2) + (y - 1.0 / r2) * (y - 1.0 / r2)),
            x + y - (1.0 + 1.0 / r2),
            r2 * x + y - (1.5 + r2),
            (x - 1.0) * (x - 1.0) + y * y - 1.0,
        };
    };

    const double cell_diag = std::hypot((spec.gamma_max - 1.0) / spec.gamma_cells,
                                        (pi / 8) / spec.theta_cells * spec.gamma_max);
    int checked = 0;
    int inside_seen = 0;
    for (int ig = 0; ig < map.gamma_cells; ++ig) {
        for (int it = 0; it < map.theta_cells; ++it) {
            const double g = map.gamma_at(ig);
            const double t = map.theta_at(it);
            const auto vals = conditions(g, t);
            bool near_boundary = false;
            bool inside = true;
            for (double v : vals) {
                if (std::abs(v) < 2.0 * cell_diag) near_boundary = true;
                if (v > 0.0) inside = false;
            }
            if (near_boundary) continue;
            CHECK((map.at(ig, it) == k1) == inside);
            inside_seen += inside;
            ++checked;
        }
    }
    CHECK(checked > 8000);
    CHECK(inside_seen > 50);
}

TEST_CASE("every raster cell is owned by the cap class or a minimal vanishing class") {
    for (int order : {4, 8}) {
        const auto m = build_model(order);
        std::set<int> allowed{m.cap_class};
        for (int i = 1; i <= m.n_wedge(); ++i) allowed.insert(m.wedge_state(i).minimal_class);
        RasterSpec spec;
        spec.gamma_cells = 120;
        spec.theta_cells = 120;
        spec.gamma_max = 4.0;
        const auto map = quantization_map(m, spec);
        for (int label : map.argmin_class) CHECK(allowed.count(label) == 1);
    }
}

TEST_CASE("guarantee dichotomy inside and outside the circles") {
    struct Setup {
        int order;
        std::vector<double> deltas;
    };
    for (const auto& setup : {Setup{4, {0.1, 0.2, 0.35}}, Setup{8, {0.05, 0.15}}}) {
        const auto m = build_model(setup.order);
        for (double delta : setup.deltas) {
            const auto circles = violation_circles(m, delta);
            SplitMix64 rng(substream_key(41, static_cast<std::uint64_t>(setup.order),
                                         static_cast<std::uint64_t>(delta * 1e6)));
            int outside_checked = 0;
            while (outside_checked < 2000) {
                const FadeState fs{1.0 + 3.0 * rng.uniform01(),
                                   (pi / setup.order) * rng.uniform01()};
                const auto cs = canonical_of(fs.value(), setup.order);
                if (classify(cs, circles).has_value()) continue;
                CHECK(min_distance(m, fs).value >= delta - 1e-9);
                ++outside_checked;
            }
            for (int i = 0; i < 2000; ++i) {
                const auto& vc =
                    circles[rng.uniform_below(static_cast<std::uint32_t>(circles.size()))];
                const double rr = vc.radius * std::sqrt(rng.uniform01());
                const double ang = 2.0 * pi * rng.uniform01();
                const cplx p = vc.center.value() + std::polar(rr, ang);
                const FadeState fs{std::abs(p), std::arg(p)};
                CHECK(min_distance(m, fs).value < delta + 1e-9);
            }
        }
    }
}

TEST_CASE("rotated circle images share the wedge radius") {
    for (int order : {4, 8}) {
        const auto m = build_model(order);
        const double period = 2.0 * pi / order;
        for (int i = 1; i <= m.n_wedge(); ++i) {
            const auto& s = m.wedge_state(i);
            for (int p = 1; p < order; ++p) {
                const cplx image = s.value * std::polar(1.0, p * period);
                bool found = false;
                for (const auto& other : m.singular.nonzero) {
                    if (std::abs(other.value - image) < 1e-9) {
                        CHECK(other.delta_s2 == doctest::Approx(s.delta_s2).epsilon(1e-12));
                        found = true;
                        break;
                    }
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("full-plane extension mirrors and repeats the wedge") {
    const auto m = build_model(4);
    RasterSpec spec;
    spec.gamma_cells = 24;
    spec.theta_cells = 30;
    spec.gamma_max = 3.0;
    const auto wedge = quantization_map(m, spec);
    const auto full = extend_full_plane(wedge, 4);
    CHECK(full.theta_cells == 2 * 4 * spec.theta_cells);
    CHECK(full.theta_max == doctest::Approx(2.0 * pi));

    SplitMix64 rng(substream_key(47, 0, 0));
    for (int i = 0; i < 400; ++i) {
        const int ig = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(full.gamma_cells)));
        const int it = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(full.theta_cells)));
        const FadeState fs{full.gamma_at(ig), full.theta_at(it)};
        CHECK(std::abs(full.dmin_at(ig, it) - min_distance(m, fs).value) < 1e-9);
    }
    // the original wedge block is copied unchanged
    for (int ig = 0; ig < wedge.gamma_cells; ++ig) {
        for (int it = 0; it < wedge.theta_cells; ++it) {
            CHECK(full.at(ig, it) == wedge.at(ig, it));
        }
    }
}

TEST_CASE("raster csv has the documented shape") {
    const auto m = build_model(4);
    RasterSpec spec;
    spec.gamma_cells = 5;
    spec.theta_cells = 4;
    spec.gamma_max = 2.0;
    const auto map = quantization_map(m, spec);
    std::ostringstream csv;
    macpsk::write_raster_csv(csv, map);
    std::istringstream is(csv.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "gamma,theta,argmin_class,d_min");
    int rows = 0;
    while (std::getline(is, line)) {
        double g = 0.0, t = 0.0, d = 0.0;
        int cls = 0;
        CHECK(std::sscanf(line.c_str(), "%lf,%lf,%d,%lf", &g, &t, &cls, &d) == 4);
        ++rows;
    }
    CHECK(rows == 20);
}
