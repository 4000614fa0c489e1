#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dsm/error.hpp"
#include "dsm/measurement.hpp"
#include "support.hpp"

using namespace dsm;

namespace {

const WaveContext ctx;

FieldSamples random_far(std::uint64_t seed, int count) {
    FieldSamples s = make_far_samples(count, Direction::from_degrees(45.0));
    testing::Gen g(seed);
    for (Complex& v : s.values) v = g.complex_normal();
    return s;
}

}  // namespace

TEST_CASE("near circle geometry") {
    const auto pts = near_circle_geometry(ctx, 4.0, 50);
    REQUIRE(pts.size() == 50);
    CHECK(pts[0] == Point::xy(4.0, 0.0));
    for (const Point& p : pts) CHECK(std::abs(norm(p) - 4.0) <= 1e-12);
    const auto quad = near_circle_geometry(ctx, 1.0, 4);
    const Point expected[] = {Point::xy(1, 0), Point::xy(0, 1), Point::xy(-1, 0), Point::xy(0, -1)};
    for (int i = 0; i < 4; ++i) {
        CHECK(quad[i][0] == doctest::Approx(expected[i][0]).epsilon(1e-15));
        CHECK(std::abs(quad[i][1] - expected[i][1]) <= 1e-15);
    }
    CHECK_THROWS_AS(near_circle_geometry(ctx, 4.0, 0), DomainError);
    CHECK_THROWS_AS(near_circle_geometry(ctx, -1.0, 5), DomainError);
}

TEST_CASE("far angles") {
    const auto dirs = far_angles(50);
    REQUIRE(dirs.size() == 50);
    CHECK(dirs[0].vec() == Point::xy(1.0, 0.0));
    for (const Direction& d : dirs) CHECK(std::abs(norm(d.vec()) - 1.0) <= 1e-15);
    const auto four = far_angles(4);
    CHECK(std::abs(four[1][0]) <= 1e-15);
    CHECK(four[1][1] == doctest::Approx(1.0));
    CHECK(four[2][0] == doctest::Approx(-1.0));
    CHECK_THROWS_AS(far_angles(0), DomainError);
}

TEST_CASE("sample skeletons carry ids and validate") {
    const FieldSamples near = make_near_samples(ctx, 4.0, 50, Direction::from_degrees(45.0));
    CHECK(near.kind == FieldKind::Near);
    CHECK(near.ids.back() == 49);
    CHECK_NOTHROW(near.validate());
    FieldSamples broken = near;
    broken.values.pop_back();
    CHECK_THROWS_AS(broken.validate(), DomainError);
}

TEST_CASE("zero noise is an exact copy") {
    const FieldSamples s = random_far(1, 50);
    const FieldSamples out = add_noise(s, NoiseSpec{0.0, 99});
    CHECK(out.values == s.values);
}

TEST_CASE("noise is deterministic and leaves the input untouched") {
    const FieldSamples s = random_far(2, 50);
    const FieldSamples copy = s;
    const FieldSamples a = add_noise(s, NoiseSpec{0.2, 7});
    const FieldSamples b = add_noise(s, NoiseSpec{0.2, 7});
    CHECK(a.values == b.values);
    CHECK(s.values == copy.values);
    const FieldSamples c = add_noise(s, NoiseSpec{0.2, 8});
    CHECK(a.values != c.values);
}

TEST_CASE("noise offsets scale with the data") {
    const FieldSamples s = random_far(3, 50);
    FieldSamples scaled = s;
    for (Complex& v : scaled.values) v *= 3.0;
    const FieldSamples a = add_noise(s, NoiseSpec{0.2, 5});
    const FieldSamples b = add_noise(scaled, NoiseSpec{0.2, 5});
    for (std::size_t j = 0; j < s.size(); ++j) {
        const Complex da = a.values[j] - s.values[j];
        const Complex db = b.values[j] - scaled.values[j];
        CHECK(std::abs(db - 3.0 * da) <= 1e-14 * std::abs(db));
    }
}

TEST_CASE("noise rejects bad input") {
    const FieldSamples s = random_far(4, 5);
    CHECK_THROWS_AS(add_noise(s, NoiseSpec{-0.1, 1}), DomainError);
    CHECK_THROWS_AS(add_noise(s, NoiseSpec{1.5, 1}), DomainError);
    FieldSamples empty = make_far_samples(1, Direction::from_degrees(0));
    empty.values.clear();
    empty.locations.clear();
    empty.ids.clear();
    CHECK_THROWS_AS(add_noise(empty, NoiseSpec{0.1, 1}), DomainError);
}

TEST_CASE("noise draws are standard normal in each component") {
    const int n = 100000;
    double mean_re = 0.0, mean_im = 0.0, sq_re = 0.0, sq_im = 0.0;
    for (int i = 0; i < n; ++i) {
        const Complex z = noise_draw(12345, FieldKind::Far, static_cast<std::uint64_t>(i));
        mean_re += z.real();
        mean_im += z.imag();
        sq_re += z.real() * z.real();
        sq_im += z.imag() * z.imag();
    }
    mean_re /= n;
    mean_im /= n;
    const double var_re = sq_re / n - mean_re * mean_re;
    const double var_im = sq_im / n - mean_im * mean_im;
    CHECK(std::abs(mean_re) <= 0.02);
    CHECK(std::abs(mean_im) <= 0.02);
    CHECK(var_re >= 0.98);
    CHECK(var_re <= 1.02);
    CHECK(var_im >= 0.98);
    CHECK(var_im <= 1.02);
}

TEST_CASE("near and far streams are distinct") {
    CHECK(noise_draw(1, FieldKind::Near, 0) != noise_draw(1, FieldKind::Far, 0));
}

TEST_CASE("property: noise commutes with relabeling of sample order") {
    testing::for_all(41, 20, [](testing::Gen& g) {
        FieldSamples s = random_far(g.integer(0, 1000), 30);
        std::vector<std::size_t> perm(s.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), g.engine());
        FieldSamples shuffled = s;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            shuffled.locations[i] = s.locations[perm[i]];
            shuffled.values[i] = s.values[perm[i]];
            shuffled.ids[i] = s.ids[perm[i]];
        }
        const NoiseSpec spec{0.3, static_cast<std::uint64_t>(g.integer(0, 1 << 30))};
        const FieldSamples a = add_noise(s, spec);
        const FieldSamples b = add_noise(shuffled, spec);
        for (std::size_t i = 0; i < perm.size(); ++i) CHECK(b.values[i] == a.values[perm[i]]);
    });
}
