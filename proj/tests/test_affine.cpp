#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ratla/affine.hpp"

using namespace ratla;

namespace {

Point2 p2(int x, int y) { return Point2{{x, y}}; }
Point3 p3(int x, int y, int z) { return Point3{{x, y, z}}; }

const std::array<Point2, 4> quad{p2(1, 1), p2(2, 3), p2(4, 3), p2(5, 1)};
const std::array<Point3, 4> tet{p3(1, 5, 0), p3(6, 2, 0), p3(3, 2, 4), p3(0, 0, 0)};

template <std::size_t N, std::size_t K>
std::array<Point<N>, K> map_all(const Transform<N>& t, const std::array<Point<N>, K>& pts) {
    std::array<Point<N>, K> out;
    std::transform(pts.begin(), pts.end(), out.begin(), [&](const Point<N>& p) { return t(p); });
    return out;
}

Transform3 random_transform3(std::mt19937_64& rng) {
    auto r = [&] { return oracle::random_scalar(rng, 20, 4); };
    switch (rng() % 4) {
        case 0: return Transform3::translation({r(), r(), r()});
        case 1: return Transform3::rotation(Angle::quarter_turns(static_cast<long long>(rng() % 8) - 4));
        case 2: return Transform3::reflection_xy();
        default:
            return compose(Transform3::translation({r(), r(), r()}),
                           compose(Transform3::reflection_xy(), Transform3::rotation(Angle::quarter_turns(1))));
    }
}

}  // namespace

TEST_CASE("planar quadrilateral translated and rotated", "[affine]") {
    auto moved = map_all(Transform2::translation({3, 2}), quad);
    CHECK(moved == std::array<Point2, 4>{p2(4, 3), p2(5, 5), p2(7, 5), p2(8, 3)});

    auto turned = map_all(Transform2::rotation(Angle::parse("pi/2")), quad);
    CHECK(turned == std::array<Point2, 4>{p2(-1, 1), p2(-3, 2), p2(-3, 4), p2(-1, 5)});
}

TEST_CASE("tetrahedron translated, rotated and reflected", "[affine]") {
    CHECK(map_all(Transform3::translation({4, 3, -2}), tet) ==
          std::array<Point3, 4>{p3(5, 8, -2), p3(10, 5, -2), p3(7, 5, 2), p3(4, 3, -2)});
    CHECK(map_all(Transform3::rotation(Angle::quarter_turns(1)), tet) ==
          std::array<Point3, 4>{p3(-5, 1, 0), p3(-2, 6, 0), p3(-2, 3, 4), p3(0, 0, 0)});
    CHECK(map_all(Transform3::reflection_xy(), tet) ==
          std::array<Point3, 4>{p3(1, 5, 0), p3(6, 2, 0), p3(3, 2, -4), p3(0, 0, 0)});
}

TEST_CASE("angles", "[affine]") {
    CHECK(Angle::parse("0") == Angle::quarter_turns(0));
    CHECK(Angle::parse("pi") == Angle::quarter_turns(2));
    CHECK(Angle::parse("-pi/2") == Angle::quarter_turns(3));
    CHECK(Angle::parse("3pi/2").to_string() == "3pi/2");
    CHECK_FALSE(Angle::parse("0.5").is_exact());
    CHECK(Angle::parse("0.5").to_string() == "0.5");
    CHECK((Angle::quarter_turns(3) + Angle::quarter_turns(2)).quarters() == 1);
    CHECK_THROWS_AS(Angle::parse("pi/3"), parse_error);
    CHECK_THROWS_AS(Angle::parse("1.5x"), parse_error);
}

TEST_CASE("composition", "[affine]") {
    auto r = Transform2::rotation(Angle::quarter_turns(1));
    auto r4 = compose(r, compose(r, compose(r, r)));
    CHECK(r4.kind() == TransformKind::rotation);
    CHECK(r4.linear_part() == Matrix::identity(2));
    for (const auto& p : quad) CHECK(r4(p) == p);

    CHECK(Transform2::rotation(Angle::quarter_turns(0)).linear_part() == Matrix::identity(2));

    auto rr = compose(Transform3::reflection_xy(), Transform3::reflection_xy());
    CHECK(rr.kind() == TransformKind::identity);
    CHECK(rr == Transform3::identity());

    auto tt = compose(Transform2::translation({1, 2}), Transform2::translation({3, -5}));
    CHECK(tt == Transform2::translation({4, -3}));

    // Translate first, then rotate: (1,1) -> (4,3) -> (-3,4).
    auto rt = compose(r, Transform2::translation({3, 2}));
    CHECK(rt.kind() == TransformKind::composite);
    CHECK(rt(p2(1, 1)) == p2(-3, 4));
    CHECK(rt.offset() == std::array<Scalar, 2>{-2, 3});
    CHECK(rt.is_exact());
    CHECK_FALSE(Transform2::rotation(Angle::radians(0.3)).is_exact());
}

TEST_CASE("polytopes", "[affine]") {
    auto square = Polytope::polygon({{"A", {0, 0}}, {"B", {1, 0}}, {"C", {1, 1}}, {"D", {0, 1}}});
    CHECK(square.edges == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto moved = apply_polytope(Transform2::translation({2, 0}), square);
    CHECK(moved.vertices[2] == Vertex{"C", {3, 1}});
    CHECK(moved.edges == square.edges);
    CHECK_THROWS_AS(apply_polytope(Transform3::reflection_xy(), square), shape_error);
    CHECK(Polytope::polygon({{"A", {0, 0}}, {"B", {1, 0}}}).edges.size() == 1);

    Polytope bad{3, {{"A", {0, 0, 0}}, {"B", {1, 0, 0}}}, {{0, 2}}};
    CHECK_THROWS_AS(bad.validate(), index_error);
    Polytope flat{3, {{"A", {0, 0}}}, {}};
    CHECK_THROWS_AS(flat.validate(), shape_error);
}

TEST_CASE("float rotations stay orthonormal", "[affine]") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> theta(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        auto m = Transform2::rotation(Angle::radians(theta(rng))).linear_part();
        const double a = m(0, 0).to_double(), b = m(0, 1).to_double();
        const double c = m(1, 0).to_double(), d = m(1, 1).to_double();
        REQUIRE(std::abs(a * a + c * c - 1) <= 1e-12);
        REQUIRE(std::abs(b * b + d * d - 1) <= 1e-12);
        REQUIRE(std::abs(a * b + c * d) <= 1e-12);
        REQUIRE(std::abs(a * d - b * c - 1) <= 1e-12);
    }
}

TEST_CASE("exact transforms are isometries", "[affine][property]") {
    std::mt19937_64 rng(62);
    auto r = [&] { return oracle::random_scalar(rng, 20, 4); };
    for (int i = 0; i < 1000; ++i) {
        Point2 a{{r(), r()}};
        Point2 b{{r(), r()}};
        auto t2 = (i % 2 == 0) ? Transform2::translation({r(), r()})
                               : Transform2::rotation(Angle::quarter_turns(static_cast<long long>(rng() % 8)));
        REQUIRE(squared_distance(t2(a), t2(b)) == squared_distance(a, b));
        REQUIRE(det(t2.linear_part()) == Scalar(1));

        Point3 p{{r(), r(), r()}};
        Point3 q{{r(), r(), r()}};
        for (const auto& t3 : {Transform3::translation({r(), r(), r()}),
                               Transform3::rotation(Angle::quarter_turns(static_cast<long long>(rng() % 4))),
                               Transform3::reflection_xy(), random_transform3(rng)}) {
            REQUIRE(squared_distance(t3(p), t3(q)) == squared_distance(p, q));
        }
        REQUIRE(det(Transform3::reflection_xy().linear_part()) == Scalar(-1));
    }
}

TEST_CASE("quarter turn to the fourth power", "[affine][property]") {
    std::mt19937_64 rng(63);
    auto r = [&] { return oracle::random_scalar(rng, 30, 6); };
    auto r2 = Transform2::rotation(Angle::quarter_turns(1));
    auto r3 = Transform3::rotation(Angle::quarter_turns(1));
    for (int i = 0; i < 1000; ++i) {
        Point2 a{{r(), r()}};
        REQUIRE(r2(r2(r2(r2(a)))) == a);
        Point3 b{{r(), r(), r()}};
        REQUIRE(r3(r3(r3(r3(b)))) == b);
        REQUIRE((r2(a) != a || (a[0].is_zero() && a[1].is_zero())));
    }
}

TEST_CASE("tetrahedron volume under transforms", "[affine][property]") {
    std::mt19937_64 rng(64);
    auto ri = [&] { return oracle::random_integer(rng, -30, 30); };
    for (int i = 0; i < 1000; ++i) {
        std::array<Point3, 4> v;
        for (auto& p : v) p = Point3{{ri(), ri(), ri()}};
        const auto vol = tetrahedron_volume(v[0], v[1], v[2], v[3]).value;
        auto t = random_transform3(rng);
        auto w = map_all(t, v);
        REQUIRE(tetrahedron_volume(w[0], w[1], w[2], w[3]).value == vol);
        REQUIRE(det(t.linear_part()).abs() == Scalar(1));

        std::array<int, 4> idx{0, 1, 2, 3};
        std::shuffle(idx.begin(), idx.end(), rng);
        REQUIRE(tetrahedron_volume(v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]).value == vol);
    }
}
