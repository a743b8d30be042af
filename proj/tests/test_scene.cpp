#include <random>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ratla/scene.hpp"

using namespace ratla;

namespace {

std::size_t error_line(std::string_view text) {
    try {
        parse_scene(text);
    } catch (const parse_error& e) {
        return e.line();
    }
    return 0;
}

const char* tetra_scene =
    "dim 3\n"
    "polytope T A(1,5,0) B(6,2,0) C(3,2,4) D(0,0,0) edges 0-1,0-2,0-3,1-2,1-3,2-3\n"
    "translate T by (4,3,-2) as U\n"
    "rotate T by pi/2 as R\n"
    "reflectxy T as S\n"
    "measure volume T\n"
    "measure volume S\n"
    "render T U R S\n";

}  // namespace

TEST_CASE("translation scene", "[scene]") {
    auto s = parse_scene("dim 2\npolygon P (1,1) (2,3) (4,3) (5,1)\ntranslate P by (3,2) as Q\nrender P Q");
    CHECK(s.dimension == 2);
    REQUIRE(s.objects.size() == 2);
    CHECK(s.directives.size() == 2);
    CHECK_FALSE(s.get("P").derived);
    CHECK(s.get("Q").derived);
    CHECK(s.get("Q").shape.point<2>(3) == Point2{{8, 3}});
    CHECK(s.get("Q").shape.edges == s.get("P").shape.edges);
    const auto& t = std::get<TransformDirective>(s.directives[0]);
    CHECK(t.source == "P");
    CHECK(t.target == "Q");
    CHECK(t.offset == std::vector<Scalar>{3, 2});
    CHECK(std::get<RenderDirective>(s.directives[1]).names == std::vector<std::string>{"P", "Q"});
}

TEST_CASE("empty and comment-only scenes", "[scene]") {
    auto s = parse_scene("");
    CHECK(s.objects.empty());
    CHECK(s.directives.empty());
    CHECK(s.dimension == 2);
    CHECK(parse_scene("# nothing\n\n   \n").objects.empty());
}

TEST_CASE("parse errors carry line numbers", "[scene]") {
    CHECK(error_line("dim 2\npolygon P (1,1)\nrotate Z by pi/2") == 3);
    CHECK(error_line("dim 2\npolygon P (1,1) (2,3) (4,3)\nrotate Z by pi/2 as W") == 3);
    CHECK(error_line("dim 2\nsquare P (1,1)") == 2);
    CHECK(error_line("dim 2\npoint A (1,2,3)") == 2);
    CHECK(error_line("dim 3\npolytope T (1,2,3) (1,x,3)") == 2);
    CHECK(error_line("dim 4") == 1);
    CHECK(error_line("point A (1,2)\ndim 3") == 2);
    CHECK(error_line("dim 2\ndim 2") == 2);
    CHECK(error_line("dim 2\npoint A (1,2)\npoint A (3,4)") == 3);
    CHECK(error_line("dim 2\npolygon P (0,0) (1,0) (0,1)\nreflectxy P as Q") == 3);
    CHECK(error_line("dim 3\npolygon P (0,0,0)") == 2);
    CHECK(error_line("dim 3\npolytope T (0,0,0) (1,0,0) edges 0-2") == 2);
    CHECK(error_line("dim 2\npoint A (1,2)\n\nrender A B") == 4);
    CHECK(error_line("dim 2\npolygon P (0,0) (1,0) (2,1) (3,5)\nmeasure area P") == 3);
    CHECK(error_line("dim 2\npolygon P (0,0) (1,0) (0,1)\nmeasure volume P") == 3);
    CHECK(error_line("dim 2\npolygon P (0,0) (1,0\n") == 2);
    CHECK(error_line("dim 2\npolygon P (0,0) (1,0) (0,1)\nrotate P by pi/3 as Q") == 3);

    try {
        parse_scene("dim 2\n\nfoo bar");
        FAIL("no error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("foo") != std::string::npos);
    }
}

TEST_CASE("tetrahedron scene", "[scene]") {
    auto s = parse_scene(tetra_scene);
    CHECK(s.dimension == 3);
    CHECK(s.objects.size() == 4);
    CHECK(s.get("T").shape.edges.size() == 6);
    CHECK(s.get("U").shape.point<3>(2) == Point3{{7, 5, 2}});
    CHECK(s.get("R").shape.point<3>(0) == Point3{{-5, 1, 0}});
    CHECK(s.get("S").shape.point<3>(2) == Point3{{3, 2, -4}});
    CHECK(s.get("S").shape.vertices[2].label == "C'");
    CHECK(scene_measurements(s) == std::vector<std::string>{"volume T = 56/3", "volume S = 56/3"});
}

TEST_CASE("measurements", "[scene]") {
    auto s = parse_scene(
        "polygon P O(0,0) A(1,5) C(7,7) B(6,2)\n"
        "polygon T A(1,5) B(6,2) C(7,7)\n"
        "rotate T by pi as T2\n"
        "measure area P\n"
        "measure area T\n"
        "measure area T2\n");
    CHECK(scene_measurements(s) == std::vector<std::string>{"area P = 28", "area T = 14", "area T2 = 14"});

    auto box = parse_scene(
        "dim 3\n"
        "polytope B (0,0,0) (1,5,0) (6,2,0) (3,2,4) (7,7,0) (4,7,4) (9,4,4) (10,9,4) "
        "edges 0-1,0-2,0-3,1-4,2-4,1-5,3-5,2-6,3-6,4-7,5-7,6-7\n"
        "measure volume B\n");
    CHECK(scene_measurements(box) == std::vector<std::string>{"volume B = 112"});
}

TEST_CASE("serialize round trip", "[scene]") {
    const char* texts[] = {
        tetra_scene,
        "polygon P A(1,1) B(2,3) C(5,3) D(4,1)\ntranslate P by (3/2,-0.5) as Q\npoint X (0,0)\nrotate P by 0.25 as W\n"
        "measure area Q\nrender X Q W\n",
        "dim 2\npoint A (1,2)\nrender A\npoint B (3,4)\nrender A B\n",
        "",
    };
    for (const char* text : texts) {
        auto s = parse_scene(text);
        auto once = serialize_scene(s);
        INFO(once);
        CHECK(parse_scene(once) == s);
        CHECK(serialize_scene(parse_scene(once)) == once);
    }
}

TEST_CASE("random scenes round trip", "[scene][property]") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 300; ++i) {
        std::string text = "dim 2\n";
        int objects = 0;
        for (int k = 0; k < 6; ++k) {
            std::string name = "S" + std::to_string(k);
            if (objects == 0 || rng() % 2 == 0) {
                text += "polygon " + name;
                for (int v = 0; v < 3; ++v) {
                    text += " (" + oracle::random_scalar(rng, 40, 7).to_string() + "," +
                            oracle::random_scalar(rng, 40, 7).to_string() + ")";
                }
                text += "\n";
            } else {
                std::string src = "S" + std::to_string(rng() % static_cast<unsigned>(k));
                text += "rotate " + src + " by " + Angle::quarter_turns(static_cast<long long>(rng() % 4)).to_string() +
                        " as " + name + "\n";
                text += "measure area " + name + "\n";
            }
            ++objects;
        }
        text += "render S0 S5\n";
        auto s = parse_scene(text);
        REQUIRE(parse_scene(serialize_scene(s)) == s);
    }
}
