#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shellbend/harness.hpp"
#include "shellbend/rng.hpp"

using namespace shellbend;

TEST_CASE("family names round-trip") {
    for (FamilyKind kind : builtin_families()) {
        auto back = family_from_name(family_name(kind));
        REQUIRE(back.has_value());
        CHECK(*back == kind);
    }
    CHECK(!family_from_name("not-a-family").has_value());
    CHECK(family_from_name("user-config").value() == FamilyKind::UserConfig);
}

TEST_CASE("pair sampling is deterministic in the seed") {
    const SurfaceFamily family = SurfaceFamily::builtin(FamilyKind::GraphPolynomial);
    const SurfacePair a = random_surface_pair(7ull, family);
    const SurfacePair b = random_surface_pair(7ull, family);
    for (int k = 0; k < 3; ++k) {
        CHECK(ast_equal(a.reference.component(k), b.reference.component(k)));
        CHECK(ast_equal(a.deformed.component(k), b.deformed.component(k)));
    }
    CHECK(a.descriptor == b.descriptor);

    const SurfacePair c = random_surface_pair(8ull, family);
    CHECK_FALSE(ast_equal(a.reference.component(2), c.reference.component(2)));
}

TEST_CASE("one hundred seeds clear the immersion floor on a 5x5 grid") {
    for (FamilyKind kind : {FamilyKind::GraphPolynomial, FamilyKind::GraphTrigonometric}) {
        const SurfaceFamily family = SurfaceFamily::builtin(kind);
        int failures = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const SurfacePair pair = random_surface_pair(seed, family);
            for (const SurfaceExpr* s : {&pair.reference, &pair.deformed}) {
                for (const Vec2& xi : interior_grid(s->domain(), GridSpec{5, 5, 0.1})) {
                    try {
                        point_geometry(*s, xi);
                    } catch (const DegenerateImmersion&) {
                        ++failures;
                    }
                }
            }
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("sampling the user-config family is an error") {
    SurfaceFamily family;
    family.kind = FamilyKind::UserConfig;
    CHECK_THROWS_AS(random_surface_pair(0, family), Error);
}

TEST_CASE("interior grid stays inside with the requested margin") {
    const ParamDomain d{0.0, 10.0, -2.0, 0.0};
    const auto pts = interior_grid(d, GridSpec{3, 4, 0.1});
    REQUIRE(pts.size() == 12);
    CHECK(pts.front()[0] == doctest::Approx(1.0));
    CHECK(pts.front()[1] == doctest::Approx(-1.8));
    CHECK(pts.back()[0] == doctest::Approx(9.0));
    CHECK(pts.back()[1] == doctest::Approx(-0.2));
    // row-major in xi1: the second point advances xi2 first
    CHECK(pts[1][0] == doctest::Approx(1.0));
    CHECK(pts[1][1] > pts[0][1]);
    for (const Vec2& xi : pts) {
        CHECK(xi[0] >= 1.0 - 1e-12);
        CHECK(xi[0] <= 9.0 + 1e-12);
        CHECK(xi[1] >= -1.8 - 1e-12);
        CHECK(xi[1] <= -0.2 + 1e-12);
    }
    CHECK_THROWS_AS(interior_grid(d, GridSpec{1, 5, 0.1}), Error);
}

TEST_CASE("scaling check at a = 1 is exact") {
    const SurfacePair pair =
        random_surface_pair(3ull, SurfaceFamily::builtin(FamilyKind::GraphPolynomial));
    const auto reports = check_scaling_law(pair, {1.0}, GridSpec{5, 5, 0.1}, 1e-10);
    REQUIRE(reports.size() == 5);
    for (const CheckReport& rep : reports) {
        CHECK(rep.pass);
        CHECK(rep.max_residual <= 1e-15);
        CHECK(rep.points == 25);
    }
}

TEST_CASE("scaling check over the default sweep passes at 1e-10") {
    SplitMix64 seeds(5ull);
    for (FamilyKind kind : {FamilyKind::GraphPolynomial, FamilyKind::GraphTrigonometric}) {
        const SurfacePair pair = random_surface_pair(seeds.next(), SurfaceFamily::builtin(kind));
        const auto reports = check_scaling_law(pair, {0.5, 2.0, 10.0}, GridSpec{7, 7, 0.1}, 1e-10);
        REQUIRE(reports.size() == 15);
        for (const CheckReport& rep : reports)
            CHECK_MESSAGE(rep.pass, rep.name, " residual ", rep.max_residual);
    }
}

TEST_CASE("a hostile tolerance produces a fail verdict, not an exception") {
    // a = 2 would scale the whole pipeline bitwise-exactly (powers of two
    // commute with IEEE rounding), so use a factor that actually rounds
    const SurfacePair pair =
        random_surface_pair(11ull, SurfaceFamily::builtin(FamilyKind::GraphTrigonometric));
    const auto reports = check_scaling_law(pair, {3.7}, GridSpec{5, 5, 0.1}, 1e-30);
    bool any_fail = false;
    for (const CheckReport& rep : reports) {
        CHECK(rep.pass == (rep.max_residual <= rep.tolerance));
        any_fail = any_fail || !rep.pass;
    }
    CHECK(any_fail); // residuals are tiny but not that tiny
}

TEST_CASE("rigid nullity") {
    const SurfaceExpr sphere =
        sphere_chart_surface(1.0, SurfaceFamily::builtin(FamilyKind::SphereChart).domain);

    // identity motion: zeros to 1e-12
    const CheckReport ident =
        check_rigid_nullity(sphere, {RigidMotion{}}, GridSpec{5, 5, 0.1}, 1e-12, "sphere");
    CHECK(ident.pass);

    // translation only: no rotation error amplification
    RigidMotion shift;
    shift.translation = Vec3(0.3, -2.0, 0.7);
    const CheckReport translated =
        check_rigid_nullity(sphere, {shift}, GridSpec{5, 5, 0.1}, 1e-13, "sphere");
    CHECK(translated.pass);

    // seeded motions at the working tolerance
    std::vector<RigidMotion> motions;
    for (std::uint64_t i = 0; i < 10; ++i)
        motions.push_back(random_rigid_motion(100 + i));
    const CheckReport rep =
        check_rigid_nullity(sphere, motions, GridSpec{7, 7, 0.1}, 1e-11, "sphere");
    CHECK(rep.pass);
    CHECK(rep.points == 10 * 49);

    CHECK_THROWS_AS(check_rigid_nullity(sphere, {}, GridSpec{5, 5, 0.1}, 1e-11, "x"), Error);
}

TEST_CASE("objectivity") {
    const SurfacePair pair =
        random_surface_pair(21ull, SurfaceFamily::builtin(FamilyKind::GraphTrigonometric));

    const CheckReport ident =
        check_objectivity(pair, {RigidMotion{}}, GridSpec{5, 5, 0.1}, 1e-15);
    CHECK(ident.pass);
    CHECK(ident.max_residual == 0.0);

    std::vector<RigidMotion> motions;
    for (std::uint64_t i = 0; i < 10; ++i)
        motions.push_back(random_rigid_motion(200 + i));
    const CheckReport rep = check_objectivity(pair, motions, GridSpec{7, 7, 0.1}, 1e-11);
    CHECK_MESSAGE(rep.pass, "residual ", rep.max_residual);
}

TEST_CASE("sphere dilation checks") {
    const CheckReport trivial = check_sphere_dilation(1.0, 1.0, GridSpec{5, 5, 0.1}, 1e-12);
    CHECK(trivial.pass);

    const CheckReport grow = check_sphere_dilation(1.0, 2.0, GridSpec{7, 7, 0.1}, 1e-10);
    CHECK_MESSAGE(grow.pass, "residual ", grow.max_residual);

    const CheckReport shrink = check_sphere_dilation(2.0, 0.5, GridSpec{7, 7, 0.1}, 1e-10);
    CHECK_MESSAGE(shrink.pass, "residual ", shrink.max_residual);

    CHECK_THROWS_AS(check_sphere_dilation(1.0, 0.0, GridSpec{5, 5, 0.1}, 1e-10),
                    NonpositiveScale);
    CHECK_THROWS_AS(check_sphere_dilation(0.0, 1.0, GridSpec{5, 5, 0.1}, 1e-10), Error);
}

TEST_CASE("check reports localize the worst case") {
    const SurfacePair pair =
        random_surface_pair(33ull, SurfaceFamily::builtin(FamilyKind::GraphPolynomial));
    const auto reports = check_scaling_law(pair, {2.0}, GridSpec{5, 5, 0.1}, 1e-10);
    for (const CheckReport& rep : reports) {
        CHECK(pair.reference.domain().contains(rep.worst.xi));
        CHECK(!rep.worst.measure.empty());
        CHECK(rep.points >= 1);
    }
}
