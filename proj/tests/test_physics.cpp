#include "support.hpp"

#include "hearth/physics.hpp"
#include "hearth/rng.hpp"
#include "hearth/scene_gen.hpp"

#include <doctest.h>

using namespace hearth;
using namespace hearth::test;

namespace {

// Long room so a sliding mug never reaches a wall.
Scene mug_scene(Vec3 pos)
{
    Scene s = empty_room(8.0, 4.0);
    s.agent.position = {7.5, 0, 3.5};
    add_object(s, "Mug", "Mug_1", pos);
    return s;
}

} // namespace

TEST_CASE("impulse on a half-kilogram mug gives 4 m/s")
{
    Scene s = mug_scene({1, 0, 2});
    REQUIRE(default_catalog().at("Mug").mass == 0.5);
    apply_impulse(s, s.objects[0], {1, 0, 0}, 2.0);
    CHECK(std::abs(length(s.objects[0].velocity) - 4.0) <= 1e-6);
}

TEST_CASE("impulse detaches the body from its receptacle")
{
    Scene s = microwave_fixture(1.0);
    add_object(s, "Mug", "Mug_1", s.find_object("CounterTop_1")->position + Vec3{0.4, 0.9, 0});
    contain(s, "CounterTop_1", "Mug_1");
    apply_impulse(s, *s.find_object("Mug_1"), {1, 0, 0}, 0.1);
    CHECK_FALSE(s.find_object("Mug_1")->parentReceptacle.has_value());
    const auto& ids = s.find_object("CounterTop_1")->containedIds;
    CHECK(std::find(ids.begin(), ids.end(), "Mug_1") == ids.end());
}

TEST_CASE("friction stop distance matches v^2 / (2 mu g)")
{
    Scene s = mug_scene({1, 0, 2});
    const double mu = default_catalog().at("Mug").friction;
    REQUIRE(mu == 0.4);
    s.objects[0].velocity = {4, 0, 0};
    PhysicsConfig cfg;
    SettleResult r = settle(s, cfg);
    double distance = r.scene.objects[0].position.x - 1.0;
    double analytic = 4.0 * 4.0 / (2.0 * mu * cfg.gravity);
    CHECK(std::abs(distance - analytic) <= 0.05);
    CHECK(r.steps < cfg.maxSettleSteps);
    CHECK(r.scene.objects[0].velocity == Vec3{});

    // A ten times finer step converges toward the continuous answer.
    PhysicsConfig fine = cfg;
    fine.dt = cfg.dt / 10;
    fine.maxSettleSteps = cfg.maxSettleSteps * 10;
    double fineDistance = settle(s, fine).scene.objects[0].position.x - 1.0;
    CHECK(std::abs(fineDistance - analytic) < std::abs(distance - analytic));
    CHECK(std::abs(fineDistance - analytic) <= 0.01);
}

TEST_CASE("free fall touches down on the step the discrete recurrence predicts")
{
    Scene s = mug_scene({1, 1.0, 2});
    PhysicsConfig cfg;
    // Semi-implicit Euler: v_n = -g n dt, y_n = y_0 - g dt^2 n (n + 1) / 2.
    int expect = 0;
    for (int n = 1; n < 1000; ++n) {
        if (1.0 - cfg.gravity * cfg.dt * cfg.dt * n * (n + 1) / 2.0 <= 0.0) {
            expect = n;
            break;
        }
    }
    CHECK(expect == 23);
    int touchdown = 0;
    for (int n = 1; n <= 100 && touchdown == 0; ++n) {
        integrate_step(s, cfg);
        if (s.objects[0].position.y <= 1e-12) touchdown = n;
        else CHECK(s.objects[0].position.y == doctest::Approx(1.0 - cfg.gravity * cfg.dt * cfg.dt * n * (n + 1) / 2.0));
    }
    CHECK(touchdown == expect);
}

TEST_CASE("a dropped mug settles on its support")
{
    SUBCASE("floor")
    {
        Scene s = mug_scene({1, 1.0, 2});
        SettleResult r = settle(s);
        CHECK(std::abs(r.scene.objects[0].position.y) <= 1e-3);
        CHECK(r.scene.objects[0].velocity == Vec3{});
    }
    SUBCASE("counter top, re-attached on rest")
    {
        Scene s = empty_room();
        ObjectInstance& counter = add_object(s, "CounterTop", "CounterTop_1", {3, 0, 3});
        double top = interior_world(counter, default_catalog().at("CounterTop"))->min.y;
        add_object(s, "Mug", "Mug_1", {3, top + 1.0, 3});
        SettleResult r = settle(s);
        const ObjectInstance* mug = r.scene.find_object("Mug_1");
        CHECK(std::abs(mug->position.y - top) <= 1e-3);
        CHECK(mug->parentReceptacle == std::optional<std::string>("CounterTop_1"));
        CHECK(validate_scene(r.scene).empty());
    }
}

TEST_CASE("energy never increases without impulses")
{
    CounterRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Scene s = empty_room(8.0, 6.0);
        s.agent.position = {7.5, 0, 5.5};
        const char* kinds[] = {"Mug", "Apple", "Bread", "Box", "Bowl", "Pillow"};
        for (int k = 0; k < 8; ++k) {
            std::string cat = kinds[rng.below(6)];
            ObjectInstance& o = add_object(s, cat, cat + "_" + std::to_string(k + 1),
                                           {0.5 + k * 0.9, rng.uniform(0, 1.5), rng.uniform(1, 5)});
            o.velocity = {rng.uniform(-3, 3), rng.uniform(-1, 1), rng.uniform(-3, 3)};
        }
        PhysicsConfig cfg;
        double e = total_energy(s, cfg);
        for (int step = 0; step < cfg.maxSettleSteps; ++step) {
            integrate_step(s, cfg);
            double next = total_energy(s, cfg);
            INFO("trial " << trial << " step " << step);
            CHECK(next <= e + 1e-6);
            e = next;
        }
    }
}

TEST_CASE("settle brings generated scenes to rest without changing them")
{
    for (int n : {3, 33, 63, 93}) {
        Scene s = generate_scene(n);
        SettleResult r = settle(s);
        CHECK(r.scene == s);
    }
}

TEST_CASE("contained and held bodies do not integrate")
{
    Scene s = mug_scene({1, 0.5, 2});
    s.objects[0].isPickedUp = true;
    s.agent.heldObjectId = "Mug_1";
    Vec3 before = s.objects[0].position;
    CHECK_FALSE(integrate_step(s));
    CHECK(s.objects[0].position == before);
}
