#pragma once

#include "hearth/scene.hpp"

namespace hearth {

struct PhysicsConfig {
    double dt = 0.02;
    double gravity = 9.81;
    int maxSettleSteps = 200;
    double restSpeed = 1e-3;
    /// Impacts slower than this land dead regardless of restitution, so a
    /// resting bouncy body does not jitter on gravity alone.
    double bounceThreshold = 0.5;
};

/// One fixed step for every awake movable body. Bodies that are held, inside
/// a receptacle, or resting on a support with zero velocity are skipped.
/// Returns false when no body moved.
bool integrate_step(Scene& scene, const PhysicsConfig& cfg = {},
                    const ObjectClassCatalog& catalog = default_catalog());

struct SettleResult {
    Scene scene;
    int steps = 0;
};

/// Steps until every movable body rests (supported, speed below restSpeed)
/// or maxSettleSteps is reached. Resting free bodies whose box lies inside a
/// receptacle interior are re-attached to that receptacle.
SettleResult settle(Scene scene, const PhysicsConfig& cfg = {},
                    const ObjectClassCatalog& catalog = default_catalog());

/// Kinetic plus gravitational potential energy of the integrated bodies,
/// measured from the floor.
double total_energy(const Scene& scene, const PhysicsConfig& cfg = {},
                    const ObjectClassCatalog& catalog = default_catalog());

/// Adds J/m along `direction` and detaches the body from its receptacle.
void apply_impulse(Scene& scene, ObjectInstance& body, const Vec3& direction, double magnitude,
                   const ObjectClassCatalog& catalog = default_catalog());

} // namespace hearth
