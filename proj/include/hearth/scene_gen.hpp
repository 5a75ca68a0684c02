#pragma once

#include "hearth/scene.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hearth {

inline constexpr int kSceneCount = 120;

class OutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// 1-30 kitchen, 31-60 living room, 61-90 bedroom, 91-120 bathroom.
RoomCategory room_category_for(int sceneNumber);

/// Deterministic scene for `sceneNumber`; throws OutOfRangeError outside
/// [1, 120].
Scene generate_scene(int sceneNumber, const ObjectClassCatalog& catalog = default_catalog());

/// sceneNumber mod numVariants; throws CatalogError for unknown categories.
int select_variant(std::string_view category, int sceneNumber, const ObjectClassCatalog& catalog = default_catalog());

struct RandomizeResult {
    Scene scene;
    bool ok = true;
    /// Objects that fit in no receptacle (PlacementFailure); scene is then
    /// the unchanged input.
    std::vector<std::string> failures;
};

/// Seeded shuffle of the pickupable objects, each placed first-fit into a
/// seeded ordering of the receptacles.
RandomizeResult randomize_objects(const Scene& scene, std::uint64_t seed,
                                  const ObjectClassCatalog& catalog = default_catalog());

} // namespace hearth
