#pragma once

#include "hearth/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hearth {

enum class Mobility { Static, Movable };

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    bool operator==(const Rgb&) const = default;
};

struct VariantParams {
    Rgb color;
    double scale = 1.0;
    bool operator==(const VariantParams&) const = default;
};

/// Affordance and geometry record for one object category.
///
/// Extents are in the object's local frame with the origin at the bottom
/// center of the footprint. For openable classes, the "door" is the +z face
/// slab of a receptacle's shell, or the whole body for non-receptacles;
/// opening moves the door to `openExtents`.
struct ObjectClass {
    std::string category;
    bool interactable = true;
    bool pickupable = false;
    bool openable = false;
    bool toggleable = false;
    bool sliceable = false;
    bool receptacle = false;
    bool transparent = false;
    Mobility mobility = Mobility::Static;
    std::vector<VariantParams> variants;
    double mass = 1.0;
    double friction = 0.5;
    double restitution = 0.0;
    Aabb closedExtents;
    std::optional<Aabb> openExtents;
    std::optional<Aabb> interiorExtents;
    std::optional<int> sliceCount;

    int numVariants() const { return static_cast<int>(variants.size()); }
    bool movable() const { return mobility == Mobility::Movable; }
    bool operator==(const ObjectClass&) const = default;
};

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ObjectClassCatalog {
public:
    ObjectClassCatalog() = default;
    explicit ObjectClassCatalog(std::vector<ObjectClass> classes);

    const ObjectClass* find(std::string_view category) const;
    /// Throws CatalogError("UnknownCategory ...") when absent.
    const ObjectClass& at(std::string_view category) const;

    const std::vector<ObjectClass>& classes() const { return classes_; }
    std::size_t interactable_count() const;

    /// Problems with class records (empty when the catalog is consistent).
    std::vector<std::string> check() const;

    /// One JSON record per line, in catalog order.
    std::string to_jsonl() const;
    static ObjectClassCatalog from_jsonl(std::string_view text);

private:
    std::vector<ObjectClass> classes_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// The shipped catalog: 102 interactable categories plus the
/// non-interactable clutter classes used for scene props.
const ObjectClassCatalog& default_catalog();

/// Name of the class spawned by slicing `category`.
inline std::string sliced_category(std::string_view category)
{
    return std::string(category) + "Sliced";
}

} // namespace hearth
