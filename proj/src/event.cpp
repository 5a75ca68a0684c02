#include "hearth/event.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

namespace hearth {

namespace {

Json wire_vec3(const Vec3& v) { return Json{{"x", v.x}, {"y", v.y}, {"z", v.z}}; }

Json optional_id(const std::optional<std::string>& id) { return id ? Json(*id) : Json(nullptr); }

void ensure_sodium()
{
    static const int ready = sodium_init();
    (void)ready;
}

} // namespace

std::string scene_name(int sceneNumber) { return "Scene_" + std::to_string(sceneNumber); }

Json build_metadata(const Simulation& sim)
{
    const Scene& s = sim.scene();
    const ObjectClassCatalog& catalog = sim.catalog();
    const ActionOutcome& out = sim.last_outcome();

    std::vector<std::size_t> order(s.objects.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return s.objects[a].objectId < s.objects[b].objectId; });

    Json objects = Json::array();
    for (std::size_t i : order) {
        const ObjectInstance& o = s.objects[i];
        const ObjectClass& cls = catalog.at(o.category);
        const ObjectVisibility& v = sim.visibility().entries[i];
        objects.push_back({
            {"objectId", o.objectId},
            {"objectType", o.category},
            {"position", wire_vec3(o.position)},
            {"rotationYaw", o.rotationYaw},
            {"distance", v.distance},
            {"visible", v.visible},
            {"interactable", v.interactable},
            {"pickupable", cls.pickupable},
            {"isPickedUp", o.isPickedUp},
            {"openable", cls.openable},
            {"isOpen", o.isOpen},
            {"toggleable", cls.toggleable},
            {"isToggled", o.isToggled},
            {"sliceable", cls.sliceable},
            {"isSliced", o.isSliced},
            {"receptacle", cls.receptacle},
            {"parentReceptacle", optional_id(o.parentReceptacle)},
            {"receptacleObjectIds", o.containedIds},
            {"mass", cls.mass},
        });
    }
    const AgentState& a = s.agent;
    return Json{
        {"sceneName", scene_name(s.sceneNumber)},
        {"screenWidth", sim.config().width},
        {"screenHeight", sim.config().height},
        {"lastAction", sim.last_action()},
        {"lastActionSuccess", out.success},
        {"errorCode", to_string(out.errorCode)},
        {"errorMessage", out.errorMessage},
        {"agent",
         {{"position", wire_vec3(a.position)},
          {"rotationYaw", a.rotationYaw},
          {"cameraHorizon", a.cameraHorizon},
          {"heldObjectId", optional_id(a.heldObjectId)}}},
        {"objects", objects},
    };
}

Event build_event(const Simulation& sim, FrameSet frame) { return {std::move(frame), build_metadata(sim)}; }

std::vector<std::string> validate_metadata(const Json& m)
{
    std::vector<std::string> problems;
    auto expect = [&](const Json& obj, const char* key, auto pred, const char* what, const std::string& path) {
        if (!obj.is_object() || !obj.contains(key)) {
            problems.push_back(path + key + ": missing");
        } else if (!pred(obj[key])) {
            problems.push_back(path + key + ": expected " + what);
        }
    };
    auto is_str = [](const Json& j) { return j.is_string(); };
    auto is_int = [](const Json& j) { return j.is_number_integer(); };
    auto is_num = [](const Json& j) { return j.is_number(); };
    auto is_bool = [](const Json& j) { return j.is_boolean(); };
    auto is_str_or_null = [](const Json& j) { return j.is_string() || j.is_null(); };
    auto is_vec = [](const Json& j) {
        return j.is_object() && j.size() == 3 && j.contains("x") && j["x"].is_number() && j.contains("y") &&
               j["y"].is_number() && j.contains("z") && j["z"].is_number();
    };
    if (!m.is_object()) return {"metadata: expected object"};
    expect(m, "sceneName", is_str, "string", "");
    expect(m, "screenWidth", is_int, "integer", "");
    expect(m, "screenHeight", is_int, "integer", "");
    expect(m, "lastAction", is_str, "string", "");
    expect(m, "lastActionSuccess", is_bool, "boolean", "");
    expect(m, "errorCode", is_str, "string", "");
    expect(m, "errorMessage", is_str, "string", "");
    if (m.contains("lastActionSuccess") && m.contains("errorCode") && m["lastActionSuccess"].is_boolean() &&
        m["errorCode"].is_string() && m["lastActionSuccess"].get<bool>() != (m["errorCode"] == "None")) {
        problems.push_back("lastActionSuccess disagrees with errorCode");
    }
    expect(m, "agent", [](const Json& j) { return j.is_object(); }, "object", "");
    if (m.contains("agent") && m["agent"].is_object()) {
        const Json& a = m["agent"];
        expect(a, "position", is_vec, "{x, y, z}", "agent.");
        expect(a, "rotationYaw", is_int, "integer", "agent.");
        expect(a, "cameraHorizon", is_int, "integer", "agent.");
        expect(a, "heldObjectId", is_str_or_null, "string or null", "agent.");
    }
    expect(m, "objects", [](const Json& j) { return j.is_array(); }, "array", "");
    if (m.contains("objects") && m["objects"].is_array()) {
        std::string prev;
        for (std::size_t i = 0; i < m["objects"].size(); ++i) {
            const Json& o = m["objects"][i];
            std::string p = "objects[" + std::to_string(i) + "].";
            expect(o, "objectId", is_str, "string", p);
            expect(o, "objectType", is_str, "string", p);
            expect(o, "position", is_vec, "{x, y, z}", p);
            expect(o, "rotationYaw", is_int, "integer", p);
            expect(o, "distance", is_num, "number", p);
            for (const char* flag : {"visible", "interactable", "pickupable", "isPickedUp", "openable", "isOpen",
                                     "toggleable", "isToggled", "sliceable", "isSliced", "receptacle"}) {
                expect(o, flag, is_bool, "boolean", p);
            }
            expect(o, "parentReceptacle", is_str_or_null, "string or null", p);
            expect(o, "receptacleObjectIds", [](const Json& j) {
                return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_string(); });
            }, "array of strings", p);
            expect(o, "mass", is_num, "number", p);
            if (o.is_object() && o.contains("visible") && o.contains("interactable") && o["visible"].is_boolean() &&
                o["interactable"].is_boolean() && o["interactable"].get<bool>() && !o["visible"].get<bool>()) {
                problems.push_back(p + "interactable without visible");
            }
            if (o.is_object() && o.contains("objectId") && o["objectId"].is_string()) {
                std::string id = o["objectId"];
                if (i > 0 && !(prev < id)) problems.push_back(p + "objectId: objects not sorted by id");
                prev = id;
            }
        }
    }
    return problems;
}

std::string base64_encode(const void* data, std::size_t size)
{
    ensure_sodium();
    std::string out(sodium_base64_ENCODED_LEN(size, sodium_base64_VARIANT_ORIGINAL), '\0');
    sodium_bin2base64(out.data(), out.size(), static_cast<const unsigned char*>(data), size,
                      sodium_base64_VARIANT_ORIGINAL);
    out.resize(std::strlen(out.c_str()));
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text)
{
    ensure_sodium();
    std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
    std::size_t len = 0;
    const char* end = nullptr;
    if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                          sodium_base64_VARIANT_ORIGINAL) != 0 ||
        end != text.data() + text.size()) {
        throw DecodeError("invalid base64 payload");
    }
    out.resize(len);
    return out;
}

namespace {

std::string pack_u32(const std::vector<std::uint32_t>& v)
{
    std::vector<std::uint8_t> bytes(v.size() * 4);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (int b = 0; b < 4; ++b) bytes[4 * i + b] = static_cast<std::uint8_t>(v[i] >> (8 * b));
    }
    return base64_encode(bytes.data(), bytes.size());
}

std::vector<std::uint32_t> unpack_u32(const std::vector<std::uint8_t>& bytes)
{
    std::vector<std::uint32_t> v(bytes.size() / 4);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::uint32_t x = 0;
        for (int b = 0; b < 4; ++b) x |= static_cast<std::uint32_t>(bytes[4 * i + b]) << (8 * b);
        v[i] = x;
    }
    return v;
}

} // namespace

Json event_to_json(const Event& e)
{
    const FrameSet& f = e.frame;
    Json body{
        {"metadata", e.metadata},
        {"frame_b64", base64_encode(f.rgb.data(), f.rgb.size())},
        {"width", f.width},
        {"height", f.height},
        {"format", "RGB24"},
    };
    if (!f.depth.empty()) {
        std::vector<std::uint32_t> bits(f.depth.size());
        std::memcpy(bits.data(), f.depth.data(), bits.size() * 4);
        body["depth_b64"] = pack_u32(bits);
    }
    if (!f.ids.empty()) {
        body["ids_b64"] = pack_u32(f.ids);
        body["id_table"] = f.idTable;
    }
    return body;
}

std::string encode_event(const Event& e) { return event_to_json(e).dump(); }

Event decode_event(std::string_view text)
{
    Json body = Json::parse(text.begin(), text.end(), nullptr, false);
    if (body.is_discarded()) throw DecodeError("event body is not valid JSON");
    return event_from_json(body);
}

Event event_from_json(const Json& body)
{
    if (!body.is_object()) throw DecodeError("event body is not a JSON object");
    for (const char* key : {"metadata", "frame_b64", "width", "height", "format"}) {
        if (!body.contains(key)) throw DecodeError(std::string("event body lacks '") + key + "'");
    }
    if (!body["width"].is_number_integer() || !body["height"].is_number_integer() || !body["frame_b64"].is_string() ||
        body["format"] != "RGB24" || !body["metadata"].is_object()) {
        throw DecodeError("event body has malformed frame fields");
    }
    Event e;
    e.metadata = body["metadata"];
    FrameSet& f = e.frame;
    f.width = body["width"].get<int>();
    f.height = body["height"].get<int>();
    if (f.width <= 0 || f.height <= 0) throw DecodeError("frame dimensions must be positive");
    const std::size_t n = static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height);
    f.rgb = base64_decode(body["frame_b64"].get<std::string>());
    if (f.rgb.size() != 3 * n) throw DecodeError("frame_b64 length does not match width * height * 3");
    if (body.contains("depth_b64")) {
        if (!body["depth_b64"].is_string()) throw DecodeError("depth_b64 must be a string");
        auto bytes = base64_decode(body["depth_b64"].get<std::string>());
        if (bytes.size() != 4 * n) throw DecodeError("depth_b64 length does not match the frame");
        auto bits = unpack_u32(bytes);
        f.depth.resize(n);
        std::memcpy(f.depth.data(), bits.data(), n * 4);
    }
    if (body.contains("ids_b64")) {
        if (!body["ids_b64"].is_string() || !body.contains("id_table") || !body["id_table"].is_array()) {
            throw DecodeError("ids_b64 requires an id_table array");
        }
        auto bytes = base64_decode(body["ids_b64"].get<std::string>());
        if (bytes.size() != 4 * n) throw DecodeError("ids_b64 length does not match the frame");
        f.ids = unpack_u32(bytes);
        for (const auto& id : body["id_table"]) {
            if (!id.is_string()) throw DecodeError("id_table entries must be strings");
            f.idTable.push_back(id.get<std::string>());
        }
        for (auto v : f.ids) {
            if (v > f.idTable.size()) throw DecodeError("ids_b64 index outside id_table");
        }
    }
    return e;
}

} // namespace hearth
