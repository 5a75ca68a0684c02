// Regenerates the golden files under tests/fixtures. Run after an intended
// change to generation or simulation output, then review the diff.
#include "hearth/bench.hpp"
#include "hearth/event.hpp"
#include "hearth/scene_gen.hpp"

#include <fstream>
#include <iostream>

using namespace hearth;

namespace {

void write(const std::string& name, const std::string& text)
{
    std::ofstream out(std::string(HEARTH_FIXTURE_DIR) + "/" + name, std::ios::binary);
    out << text;
    std::cout << "wrote " << name << "\n";
}

std::string hex(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

int main()
{
    const Scene g = generate_scene(17);
    write("golden_scene_17.json", serialize_scene(g));
    write("randomize_17_seed42.json", serialize_scene(randomize_objects(g, 42).scene));

    Scene a = randomize_objects(g, 1).scene;
    Scene b = randomize_objects(g, 2).scene;
    Json diff = Json::array();
    for (const auto& o : a.objects) {
        const ObjectInstance* other = b.find_object(o.objectId);
        if (o.parentReceptacle != other->parentReceptacle) {
            diff.push_back({{"objectId", o.objectId},
                            {"seed1", o.parentReceptacle ? Json(*o.parentReceptacle) : Json(nullptr)},
                            {"seed2", other->parentReceptacle ? Json(*other->parentReceptacle) : Json(nullptr)}});
        }
    }
    write("randomize_17_seed1_vs_seed2.json", diff.dump(2) + "\n");

    SessionConfig cfg;
    cfg.renderDepth = true;
    cfg.renderInstanceIds = true;
    Simulation sim(17, cfg);
    CounterRng rng(builtin_action_mix().seed, 99);
    Json actions = Json::array();
    Json frames = Json::array();
    for (int i = 0; i < 50; ++i) {
        ActionRequest req = next_scripted_action(rng, builtin_action_mix(), sim);
        actions.push_back(action_to_json(req));
        sim.step(req);
        frames.push_back(hex(sim.render(1).hash()));
    }
    std::string state = canonical_scene_text(sim.scene());
    Json script{{"scene", 17},
                {"actions", actions},
                {"frame_hashes", frames},
                {"final_state_hash", hex(fnv1a(state.data(), state.size()))}};
    write("script_50_scene17.json", script.dump(2) + "\n");
}
