#include "layout/corpus.hpp"

#include <set>

namespace layout {

CategoryPair unordered_pair(const std::string& a, const std::string& b) {
    return a <= b ? CategoryPair{a, b} : CategoryPair{b, a};
}

RelationGraph build_relation_graph(const std::vector<Scene>& corpus) {
    RelationGraph graph;
    for (const Scene& scene : corpus) {
        if (scene_problem(scene)) {
            ++graph.scenes_skipped;
            continue;
        }
        ++graph.scenes_used;
        const auto& objs = scene.objects;
        for (std::size_t i = 0; i < objs.size(); ++i) {
            graph.wall_samples[objs[i].category].push_back(
                wall_attributes(objs[i], scene.room));
            for (std::size_t j = 0; j < objs.size(); ++j) {
                if (i == j) continue;
                graph.relations[{objs[i].category, objs[j].category}].push_back(
                    relative_pose(objs[i], objs[j]));
            }
        }
        // co-occurrence: one count per room per unordered pair present in it;
        // a same-category pair counts when the room holds two or more instances
        std::map<std::string, std::size_t> counts;
        for (const auto& obj : objs) ++counts[obj.category];
        std::set<CategoryPair> seen;
        for (auto ia = counts.begin(); ia != counts.end(); ++ia) {
            if (ia->second >= 2) seen.insert({ia->first, ia->first});
            for (auto ib = std::next(ia); ib != counts.end(); ++ib)
                seen.insert(unordered_pair(ia->first, ib->first));
        }
        for (const auto& key : seen) ++graph.cooccurrence[key];
    }
    return graph;
}

}  // namespace layout
