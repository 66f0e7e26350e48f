#include "folab/census.hpp"

#include <algorithm>

#include "folab/graph6.hpp"
#include "folab/isomorphism.hpp"

namespace folab {

std::size_t ComponentCensus::t(std::size_t k) const {
    auto it = trees.find(k);
    return it == trees.end() ? 0 : it->second;
}

std::size_t ComponentCensus::count_of(const Graph& f) const {
    if (f.order() == 0 || !is_connected(f)) return 0;
    const std::string key = canonical_key(f);
    for (const auto& c : classes)
        if (c.order == f.order() && c.key == key) return c.multiplicity;
    return 0;
}

ComponentCensus component_census(const Graph& g) {
    ComponentCensus out;
    out.n = g.order();
    std::map<std::pair<std::size_t, std::string>, std::size_t> index;
    for (const auto& comp : components(g)) {
        Graph sub = g.induced(comp);
        Graph canon = canonical_form(sub);
        std::string key = graph6::encode(canon);
        auto [it, fresh] = index.try_emplace({sub.order(), key}, out.classes.size());
        if (fresh) {
            ComponentClass c;
            c.key = std::move(key);
            c.order = sub.order();
            c.is_tree = sub.size() + 1 == sub.order();
            c.representative = std::move(canon);
            out.classes.push_back(std::move(c));
        }
        ++out.classes[it->second].multiplicity;
    }
    std::sort(out.classes.begin(), out.classes.end(), [](const auto& a, const auto& b) {
        return a.order != b.order ? a.order < b.order : a.key < b.key;
    });
    for (const auto& c : out.classes)
        if (c.is_tree) out.trees[c.order] += c.multiplicity;
    return out;
}

} // namespace folab
