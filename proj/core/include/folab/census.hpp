#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "folab/graph.hpp"

namespace folab {

struct ComponentClass {
    std::string key; ///< canonical graph6 of the component
    std::size_t multiplicity = 0;
    std::size_t order = 0;
    bool is_tree = false;
    Graph representative; ///< canonical form
};

/// Connected components grouped by isomorphism class.
struct ComponentCensus {
    std::size_t n = 0;
    std::vector<ComponentClass> classes; ///< sorted by (order, key)
    std::map<std::size_t, std::size_t> trees; ///< k -> t_k, nonzero entries only

    /// Number of order-k tree components.
    std::size_t t(std::size_t k) const;

    /// c_F: number of components isomorphic to `f` (0 unless f is connected).
    std::size_t count_of(const Graph& f) const;
};

ComponentCensus component_census(const Graph& g);

} // namespace folab
