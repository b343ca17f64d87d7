#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhp/arrangement.hpp"
#include "qhp/graph.hpp"
#include "qhp/lattice.hpp"

namespace qhp {

// Minimal log resolution of a valid arrangement: the weighted dual graph of
// the reduced total transform plus full Neron-Severi bookkeeping.
struct ResolutionResult {
    DualGraph graph;
    NSLattice lattice;
    std::map<std::string, DivisorClass> classes; // per graph vertex
    // per original singular point: exceptional vertex ids, first blown up
    // first; the last entry is the unique (-1)-curve over the point
    std::map<std::string, std::vector<std::string>> exceptional_order;

    // Number of blowups performed over point p (0 for snc nodes).
    std::size_t blowup_count(const std::string& point_id) const;

    // class/graph consistency: pairings reproduce adjacency, self-intersections
    // and adjunction. Throws std::logic_error on violation.
    void check_consistency() const;
};

ResolutionResult minimal_log_resolution(const Arrangement& arr);

} // namespace qhp
