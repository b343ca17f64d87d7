#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhp/graph.hpp"
#include "qhp/lattice.hpp"

namespace qhp {

// A node x where components U and W meet, plus a positive weight u/w in
// lowest terms.
struct ExpansionCenter {
    std::string u_comp;
    std::string w_comp;
    std::string node; // may stay empty when U,W meet at a unique node
    Int u = 1, w = 1;
};

struct ExpansionRecord {
    ExpansionCenter center;
    std::vector<std::string> inserted_chain; // U-side first, W-side last
    std::string bubble;                      // the unique (-1)-curve A
    // multiplicity of each inserted curve in (phi*U, phi*W)
    std::map<std::string, std::pair<Int, Int>> multiplicity;
    // internal blowup log for exact contraction: (new vertex, left, right, node consumed)
    struct Step {
        std::string created, left, right, node;
    };
    std::vector<Step> steps;
};

struct ExpansionState {
    DualGraph graph;
    NSLattice lattice;
    std::map<std::string, DivisorClass> classes;
};

// Perform one expansion. The returned state's graph is the new boundary
// (reduced total transform minus the bubble); the bubble vertex itself is
// reported in the record and kept out of the graph.
ExpansionState expand(const ExpansionState& st, const ExpansionCenter& center,
                      ExpansionRecord& record_out);

// Sequential expansion at several centers of the current graph.
ExpansionState expand_many(const ExpansionState& st, const std::vector<ExpansionCenter>& centers,
                           std::vector<ExpansionRecord>& records_out);

// Definition check: each record's chain (with the bubble reinserted) is a
// chain with a unique (-1)-curve whose multiplicities in the pullbacks of
// U and W are exactly the recorded coprime pair, and the boundary is the
// reduced total transform minus the bubbles.
bool is_expansion(const ExpansionState& before, const ExpansionState& after,
                  const std::vector<ExpansionRecord>& records);

// Exact inverse along the recorded history.
ExpansionState contract_expansion(const ExpansionState& st, const ExpansionRecord& record);

// Tracked (-1)-vertices meeting the boundary twice, on two distinct
// components. `graph_with_tracked` must contain both the boundary and the
// tracked curves.
std::vector<std::string> find_bubbles(const DualGraph& graph_with_tracked,
                                      const std::set<std::string>& tracked,
                                      const std::set<std::string>& boundary);

// Parse "u/w" or "u" into a positive rational in lowest terms.
std::pair<Int, Int> parse_weight(const std::string& text);

} // namespace qhp
