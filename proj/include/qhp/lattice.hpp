#pragma once

#include <string>
#include <vector>

#include "qhp/matrix.hpp"
#include "qhp/numbers.hpp"

namespace qhp {

// Class of a divisor in the basis (H, E_1, ..., E_N).
struct DivisorClass {
    std::vector<Int> coords;

    DivisorClass() = default;
    explicit DivisorClass(std::size_t rank) : coords(rank) {}

    std::size_t rank() const { return coords.size(); }

    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    bool operator==(const DivisorClass& o) const = default;
};

// Neron-Severi lattice of an iterated blowup of the plane:
// gram = diag(+1, -1, ..., -1), K = -3H + sum E_i.
class NSLattice {
public:
    NSLattice(); // the plane itself, rank 1

    std::size_t rank() const { return labels_.size(); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    IntMatrix gram() const;

    DivisorClass canonical_class() const;

    // Class of the hyperplane H and of the i-th exceptional basis vector
    // (1-based: E_1 .. E_{rank-1}).
    DivisorClass class_h() const;
    DivisorClass class_e(std::size_t i) const;

    Int pair(const DivisorClass& a, const DivisorClass& b) const;

    // New lattice with one more exceptional basis vector E_{N+1}.
    NSLattice blowup_extend(const std::string& label = "") const;

    // Zero-pad a class from a lower-rank lattice into this one
    // (the isometric embedding given by pullback).
    DivisorClass embed(const DivisorClass& c) const;

private:
    std::vector<std::string> labels_;
};

} // namespace qhp
