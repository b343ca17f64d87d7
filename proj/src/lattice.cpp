#include "qhp/lattice.hpp"

#include <stdexcept>

namespace qhp {

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
    if (coords.size() != o.coords.size())
        throw std::invalid_argument("DivisorClass: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
    if (coords.size() != o.coords.size())
        throw std::invalid_argument("DivisorClass: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
}

NSLattice::NSLattice() : labels_{"H"} {}

IntMatrix NSLattice::gram() const {
    IntMatrix g(rank(), rank());
    g.at(0, 0) = 1;
    for (std::size_t i = 1; i < rank(); ++i) g.at(i, i) = -1;
    return g;
}

DivisorClass NSLattice::canonical_class() const {
    DivisorClass k(rank());
    k.coords[0] = -3;
    for (std::size_t i = 1; i < rank(); ++i) k.coords[i] = 1;
    return k;
}

DivisorClass NSLattice::class_h() const {
    DivisorClass c(rank());
    c.coords[0] = 1;
    return c;
}

DivisorClass NSLattice::class_e(std::size_t i) const {
    if (i == 0 || i >= rank()) throw std::out_of_range("NSLattice::class_e");
    DivisorClass c(rank());
    c.coords[i] = 1;
    return c;
}

Int NSLattice::pair(const DivisorClass& a, const DivisorClass& b) const {
    if (a.rank() != rank() || b.rank() != rank())
        throw std::invalid_argument("NSLattice::pair: rank mismatch");
    Int s = a.coords[0] * b.coords[0];
    for (std::size_t i = 1; i < rank(); ++i) s -= a.coords[i] * b.coords[i];
    return s;
}

NSLattice NSLattice::blowup_extend(const std::string& label) const {
    NSLattice l = *this;
    l.labels_.push_back(label.empty() ? "E_" + std::to_string(rank()) : label);
    return l;
}

DivisorClass NSLattice::embed(const DivisorClass& c) const {
    if (c.rank() > rank()) throw std::invalid_argument("NSLattice::embed: class too large");
    DivisorClass e(rank());
    for (std::size_t i = 0; i < c.rank(); ++i) e.coords[i] = c.coords[i];
    return e;
}

} // namespace qhp
