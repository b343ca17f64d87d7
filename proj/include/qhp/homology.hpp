#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhp/expansion.hpp"
#include "qhp/graph.hpp"
#include "qhp/lattice.hpp"
#include "qhp/matrix.hpp"
#include "qhp/weightpoly.hpp"

namespace qhp {

struct QhpVerdict {
    bool is_qhp = false;
    std::vector<std::string> reasons; // failed conditions, empty when QHP
    Int detm = 0;
    std::optional<Int> coker;  // nullopt = infinite
    Int h1_order = 0;          // valid when is_qhp
    Int d_of_d = 0;            // |d(D)| of the boundary

    std::string to_json() const;
};

// Columns are the component classes of the graph's vertices in the lattice
// basis; column order = `order_out` (sorted vertex ids).
IntMatrix restriction_matrix(const DualGraph& g, const NSLattice& lat,
                             const std::map<std::string, DivisorClass>& classes,
                             std::vector<std::string>& order_out);

// Identity-expansion criterion: X rational (assumed), D a rational tree,
// #D = rank, r_D surjective over Q. Then #H1 = |d(D)|^{1/2}.
QhpVerdict qhp_check_direct(const DualGraph& g, const NSLattice& lat,
                            const std::map<std::string, DivisorClass>& classes);

// The n x n matrix m_{ij} = u_i c_j(U_i) + w_i c_j(W_i), where c_j reads the
// kernel relation coefficients. A size mismatch is reported by the caller as
// a criterion failure, not here.
IntMatrix m_matrix(const std::vector<std::vector<Int>>& kernel,
                   const std::vector<std::string>& comp_order,
                   const std::vector<ExpansionRecord>& records);

// Full expansion criterion on (D', classes) with the given records;
// evaluates conditions (1)-(3) and the square identity.
QhpVerdict qhp_check_expansion(const DualGraph& d_prime, const NSLattice& lat,
                               const std::map<std::string, DivisorClass>& classes,
                               const DualGraph& d_final,
                               const std::vector<ExpansionRecord>& records);

// det m as a multilinear polynomial in the center weight pairs, normalized
// (content divided out, sign fixed by the first monomial).
WeightPolynomial detm_symbolic(const std::vector<std::vector<Int>>& kernel,
                               const std::vector<std::string>& comp_order,
                               const std::vector<ExpansionCenter>& centers);

// The same determinant without normalization; H1 orders come from this one
// (the content is part of |det m|).
WeightPolynomial detm_symbolic_raw(const std::vector<std::vector<Int>>& kernel,
                                   const std::vector<std::string>& comp_order,
                                   const std::vector<ExpansionCenter>& centers);

struct ZhpSearchResult {
    bool found = false;
    std::string message;
    std::vector<std::pair<Int, Int>> weights;
};

// For a single-center linear form a*u + b*w: find pairs with |a u + b w| = k
// via the u = k u0 - l b, w = k w0 + l a parametrization, l coprime to k.
// search_bound limits the initial (u0, w0) scan by u0 + w0.
ZhpSearchResult zhp_weights(const WeightPolynomial& form, const Int& k, std::size_t count,
                            const Int& search_bound = 1000);

} // namespace qhp
