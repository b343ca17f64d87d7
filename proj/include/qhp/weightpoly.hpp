#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhp/numbers.hpp"

namespace qhp {

// Multilinear integer polynomial in pairs (u_i, w_i), one pair per expansion
// center: every monomial picks u or w from each pair. Stored as a dense
// vector of 2^n coefficients; bit i set means u_i, clear means w_i.
class WeightPolynomial {
public:
    WeightPolynomial() = default;
    explicit WeightPolynomial(std::size_t n) : n_(n), coeff_(std::size_t(1) << n) {}

    std::size_t centers() const { return n_; }
    Int& coeff(std::size_t mask) { return coeff_[mask]; }
    const Int& coeff(std::size_t mask) const { return coeff_[mask]; }

    bool is_zero() const;

    // Divide by the content and make the lexicographically-first nonzero
    // monomial positive (monomials ordered u-before-w per center).
    WeightPolynomial normalized() const;

    bool proportional_to(const WeightPolynomial& o) const;

    // Exact evaluation at weights v_i = u_i / w_i.
    Int evaluate(const std::vector<std::pair<Int, Int>>& weights) const;

    std::string str(const std::vector<std::string>& center_names = {}) const;

private:
    std::size_t n_ = 0;
    std::vector<Int> coeff_;
};

// A polynomial expression over named weight variables, with rational
// coefficients; used for admissibility predicates from the catalog tables.
// Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
// factor := rational | var | '(' expr ')'. Implicit multiplication is not
// accepted; write 'v*w'.
class VarPolynomial {
public:
    static VarPolynomial parse(const std::string& text);
    static VarPolynomial constant(const Rat& c);
    static VarPolynomial variable(const std::string& name);

    VarPolynomial operator+(const VarPolynomial& o) const;
    VarPolynomial operator-(const VarPolynomial& o) const;
    VarPolynomial operator*(const VarPolynomial& o) const;

    // Exact evaluation with every variable bound.
    Rat evaluate(const std::map<std::string, Rat>& env) const;

    // Substitute var_order[i] -> u_i / w_i and clear denominators, assuming
    // the result is multilinear per pair (degree <= 1 in each variable).
    WeightPolynomial clear_denominators(const std::vector<std::string>& var_order) const;

    const std::map<std::map<std::string, int>, Rat>& terms() const { return terms_; }

private:
    // monomial (var -> exponent) -> coefficient
    std::map<std::map<std::string, int>, Rat> terms_;
};

} // namespace qhp
