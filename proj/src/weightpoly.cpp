#include "qhp/weightpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qhp {

bool WeightPolynomial::is_zero() const {
    for (const auto& c : coeff_)
        if (c != 0) return false;
    return true;
}

WeightPolynomial WeightPolynomial::normalized() const {
    WeightPolynomial r = *this;
    Int g = 0;
    for (const auto& c : r.coeff_) g = int_gcd(g, int_abs(c));
    if (g > 1)
        for (auto& c : r.coeff_) c /= g;
    // lexicographically-first monomial: u sorts before w per center, i.e.
    // masks with higher bits (u) in earlier centers come first; center 0 is
    // the most significant for this ordering.
    std::vector<std::size_t> order;
    for (std::size_t m = 0; m < r.coeff_.size(); ++m) order.push_back(m);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n_; ++i) {
            bool ua = a & (std::size_t(1) << i), ub = b & (std::size_t(1) << i);
            if (ua != ub) return ua; // u before w
        }
        return false;
    });
    for (std::size_t m : order) {
        if (r.coeff_[m] == 0) continue;
        if (r.coeff_[m] < 0)
            for (auto& c : r.coeff_) c = -c;
        break;
    }
    return r;
}

bool WeightPolynomial::proportional_to(const WeightPolynomial& o) const {
    if (n_ != o.n_) return false;
    return normalized().coeff_ == o.normalized().coeff_;
}

Int WeightPolynomial::evaluate(const std::vector<std::pair<Int, Int>>& weights) const {
    if (weights.size() != n_) throw std::invalid_argument("WeightPolynomial: arity mismatch");
    Int total = 0;
    for (std::size_t m = 0; m < coeff_.size(); ++m) {
        if (coeff_[m] == 0) continue;
        Int t = coeff_[m];
        for (std::size_t i = 0; i < n_; ++i)
            t *= (m & (std::size_t(1) << i)) ? weights[i].first : weights[i].second;
        total += t;
    }
    return total;
}

std::string WeightPolynomial::str(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    // monomials in lex order, u before w per center
    std::vector<std::size_t> order;
    for (std::size_t m = 0; m < coeff_.size(); ++m) order.push_back(m);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n_; ++i) {
            bool ua = a & (std::size_t(1) << i), ub = b & (std::size_t(1) << i);
            if (ua != ub) return ua;
        }
        return false;
    });
    for (std::size_t m : order) {
        if (coeff_[m] == 0) continue;
        Int c = coeff_[m];
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Int a = int_abs(c);
        if (a != 1 || n_ == 0) os << a;
        for (std::size_t i = 0; i < n_; ++i) {
            std::string base = i < names.size() ? names[i] : std::to_string(i + 1);
            bool lead = (a == 1 && n_ != 0 && i == 0);
            os << (lead ? "" : "*") << ((m & (std::size_t(1) << i)) ? "u" : "w") << base;
        }
    }
    if (first) os << "0";
    return os.str();
}

VarPolynomial VarPolynomial::constant(const Rat& c) {
    VarPolynomial p;
    if (c != 0) p.terms_[{}] = c;
    return p;
}

VarPolynomial VarPolynomial::variable(const std::string& name) {
    VarPolynomial p;
    p.terms_[{{name, 1}}] = 1;
    return p;
}

VarPolynomial VarPolynomial::operator+(const VarPolynomial& o) const {
    VarPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) {
        r.terms_[m] += c;
        if (r.terms_[m] == 0) r.terms_.erase(m);
    }
    return r;
}

VarPolynomial VarPolynomial::operator-(const VarPolynomial& o) const {
    VarPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) {
        r.terms_[m] -= c;
        if (r.terms_[m] == 0) r.terms_.erase(m);
    }
    return r;
}

VarPolynomial VarPolynomial::operator*(const VarPolynomial& o) const {
    VarPolynomial r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            std::map<std::string, int> m = m1;
            for (const auto& [v, e] : m2) m[v] += e;
            r.terms_[m] += c1 * c2;
            if (r.terms_[m] == 0) r.terms_.erase(m);
        }
    return r;
}

Rat VarPolynomial::evaluate(const std::map<std::string, Rat>& env) const {
    Rat total = 0;
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (const auto& [v, e] : m) {
            auto it = env.find(v);
            if (it == env.end()) throw std::invalid_argument("unbound variable: " + v);
            for (int i = 0; i < e; ++i) t *= it->second;
        }
        total += t;
    }
    return total;
}

WeightPolynomial VarPolynomial::clear_denominators(const std::vector<std::string>& vars) const {
    std::size_t n = vars.size();
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) {
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                throw std::invalid_argument("variable not bound to a center: " + v);
            if (e > 1)
                throw std::invalid_argument("constraint polynomial not multilinear in " + v);
        }
    WeightPolynomial out(n);
    Int denom = 1; // common denominator of all rational coefficients
    for (const auto& [m, c] : terms_) {
        Int d = rat_den(c);
        denom = denom / int_gcd(denom, d) * d;
    }
    for (const auto& [m, c] : terms_) {
        std::size_t mask = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto it = m.find(vars[i]);
            if (it != m.end() && it->second == 1) mask |= std::size_t(1) << i;
        }
        Rat scaled = c * Rat(denom);
        out.coeff(mask) += rat_num(scaled);
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }

    VarPolynomial parse_expr() {
        VarPolynomial r = parse_term();
        while (true) {
            if (eat('+'))
                r = r + parse_term();
            else if (eat('-'))
                r = r - parse_term();
            else
                break;
        }
        return r;
    }

    VarPolynomial parse_term() {
        VarPolynomial r = parse_factor();
        while (eat('*')) r = r * parse_factor();
        return r;
    }

    VarPolynomial parse_factor() {
        skip();
        if (eat('(')) {
            VarPolynomial r = parse_expr();
            if (!eat(')')) throw std::invalid_argument("expected ')' in: " + s);
            return r;
        }
        if (eat('-')) return VarPolynomial::constant(-1) * parse_factor();
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            Int num(s.substr(start, pos - start));
            if (eat('/')) {
                skip();
                std::size_t dstart = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (dstart == pos) throw std::invalid_argument("expected denominator in: " + s);
                Int den(s.substr(dstart, pos - dstart));
                return VarPolynomial::constant(Rat(num, den));
            }
            return VarPolynomial::constant(Rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            return VarPolynomial::variable(s.substr(start, pos - start));
        }
        throw std::invalid_argument("parse error at '" + std::string(1, c) + "' in: " + s);
    }
};

} // namespace

VarPolynomial VarPolynomial::parse(const std::string& text) {
    Parser p(text);
    VarPolynomial r = p.parse_expr();
    p.skip();
    if (p.pos != text.size()) throw std::invalid_argument("trailing input in: " + text);
    return r;
}

} // namespace qhp
