#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cgsym {

/// Variable codes for the symbolic edge parameters. lam(i,j) is the arrow
/// weight of i -> j; omg(i,j) with i <= j covers undirected edges and the
/// diagonal.
namespace var {

inline int lam(int i, int j) { return 0x10000 | (i << 8) | j; }

inline int omg(int i, int j) {
    if (i > j) std::swap(i, j);
    return 0x20000 | (i << 8) | j;
}

inline std::string name(int code) {
    int i = (code >> 8) & 0xff, j = code & 0xff;
    return std::string((code & 0x10000) ? "l" : "w") + "(" + std::to_string(i) + "," +
           std::to_string(j) + ")";
}

}  // namespace var

/// Multivariate polynomial with 64-bit integer coefficients over the edge
/// variables. Term counts stay tiny at the enforced sizes, so a sorted-map
/// representation is plenty.
class Poly {
public:
    // monomial: (variable code, exponent) pairs, sorted by code
    using Monomial = std::vector<std::pair<int, int>>;

    Poly() = default;

    static Poly constant(long long c) {
        Poly p;
        if (c != 0) p.terms_[{}] = c;
        return p;
    }

    static Poly variable(int code, long long coeff = 1) {
        Poly p;
        if (coeff != 0) p.terms_[{{code, 1}}] = coeff;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, long long>& terms() const { return terms_; }

    void add_term(const Monomial& mono, long long coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.emplace(mono, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Poly operator-(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }

    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
                r.add_term(merge_monomials(ma, mb), ca * cb);
        return r;
    }

    Poly negate() const { return Poly::constant(0) - *this; }

    bool operator==(const Poly&) const = default;

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " ";
            out += (c >= 0 ? "+" : "-") + std::to_string(c >= 0 ? c : -c);
            for (auto [code, exp] : m) {
                out += "*" + var::name(code);
                if (exp > 1) out += "^" + std::to_string(exp);
            }
        }
        return out;
    }

private:
    static Monomial merge_monomials(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
                r.push_back(a[i++]);
            else if (i == a.size() || b[j].first < a[i].first)
                r.push_back(b[j++]);
            else {
                r.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::map<Monomial, long long> terms_;
};

}  // namespace cgsym
