#ifndef SYMGRAPH_SYMPOLY_HPP
#define SYMGRAPH_SYMPOLY_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace symgraph {

// Homogeneous polynomial of fixed degree: finite map exponent vector -> scalar.
// Zero coefficients are never stored.
struct SymPoly {
    int dim = 1;
    int degree = 0;
    std::map<ExpVec, Rat> terms;

    SymPoly() = default;
    SymPoly(int d, int deg) : dim(d), degree(deg) {
        if (d < 1 || deg < 0) throw std::invalid_argument("SymPoly: need dim >= 1, degree >= 0");
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const ExpVec& e, const Rat& c) {
        if (static_cast<int>(e.size()) != dim || expvec_degree(e) != degree)
            throw std::invalid_argument("SymPoly::add_term: wrong shape or degree");
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    Rat coeff(const ExpVec& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Rat(0) : it->second;
    }

    SymPoly operator+(const SymPoly& o) const {
        if (dim != o.dim || degree != o.degree)
            throw std::invalid_argument("SymPoly sum: shape mismatch");
        SymPoly r = *this;
        for (const auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }

    SymPoly scaled(const Rat& c) const {
        SymPoly r(dim, degree);
        if (c == 0) return r;
        for (const auto& [e, k] : terms) r.terms.emplace(e, k * c);
        return r;
    }

    // Polynomial product; degrees add.
    SymPoly operator*(const SymPoly& o) const {
        if (dim != o.dim) throw std::invalid_argument("SymPoly product: dimension mismatch");
        SymPoly r(dim, degree + o.degree);
        for (const auto& [ea, ca] : terms)
            for (const auto& [eb, cb] : o.terms) {
                ExpVec e(dim);
                for (int i = 0; i < dim; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    // Evaluation at a rational point (used for pairing against u^{tensor r}).
    Rat eval(const std::vector<Rat>& x) const {
        if (static_cast<int>(x.size()) != dim)
            throw std::invalid_argument("SymPoly::eval: point dimension mismatch");
        Rat total = 0;
        for (const auto& [e, c] : terms) {
            Rat t = c;
            for (int i = 0; i < dim; ++i)
                if (e[i] > 0) t *= rat_pow(x[i], e[i]);
            total += t;
        }
        return total;
    }

    // Substitute x_i -> sum_a L(a,i) x'_a; L has new_dim rows and dim columns.
    template <typename Mat>
    SymPoly substitute_linear(const Mat& L) const {
        int new_dim = static_cast<int>(L.rows());
        if (static_cast<int>(L.cols()) != dim)
            throw std::invalid_argument("substitute_linear: shape mismatch");
        SymPoly r(new_dim, degree);
        for (const auto& [e, c] : terms) {
            SymPoly t(new_dim, 0);
            t.add_term(ExpVec(new_dim, 0), c);
            for (int i = 0; i < dim; ++i) {
                for (int k = 0; k < e[i]; ++k) {
                    SymPoly lin(new_dim, 1);
                    for (int a = 0; a < new_dim; ++a) {
                        ExpVec u(new_dim, 0);
                        u[a] = 1;
                        lin.add_term(u, L(a, i));
                    }
                    t = t * lin;
                }
            }
            r = r + t;
        }
        return r;
    }

    bool operator==(const SymPoly& o) const {
        return dim == o.dim && degree == o.degree && terms == o.terms;
    }
};

// The linear form with coordinate vector v.
inline SymPoly linear_form(const std::vector<Rat>& v) {
    SymPoly p(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        ExpVec e(v.size(), 0);
        e[i] = 1;
        p.add_term(e, v[i]);
    }
    return p;
}

// (linear form)^r; the polynomial carrying the symmetric tensor v^{tensor r}.
inline SymPoly power_of_linear(const std::vector<Rat>& v, int r) {
    SymPoly p(static_cast<int>(v.size()), 0);
    p.add_term(ExpVec(v.size(), 0), 1);
    SymPoly l = linear_form(v);
    for (int k = 0; k < r; ++k) p = p * l;
    return p;
}

}  // namespace symgraph

#endif
