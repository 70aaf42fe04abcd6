#ifndef SYMGRAPH_MONOMIAL_HPP
#define SYMGRAPH_MONOMIAL_HPP

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace symgraph {

// Exponent vector of a monomial; length = ambient dimension.
using ExpVec = std::vector<int>;

inline int expvec_degree(const ExpVec& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

// dim S^N V for dim V = d, i.e. C(d+N-1, N). Fits comfortably in long at desk scale.
inline long sym_dim(int d, int N) {
    if (d < 1 || N < 0) throw std::invalid_argument("sym_dim: need d >= 1, N >= 0");
    Int b = binomial(Int(d + N - 1), N);
    return b.get_si();
}

namespace detail {
inline void monomials_rec(int d, int N, ExpVec& cur, std::vector<ExpVec>& out) {
    if (static_cast<int>(cur.size()) == d - 1) {
        cur.push_back(N);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = N; k >= 0; --k) {
        cur.push_back(k);
        monomials_rec(d, N - k, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

// All degree-N monomials in d variables, graded lexicographic:
// within the (fixed) degree, earlier variables weigh more, e.g.
// (2,0) > (1,1) > (0,2).
inline std::vector<ExpVec> monomial_basis(int d, int N) {
    if (d < 1 || N < 0) throw std::invalid_argument("monomial_basis: need d >= 1, N >= 0");
    std::vector<ExpVec> out;
    ExpVec cur;
    detail::monomials_rec(d, N, cur, out);
    return out;
}

// Index of a monomial within monomial_basis(d, N).
inline std::size_t monomial_index(const ExpVec& e, int d, int N) {
    // The basis is small at desk scale; a map would not pay for itself at
    // single lookups, but callers doing whole-basis work should build one.
    auto basis = monomial_basis(d, N);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == e) return i;
    throw std::invalid_argument("monomial_index: exponent vector not in basis");
}

class BasisIndex {
public:
    BasisIndex(int d, int N) : basis_(monomial_basis(d, N)) {
        for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
    }
    std::size_t size() const { return basis_.size(); }
    const ExpVec& at(std::size_t i) const { return basis_[i]; }
    std::size_t index_of(const ExpVec& e) const {
        auto it = index_.find(e);
        if (it == index_.end())
            throw std::invalid_argument("BasisIndex: exponent vector not in basis");
        return it->second;
    }

private:
    std::vector<ExpVec> basis_;
    std::map<ExpVec, std::size_t> index_;
};

}  // namespace symgraph

#endif
