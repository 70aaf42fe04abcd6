#ifndef SYMGRAPH_MACAULAY_HPP
#define SYMGRAPH_MACAULAY_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "monomial.hpp"
#include "rational.hpp"
#include "sympoly.hpp"

namespace symgraph {

// Degree-r generators spanning a subspace B of S^r W.
struct PolySystem {
    int dim = 1;  // e = dim W
    int r = 1;
    std::vector<SymPoly> gens;
};

struct DegreeRank {
    int N;
    std::size_t rank;
    std::size_t target;  // dim S^N W
};

struct MacaulayReport {
    bool certified = false;
    std::optional<int> first_surjective_N;
    std::vector<DegreeRank> ranks_by_N;
};

inline void check_system(const PolySystem& B) {
    if (B.gens.empty()) throw std::invalid_argument("empty generator list");
    for (const auto& g : B.gens)
        if (g.dim != B.dim || g.degree != B.r)
            throw std::invalid_argument("generator with wrong dimension or degree");
}

// Rank of the multiplication map S^{N-r}W (x) span B -> S^N W on monomial bases.
inline DegreeRank ideal_component_rank(const PolySystem& B, int N) {
    check_system(B);
    if (N < B.r) throw std::invalid_argument("ideal_component_rank: N < r");
    BasisIndex target(B.dim, N);
    auto cof = monomial_basis(B.dim, N - B.r);
    Matrix m(target.size(), cof.size() * B.gens.size());
    std::size_t col = 0;
    for (const auto& g : B.gens)
        for (const auto& mu : cof) {
            SymPoly mono(B.dim, N - B.r);
            mono.add_term(mu, 1);
            SymPoly prod = g * mono;
            for (const auto& [e, c] : prod.terms) m(target.index_of(e), col) = c;
            ++col;
        }
    return {N, m.rank(), target.size()};
}

inline bool ideal_component_surjective(const PolySystem& B, int N) {
    auto dr = ideal_component_rank(B, N);
    return dr.rank == dr.target;
}

// Scans N = r..N_max for the first degree where the ideal generated by B
// contains all of S^N W. Surjectivity at any N certifies that the system has
// no common zero besides the origin over any extension field; absence of
// surjectivity is conclusive only once N_max reaches the Macaulay bound r*e.
inline MacaulayReport certify_basepoint_free(const PolySystem& B, int N_max) {
    check_system(B);
    if (N_max < B.r) throw std::invalid_argument("certify_basepoint_free: N_max < r");
    MacaulayReport rep;
    for (int N = B.r; N <= N_max; ++N) {
        auto dr = ideal_component_rank(B, N);
        rep.ranks_by_N.push_back(dr);
        if (dr.rank == dr.target) {
            rep.certified = true;
            rep.first_surjective_N = N;
            break;
        }
    }
    return rep;
}

// D(N) = (dim S^N V)^2 with dim V = d.
inline Int big_D(int N, int d) {
    Int s = binomial(Int(d + N - 1), N);
    return s * s;
}

// The effective vertex bound: lcm of all integers up to D(r*d). Exact and
// astronomically large for d >= 3, as the construction it comes from.
inline Int nu(int r, int d) {
    if (r < 1 || d < 1) throw std::invalid_argument("nu: need r, d >= 1");
    return lcm_upto(big_D(r * d, d));
}

}  // namespace symgraph

#endif
