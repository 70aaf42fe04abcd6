#ifndef SYMGRAPH_GRAPHS_HPP
#define SYMGRAPH_GRAPHS_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "operators.hpp"
#include "rational.hpp"
#include "sympoly.hpp"

namespace symgraph {

// Decorated bipartite multigraphs: m alpha-vertices decorated by degree-r
// elements over V, m beta-vertices decorated over W, arrows decorated by the
// pairing u. A graph is represented by its m x m arrow multiplicity matrix;
// every row and column sum equals r.

using MultMatrix = std::vector<std::vector<int>>;

struct DecoratedGraph {
    int m = 1;
    int r = 1;
    MultMatrix mult;
    std::vector<SymPoly> vdecs;  // over V, degree r
    std::vector<SymPoly> wdecs;  // over W, degree r
    Matrix pairing;              // d x e
};

inline void check_margins(const MultMatrix& mult, int r) {
    std::size_t m = mult.size();
    for (const auto& row : mult) {
        if (row.size() != m) throw std::invalid_argument("multiplicity matrix not square");
        int s = 0;
        for (int x : row) {
            if (x < 0) throw std::invalid_argument("negative arrow multiplicity");
            s += x;
        }
        if (s != r) throw std::invalid_argument("row sum differs from r");
    }
    for (std::size_t j = 0; j < m; ++j) {
        int s = 0;
        for (std::size_t i = 0; i < m; ++i) s += mult[i][j];
        if (s != r) throw std::invalid_argument("column sum differs from r");
    }
}

namespace detail {
inline void tables_rec(int m, int r, int row, std::vector<int>& col_rem,
                       MultMatrix& cur, std::vector<MultMatrix>& out) {
    if (row == m) {
        out.push_back(cur);
        return;
    }
    // Enumerate this row's composition of r in lex-descending order.
    std::vector<int> rowv(m, 0);
    auto rec = [&](auto&& self, int col, int rem) -> void {
        if (col == m - 1) {
            if (rem > col_rem[col]) return;
            rowv[col] = rem;
            for (int j = 0; j < m; ++j) col_rem[j] -= rowv[j];
            cur[row] = rowv;
            tables_rec(m, r, row + 1, col_rem, cur, out);
            for (int j = 0; j < m; ++j) col_rem[j] += rowv[j];
            rowv[col] = 0;
            return;
        }
        int hi = rem < col_rem[col] ? rem : col_rem[col];
        for (int k = hi; k >= 0; --k) {
            rowv[col] = k;
            self(self, col + 1, rem - k);
        }
        rowv[col] = 0;
    };
    rec(rec, 0, r);
}
}  // namespace detail

// All m x m nonnegative integer matrices with every row and column sum r,
// in lex-descending order of the concatenated rows. For r = 1 these are the
// m! permutation matrices.
inline std::vector<MultMatrix> enumerate_graphs(int m, int r) {
    if (m < 1 || r < 1) throw std::invalid_argument("enumerate_graphs: need m, r >= 1");
    std::vector<MultMatrix> out;
    std::vector<int> col_rem(m, r);
    MultMatrix cur(m, std::vector<int>(m, 0));
    detail::tables_rec(m, r, 0, col_rem, cur, out);
    return out;
}

// Vertex-preserving symmetry order: parallel arrows may be permuted freely.
inline Int symmetry_order(const MultMatrix& mult) {
    Int s = 1;
    for (const auto& row : mult)
        for (int x : row) s *= factorial(static_cast<unsigned long>(x));
    return s;
}

// Graph value for rank-1 decorations v_i^{tensor r}, w_j^{tensor r}:
// the product of pairing values along the arrows.
inline Rat graph_value_rank1(const MultMatrix& mult,
                             const std::vector<std::vector<Rat>>& vs,
                             const std::vector<std::vector<Rat>>& ws,
                             const Matrix& pairing) {
    std::size_t m = mult.size();
    if (vs.size() != m || ws.size() != m)
        throw std::invalid_argument("graph_value_rank1: decoration count mismatch");
    Rat val = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (mult[i][j] == 0) continue;
            Rat p = 0;
            for (std::size_t k = 0; k < pairing.rows(); ++k)
                for (std::size_t l = 0; l < pairing.cols(); ++l)
                    p += vs[i][k] * pairing(k, l) * ws[j][l];
            val *= rat_pow(p, static_cast<unsigned long>(mult[i][j]));
        }
    return val;
}

namespace detail {
// Writes a degree-r element as a rational combination of r-th powers of
// linear forms, via the finite-difference polarization identity
//   z_1...z_r = (1/r!) sum_{S nonempty} (-1)^{r-|S|} (sum_{i in S} z_i)^r.
inline std::vector<std::pair<Rat, std::vector<Rat>>> polarize(const SymPoly& p) {
    int r = p.degree;
    if (r < 1) throw std::invalid_argument("polarize: degree must be >= 1");
    std::map<std::vector<Rat>, Rat> acc;
    Rat inv_rfac = Rat(1) / Rat(factorial(static_cast<unsigned long>(r)));
    for (const auto& [e, c] : p.terms) {
        // Variables of the monomial listed with multiplicity.
        std::vector<int> zs;
        for (int i = 0; i < p.dim; ++i)
            for (int k = 0; k < e[i]; ++k) zs.push_back(i);
        for (unsigned mask = 1; mask < (1u << r); ++mask) {
            std::vector<Rat> v(p.dim, Rat(0));
            int sz = 0;
            for (int t = 0; t < r; ++t)
                if (mask & (1u << t)) { v[zs[t]] += 1; ++sz; }
            Rat coef = c * inv_rfac;
            if ((r - sz) % 2 == 1) coef = -coef;
            acc[v] += coef;
        }
    }
    std::vector<std::pair<Rat, std::vector<Rat>>> out;
    for (auto& [v, c] : acc)
        if (c != 0) out.emplace_back(c, v);
    return out;
}
}  // namespace detail

// Graph value for general decorations: the unique multilinear extension of
// the rank-1 formula, computed by polarizing each decoration into r-th
// powers. The sum over w-slot choices is taken outside so each alpha-slot
// sum factorizes.
inline Rat graph_value(const DecoratedGraph& g) {
    check_margins(g.mult, g.r);
    std::size_t m = g.mult.size();
    if (g.vdecs.size() != m || g.wdecs.size() != m)
        throw std::invalid_argument("graph_value: decoration count mismatch");
    for (const auto& p : g.vdecs)
        if (p.degree != g.r || p.dim != static_cast<int>(g.pairing.rows()))
            throw std::invalid_argument("graph_value: bad V decoration");
    for (const auto& p : g.wdecs)
        if (p.degree != g.r || p.dim != static_cast<int>(g.pairing.cols()))
            throw std::invalid_argument("graph_value: bad W decoration");

    std::vector<std::vector<std::pair<Rat, std::vector<Rat>>>> vterms, wterms;
    for (const auto& p : g.vdecs) vterms.push_back(detail::polarize(p));
    for (const auto& p : g.wdecs) wterms.push_back(detail::polarize(p));

    Rat total = 0;
    std::vector<std::size_t> wc(m, 0);
    // Odometer over rank-1 components of the w-decorations.
    while (true) {
        Rat wcoef = 1;
        bool live = true;
        for (std::size_t j = 0; j < m; ++j) {
            if (wterms[j].empty()) { live = false; break; }
            wcoef *= wterms[j][wc[j]].first;
        }
        if (!live) return Rat(0);
        Rat prod = wcoef;
        for (std::size_t i = 0; i < m && prod != 0; ++i) {
            Rat slot = 0;
            for (const auto& [mu, v] : vterms[i]) {
                Rat t = mu;
                for (std::size_t j = 0; j < m; ++j) {
                    if (g.mult[i][j] == 0) continue;
                    Rat p = 0;
                    for (std::size_t k = 0; k < g.pairing.rows(); ++k)
                        for (std::size_t l = 0; l < g.pairing.cols(); ++l)
                            p += v[k] * g.pairing(k, l) * wterms[j][wc[j]].second[l];
                    t *= rat_pow(p, static_cast<unsigned long>(g.mult[i][j]));
                }
                slot += t;
            }
            prod *= slot;
        }
        total += prod;
        std::size_t j = 0;
        while (j < m && ++wc[j] == wterms[j].size()) wc[j++] = 0;
        if (j == m) break;
    }
    return total;
}

// Number of arrows whose multiplication factor lies to the right of the
// matching contraction factor in the stored word order (leftmost acts last).
inline int rho_of(const MultMatrix& mult, const OperatorWord& word) {
    std::size_t m = mult.size();
    std::vector<int> mul_pos(m, -1), con_pos(m, -1);
    for (std::size_t p = 0; p < word.factors.size(); ++p) {
        const auto& f = word.factors[p];
        auto& slot = (f.kind == FactorKind::MUL) ? mul_pos : con_pos;
        if (f.vertex < 0 || f.vertex >= static_cast<int>(m) || slot[f.vertex] != -1)
            throw std::invalid_argument("rho_of: word/graph arity mismatch");
        slot[f.vertex] = static_cast<int>(p);
    }
    for (std::size_t i = 0; i < m; ++i)
        if (mul_pos[i] < 0 || con_pos[i] < 0)
            throw std::invalid_argument("rho_of: word/graph arity mismatch");
    int rho = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (mul_pos[i] > con_pos[j]) rho += mult[i][j];
    return rho;
}

// Trace-identity coefficient. With rho counting arrows with multiplicity,
// the binomial's top index is d + rho + N - 1 (the expanded r = 1 count);
// the r = 1 coefficient C(d+rho+N-1, d+m-1) is the special case.
inline Rat c_gamma(const MultMatrix& mult, int rho, int d, int N, int r) {
    int m = static_cast<int>(mult.size());
    Int num = rat_pow(Rat(factorial(static_cast<unsigned long>(r))), 2 * m).get_num();
    Rat pre = Rat(num) / Rat(symmetry_order(mult));
    return pre * Rat(binomial(Int(d + rho + N - 1), d + r * m - 1));
}

struct TraceIdentityReport {
    Rat lhs;
    Rat rhs;
    struct PerGraph {
        MultMatrix mult;
        int rho;
        Int s_gamma;
        Rat c;
        Rat value;
    };
    std::vector<PerGraph> per_graph;
    bool match = false;
};

// Checks tr(P_N) against the graph sum for the word assembled from the
// decorations in the given factor order.
inline TraceIdentityReport trace_identity_check(const std::vector<SymPoly>& vdecs,
                                                const std::vector<SymPoly>& wdecs,
                                                const std::vector<std::pair<FactorKind, int>>& order,
                                                const Matrix& pairing, int N) {
    std::size_t m = vdecs.size();
    if (wdecs.size() != m) throw std::invalid_argument("trace_identity_check: arity mismatch");
    if (m == 0) throw std::invalid_argument("trace_identity_check: need m >= 1");
    int r = vdecs[0].degree;
    int d = vdecs[0].dim;
    OperatorWord word;
    word.d = d;
    word.e = static_cast<int>(pairing.cols());
    word.pairing = pairing;
    for (const auto& [kind, vtx] : order) {
        if (vtx < 0 || vtx >= static_cast<int>(m))
            throw std::invalid_argument("trace_identity_check: vertex out of range");
        word.factors.push_back({kind, kind == FactorKind::MUL ? vdecs[vtx] : wdecs[vtx], vtx});
    }
    TraceIdentityReport rep;
    rep.lhs = word_trace(word, N);
    rep.rhs = 0;
    for (const auto& mult : enumerate_graphs(static_cast<int>(m), r)) {
        TraceIdentityReport::PerGraph pg;
        pg.mult = mult;
        pg.rho = rho_of(mult, word);
        pg.s_gamma = symmetry_order(mult);
        pg.c = c_gamma(mult, pg.rho, d, N, r);
        DecoratedGraph g{static_cast<int>(m), r, mult, vdecs, wdecs, pairing};
        pg.value = graph_value(g);
        rep.rhs += pg.c * pg.value;
        rep.per_graph.push_back(std::move(pg));
    }
    rep.match = (rep.lhs == rep.rhs);
    return rep;
}

}  // namespace symgraph

#endif
