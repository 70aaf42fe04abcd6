#ifndef SYMGRAPH_CERTIFICATE_HPP
#define SYMGRAPH_CERTIFICATE_HPP

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphs.hpp"
#include "macaulay.hpp"
#include "matrix.hpp"
#include "operators.hpp"
#include "rational.hpp"
#include "sympoly.hpp"

namespace symgraph {

struct SearchExhausted : std::runtime_error {
    int explored_m;
    explicit SearchExhausted(int m)
        : std::runtime_error("certificate search exhausted at word length " + std::to_string(m)),
          explored_m(m) {}
};

struct NotBasepointFree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Reduction to a bijective pairing.
// ---------------------------------------------------------------------------

// Quotients V by ker(u-hat) and W by ker(u-hat-adjoint) so the induced
// pairing is invertible. Coordinates on the quotients are taken along the
// pivot rows/columns of the pairing matrix; rank-1 graph values are
// preserved exactly under this reduction.
struct ReducedProblem {
    int d_reduced = 0;
    std::vector<SymPoly> projected_A;
    std::vector<SymPoly> projected_B;
    Matrix pairing_reduced;  // d' x d', invertible
    Matrix proj_V;           // d' x d
    Matrix proj_W;           // d' x e
    std::vector<std::vector<Rat>> ker_V;  // basis of ker u-hat
    std::vector<std::vector<Rat>> ker_W;  // basis of ker u-hat-adjoint
};

namespace detail {
// Rows of U indexed by I, all columns.
inline Matrix select_rows(const Matrix& U, const std::vector<std::size_t>& I) {
    Matrix r(I.size(), U.cols());
    for (std::size_t a = 0; a < I.size(); ++a)
        for (std::size_t j = 0; j < U.cols(); ++j) r(a, j) = U(I[a], j);
    return r;
}

inline Matrix select_cols(const Matrix& U, const std::vector<std::size_t>& J) {
    Matrix r(U.rows(), J.size());
    for (std::size_t i = 0; i < U.rows(); ++i)
        for (std::size_t b = 0; b < J.size(); ++b) r(i, b) = U(i, J[b]);
    return r;
}

// Projection map onto the complement of ker(M . x = 0) spanned by the
// coordinate vectors in I: solves M E_I c = M v column by column.
inline Matrix quotient_projection(const Matrix& M, const std::vector<std::size_t>& I) {
    Matrix MEI = select_cols(M, I);
    Matrix proj(I.size(), M.cols());
    for (std::size_t i = 0; i < M.cols(); ++i) {
        std::vector<Rat> rhs(M.rows());
        for (std::size_t k = 0; k < M.rows(); ++k) rhs[k] = M(k, i);
        auto c = MEI.solve(rhs);
        for (std::size_t a = 0; a < I.size(); ++a) proj(a, i) = c[a];
    }
    return proj;
}
}  // namespace detail

inline ReducedProblem reduce_to_bijective(const Matrix& u, const std::vector<SymPoly>& A,
                                          const std::vector<SymPoly>& B) {
    if (u.is_zero()) throw std::invalid_argument("reduce_to_bijective: zero pairing");
    Matrix Ut = u.transposed();
    Matrix tmp = Ut;
    std::vector<std::size_t> Iv = tmp.rref();  // pivot rows of U
    tmp = u;
    std::vector<std::size_t> Jw = tmp.rref();  // pivot columns of U

    ReducedProblem rp;
    rp.d_reduced = static_cast<int>(Iv.size());
    rp.proj_V = detail::quotient_projection(Ut, Iv);
    rp.proj_W = detail::quotient_projection(u, Jw);
    rp.pairing_reduced = detail::select_cols(detail::select_rows(u, Iv), Jw);
    rp.ker_V = Ut.null_space();
    rp.ker_W = u.null_space();
    for (const auto& a : A) rp.projected_A.push_back(a.substitute_linear(rp.proj_V));
    for (const auto& b : B) rp.projected_B.push_back(b.substitute_linear(rp.proj_W));
    return rp;
}

// ---------------------------------------------------------------------------
// The algebra chain L^N_m and nilness.
// ---------------------------------------------------------------------------

namespace detail {
// Incremental exact row span with back-substitution.
class RowSpan {
public:
    // Returns true if v was independent and got added.
    bool add(std::vector<Rat> v) {
        for (const auto& [pivot, row] : rows_) {
            if (v[pivot] == 0) continue;
            Rat f = v[pivot];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row[j];
        }
        std::size_t pivot = v.size();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) { pivot = j; break; }
        if (pivot == v.size()) return false;
        Rat inv = Rat(1) / v[pivot];
        for (auto& x : v) x *= inv;
        rows_.emplace_back(pivot, std::move(v));
        return true;
    }
    std::size_t dim() const { return rows_.size(); }

private:
    std::vector<std::pair<std::size_t, std::vector<Rat>>> rows_;
};

inline std::vector<Rat> flatten(const Matrix& m) {
    std::vector<Rat> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}
}  // namespace detail

struct AlgebraChain {
    int N = 0;
    // Independent spanning products kept while growing the chain.
    std::vector<Matrix> span_products;
    std::vector<Rat> span_traces;
    std::vector<std::size_t> dims;  // dim L^N_m for m = 1, 2, ...
    int stabilized_at = 0;          // first m with dim L^N_{m+1} = dim L^N_m
};

// Generated by the operators m^r_N(a) i^r_N(b); spans of products of length
// <= m are tracked until the dimension stalls (or m_max is hit). Inputs are
// assumed reduced, so the pairing is the identity.
inline AlgebraChain build_algebra_chain(const std::vector<SymPoly>& A,
                                        const std::vector<SymPoly>& B, int N, int m_max) {
    if (A.empty() || B.empty())
        throw std::invalid_argument("build_algebra_chain: empty generator list");
    int d = A[0].dim;
    int r = A[0].degree;
    if (N < r) throw std::invalid_argument("build_algebra_chain: N < r");
    Matrix id_pairing = Matrix::identity(d);

    AlgebraChain empty_chain;
    empty_chain.N = N;
    if (m_max < 1) return empty_chain;

    std::vector<Matrix> gens;
    for (const auto& a : A)
        for (const auto& b : B) {
            Matrix mi = operator_matrix({FactorKind::CON, b, 0}, N, d, id_pairing);
            Matrix mm = operator_matrix({FactorKind::MUL, a, 0}, N - r, d, id_pairing);
            gens.push_back(mm * mi);
        }

    AlgebraChain chain;
    chain.N = N;
    detail::RowSpan span;
    std::vector<Matrix> frontier;
    for (const auto& g : gens)
        if (span.add(detail::flatten(g))) {
            chain.span_products.push_back(g);
            chain.span_traces.push_back(g.trace());
            frontier.push_back(g);
        }
    chain.dims.push_back(span.dim());
    for (int m = 2; m <= m_max; ++m) {
        std::vector<Matrix> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                Matrix q = p * g;
                if (span.add(detail::flatten(q))) {
                    chain.span_products.push_back(q);
                    chain.span_traces.push_back(q.trace());
                    next.push_back(q);
                }
            }
        chain.dims.push_back(span.dim());
        if (next.empty() && chain.stabilized_at == 0) {
            chain.stabilized_at = m - 1;
            break;  // subalgebra closure: a stalled chain never grows again
        }
        frontier = std::move(next);
    }
    return chain;
}

// Char-0 nilness criterion: every spanning product has zero trace.
inline bool is_nil(const AlgebraChain& chain) {
    for (const auto& t : chain.span_traces)
        if (t != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Certificate search.
// ---------------------------------------------------------------------------

struct Certificate {
    int m = 0;
    std::vector<std::vector<Rat>> coeffsA;  // per alpha-vertex, coordinates in A
    std::vector<std::vector<Rat>> coeffsB;  // per beta-vertex, coordinates in B
    MultMatrix mult;
    Rat value;  // |gamma|, nonzero
};

struct SearchOptions {
    int m_max = 6;
    unsigned long seed = 0;
    int random_draws = 40;
    long exhaustive_cap = 200000;
    bool check_basepoint_free = true;
};

namespace detail {
inline SymPoly combine(const std::vector<SymPoly>& basis, const std::vector<Rat>& coeffs) {
    SymPoly p(basis[0].dim, basis[0].degree);
    for (std::size_t k = 0; k < basis.size(); ++k)
        p = p + basis[k].scaled(coeffs[k]);
    return p;
}

// Trace of m(a_1) i(b_1) ... m(a_m) i(b_m) on S^N.
inline Rat product_trace(const std::vector<SymPoly>& as, const std::vector<SymPoly>& bs,
                         const Matrix& pairing, int N) {
    OperatorWord word;
    word.d = as[0].dim;
    word.e = bs[0].dim;
    word.pairing = pairing;
    for (std::size_t i = 0; i < as.size(); ++i) {
        word.factors.push_back({FactorKind::MUL, as[i], static_cast<int>(i)});
        word.factors.push_back({FactorKind::CON, bs[i], static_cast<int>(i)});
    }
    return word_trace(word, N);
}

// From a word with nonzero trace, extract a graph whose term in the trace
// identity is nonzero.
inline std::optional<std::pair<MultMatrix, Rat>> witness_graph(
    const std::vector<SymPoly>& as, const std::vector<SymPoly>& bs, const Matrix& pairing,
    int N, int r) {
    int m = static_cast<int>(as.size());
    OperatorWord word;
    word.d = as[0].dim;
    word.e = bs[0].dim;
    word.pairing = pairing;
    for (int i = 0; i < m; ++i) {
        word.factors.push_back({FactorKind::MUL, as[i], i});
        word.factors.push_back({FactorKind::CON, bs[i], i});
    }
    for (const auto& mult : enumerate_graphs(m, r)) {
        int rho = rho_of(mult, word);
        Rat c = c_gamma(mult, rho, as[0].dim, N, r);
        if (c == 0) continue;
        DecoratedGraph g{m, r, mult, as, bs, pairing};
        Rat val = graph_value(g);
        if (val != 0) return std::make_pair(mult, val);
    }
    return std::nullopt;
}
}  // namespace detail

// Searches for decorations from the spans of A and B and a multiplicity
// matrix with nonzero graph value. Words of increasing length are tried,
// exhaustively over basis tuples when the count is small (the trace is
// multilinear in each slot, so basis tuples are conclusive per length),
// falling back to randomized draws for large spans.
inline Certificate certificate_search(const std::vector<SymPoly>& A,
                                      const std::vector<SymPoly>& B, const Matrix& u,
                                      const SearchOptions& opts = {}) {
    if (A.empty() || B.empty())
        throw std::invalid_argument("certificate_search: empty spanning set");
    if (u.is_zero()) throw std::invalid_argument("certificate_search: zero pairing");
    int r = A[0].degree;
    if (opts.check_basepoint_free) {
        PolySystem sysA{A[0].dim, r, A};
        PolySystem sysB{B[0].dim, r, B};
        if (!certify_basepoint_free(sysA, r * A[0].dim).certified)
            throw NotBasepointFree("certificate_search: A is not certified basepoint-free");
        if (!certify_basepoint_free(sysB, r * B[0].dim).certified)
            throw NotBasepointFree("certificate_search: B is not certified basepoint-free");
    }

    ReducedProblem rp = reduce_to_bijective(u, A, B);
    int N = r * rp.d_reduced;
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> coef(-4, 4);

    auto finish = [&](int m, const std::vector<std::vector<Rat>>& ca,
                      const std::vector<std::vector<Rat>>& cb) -> std::optional<Certificate> {
        std::vector<SymPoly> as, bs;
        for (const auto& c : ca) as.push_back(detail::combine(rp.projected_A, c));
        for (const auto& c : cb) bs.push_back(detail::combine(rp.projected_B, c));
        Rat tr = detail::product_trace(as, bs, rp.pairing_reduced, N);
        if (tr == 0) return std::nullopt;
        auto wg = detail::witness_graph(as, bs, rp.pairing_reduced, N, r);
        if (!wg) return std::nullopt;  // cancellation across c_gamma weights
        Certificate cert;
        cert.m = m;
        cert.coeffsA = ca;
        cert.coeffsB = cb;
        cert.mult = wg->first;
        cert.value = wg->second;
        // Independent re-validation in the original (unreduced) space.
        std::vector<SymPoly> oas, obs;
        for (const auto& c : ca) oas.push_back(detail::combine(A, c));
        for (const auto& c : cb) obs.push_back(detail::combine(B, c));
        DecoratedGraph g{m, r, cert.mult, oas, obs, u};
        if (graph_value(g) != cert.value)
            throw std::runtime_error("certificate_search: reduction broke the graph value");
        return cert;
    };

    for (int m = 1; m <= opts.m_max; ++m) {
        long tuples = 1;
        bool feasible = true;
        for (int i = 0; i < 2 * m && feasible; ++i) {
            tuples *= static_cast<long>(i < m ? A.size() : B.size());
            if (tuples > opts.exhaustive_cap) feasible = false;
        }
        if (feasible) {
            // The trace is multilinear in every slot, so basis tuples in
            // canonical order are conclusive at this length and yield a
            // deterministic first witness.
            std::vector<std::size_t> idx(2 * m, 0);
            while (true) {
                std::vector<std::vector<Rat>> ca(m), cb(m);
                for (int i = 0; i < m; ++i) {
                    ca[i].assign(A.size(), Rat(0));
                    ca[i][idx[i]] = 1;
                    cb[i].assign(B.size(), Rat(0));
                    cb[i][idx[m + i]] = 1;
                }
                if (auto cert = finish(m, ca, cb)) return *cert;
                int p = 0;
                while (p < 2 * m) {
                    std::size_t lim = p < m ? A.size() : B.size();
                    if (++idx[p] < lim) break;
                    idx[p++] = 0;
                }
                if (p == 2 * m) break;
            }
        } else {
            // Spans too large to exhaust: randomized draws.
            for (int draw = 0; draw < opts.random_draws; ++draw) {
                std::vector<std::vector<Rat>> ca(m), cb(m);
                for (auto& c : ca)
                    for (std::size_t k = 0; k < A.size(); ++k) c.push_back(coef(rng));
                for (auto& c : cb)
                    for (std::size_t k = 0; k < B.size(); ++k) c.push_back(coef(rng));
                if (auto cert = finish(m, ca, cb)) return *cert;
            }
        }
    }
    throw SearchExhausted(opts.m_max);
}

// Sanity bound from the construction: m never exceeds nu(r, d).
inline bool certificate_within_bound(const Certificate& cert, int r, int d) {
    return Int(cert.m) <= nu(r, d);
}

// ---------------------------------------------------------------------------
// Direct-sum certificate.
// ---------------------------------------------------------------------------

struct DirectSumCertificate {
    int side = 0;  // 0: E summand, 1: F summand
    SymPoly embedded;  // section viewed inside S^r(E + F)
    Rat value;         // pairing against u^{tensor r}
};

// Embeds the summand-side section into S^r(E + F) and pairs it against
// u = (uE, uF); the injection preserves the pairing value.
inline DirectSumCertificate direct_sum_certificate(const std::vector<Rat>& uE,
                                                   const std::vector<Rat>& uF,
                                                   const SymPoly& sE, const SymPoly& sF) {
    auto nonzero = [](const std::vector<Rat>& v) {
        for (const auto& x : v)
            if (x != 0) return true;
        return false;
    };
    if (!nonzero(uE) && !nonzero(uF))
        throw std::invalid_argument("direct_sum_certificate: u = 0");
    int e = static_cast<int>(uE.size());
    int f = static_cast<int>(uF.size());
    DirectSumCertificate out;
    out.side = nonzero(uE) ? 0 : 1;
    const SymPoly& s = out.side == 0 ? sE : sF;
    Matrix inc(e + f, out.side == 0 ? e : f);
    int off = out.side == 0 ? 0 : e;
    for (std::size_t i = 0; i < inc.cols(); ++i) inc(off + i, i) = 1;
    out.embedded = s.substitute_linear(inc);
    std::vector<Rat> uu = uE;
    uu.insert(uu.end(), uF.begin(), uF.end());
    out.value = out.embedded.eval(uu);
    return out;
}

// ---------------------------------------------------------------------------
// The Phi pairing and fiber models.
// ---------------------------------------------------------------------------

struct PhiResult {
    Rat value;
    // Canonical slot assignment realizing the multiplicity matrix: arrow k
    // connects the k-th alpha-slot to beta vertex arrows[k].
    std::vector<std::pair<int, int>> arrows;
};

// Pairing of the Phi-section against u^{tensor nr} at a point, read off as
// the value of the decorated graph with the given multiplicities.
inline PhiResult phi_pairing(const MultMatrix& mult, const std::vector<SymPoly>& sE,
                             const std::vector<SymPoly>& tF, const Matrix& u) {
    if (sE.empty() || sE.size() != tF.size())
        throw std::invalid_argument("phi_pairing: section count mismatch");
    int r = sE[0].degree;
    check_margins(mult, r);
    PhiResult out;
    DecoratedGraph g{static_cast<int>(mult.size()), r, mult, sE, tF, u};
    out.value = graph_value(g);
    for (std::size_t i = 0; i < mult.size(); ++i)
        for (std::size_t j = 0; j < mult.size(); ++j)
            for (int k = 0; k < mult[i][j]; ++k)
                out.arrows.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return out;
}

// Finite point set with fiber dimensions and per-point section values.
struct FiberModel {
    std::vector<std::string> points;
    int e = 1;
    int f = 1;
    int r = 1;
    std::vector<std::map<std::string, SymPoly>> sectionsE;
    std::vector<std::map<std::string, SymPoly>> sectionsF;
};

struct GbsCertificate {
    std::string point;
    Certificate cert;
    std::vector<std::pair<int, int>> arrows;  // slot assignment of the recipe
};

// End-to-end fiber generation certificate: collects section values at the
// point, certifies basepoint-freeness on both sides, then runs the search.
inline GbsCertificate tensor_gbs_certificate(const FiberModel& model, const std::string& point,
                                             const Matrix& u, const SearchOptions& opts = {}) {
    if (u.is_zero()) throw std::invalid_argument("tensor_gbs_certificate: zero pairing");
    std::vector<SymPoly> A, B;
    for (const auto& s : model.sectionsE) {
        auto it = s.find(point);
        if (it == s.end())
            throw std::invalid_argument("tensor_gbs_certificate: section undefined at " + point);
        A.push_back(it->second);
    }
    for (const auto& t : model.sectionsF) {
        auto it = t.find(point);
        if (it == t.end())
            throw std::invalid_argument("tensor_gbs_certificate: section undefined at " + point);
        B.push_back(it->second);
    }
    if (A.empty() || B.empty())
        throw std::invalid_argument("tensor_gbs_certificate: no sections");
    PolySystem sysA{model.e, model.r, A};
    PolySystem sysB{model.f, model.r, B};
    if (!certify_basepoint_free(sysA, model.r * model.e).certified)
        throw NotBasepointFree("section values of E not basepoint-free at " + point);
    if (!certify_basepoint_free(sysB, model.r * model.f).certified)
        throw NotBasepointFree("section values of F not basepoint-free at " + point);
    SearchOptions so = opts;
    so.check_basepoint_free = false;  // already certified above
    GbsCertificate out;
    out.point = point;
    out.cert = certificate_search(A, B, u, so);
    for (std::size_t i = 0; i < out.cert.mult.size(); ++i)
        for (std::size_t j = 0; j < out.cert.mult.size(); ++j)
            for (int k = 0; k < out.cert.mult[i][j]; ++k)
                out.arrows.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return out;
}

}  // namespace symgraph

#endif
