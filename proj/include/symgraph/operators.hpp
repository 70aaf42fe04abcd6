#ifndef SYMGRAPH_OPERATORS_HPP
#define SYMGRAPH_OPERATORS_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "monomial.hpp"
#include "rational.hpp"
#include "sympoly.hpp"

namespace symgraph {

// Multiplication and contraction operators on the symmetric algebra SV.
//
// Convention: SV is the quotient of the tensor algebra, so multiplication is
// plain polynomial multiplication and contraction carries the combinatorial
// factor: con1(w) x1^N = N <w, x1> x1^{N-1}. This is the unique pair of
// conventions satisfying m^r(v^r) = m^1(v)^r, i^r(w^r) = i^1(w)^r and the
// commutator i^1(w) m^1(v) = m^1(v) i^1(w) + <w, v>.

enum class FactorKind { MUL, CON };

struct OperatorFactor {
    FactorKind kind;
    SymPoly tensor;  // degree r over V (MUL) or over W (CON)
    int vertex = 0;  // alpha/beta index this factor belongs to (for rho)
};

// Ordered product of factors; leftmost factor acts last.
struct OperatorWord {
    int d = 1;  // dim V
    int e = 1;  // dim W
    Matrix pairing;  // d x e, U(k,l) = u(e_k tensor f_l)
    std::vector<OperatorFactor> factors;
};

inline Matrix identity_pairing(int d) { return Matrix::identity(d); }

// Multiplication by a linear form.
inline SymPoly mul1_apply(const std::vector<Rat>& v, const SymPoly& p) {
    if (static_cast<int>(v.size()) != p.dim)
        throw std::invalid_argument("mul1_apply: dimension mismatch");
    return linear_form(v) * p;
}

// Multiplication by a degree-r element.
inline SymPoly mulr_apply(const SymPoly& vt, const SymPoly& p) {
    if (vt.dim != p.dim) throw std::invalid_argument("mulr_apply: dimension mismatch");
    return vt * p;
}

namespace detail {
// Applies the constant-coefficient differential operator with symbol q
// (a polynomial in the d variables of p, each variable read as d/dx_i).
inline SymPoly apply_diff(const SymPoly& q, const SymPoly& p) {
    if (q.dim != p.dim) throw std::invalid_argument("apply_diff: dimension mismatch");
    int out_deg = p.degree - q.degree;
    SymPoly r(p.dim, out_deg < 0 ? 0 : out_deg);
    if (out_deg < 0) return r;  // S^N V = 0 for negative N
    for (const auto& [a, qa] : q.terms) {
        for (const auto& [c, pc] : p.terms) {
            Rat f = qa * pc;
            ExpVec e(p.dim);
            bool ok = true;
            for (int i = 0; i < p.dim; ++i) {
                if (c[i] < a[i]) { ok = false; break; }
                for (int k = 0; k < a[i]; ++k) f *= (c[i] - k);
                e[i] = c[i] - a[i];
            }
            if (ok) r.add_term(e, f);
        }
    }
    return r;
}

// Rewrites a degree-r element over W as a differential symbol over V through
// the pairing: y_l -> sum_k U(k,l) d/dx_k.
inline SymPoly con_symbol(const SymPoly& wt, const Matrix& pairing) {
    if (static_cast<int>(pairing.cols()) != wt.dim)
        throw std::invalid_argument("con_symbol: pairing/tensor dimension mismatch");
    return wt.substitute_linear(pairing);
}
}  // namespace detail

// Contraction by a covector w through the pairing: the directional
// derivative along U w.
inline SymPoly con1_apply(const std::vector<Rat>& w, const SymPoly& p, const Matrix& pairing) {
    if (static_cast<int>(w.size()) != static_cast<int>(pairing.cols()))
        throw std::invalid_argument("con1_apply: covector dimension mismatch");
    if (static_cast<int>(pairing.rows()) != p.dim)
        throw std::invalid_argument("con1_apply: pairing/polynomial dimension mismatch");
    return detail::apply_diff(detail::con_symbol(linear_form(w), pairing), p);
}

// Contraction by a degree-r element (apolarity).
inline SymPoly conr_apply(const SymPoly& wt, const SymPoly& p, const Matrix& pairing) {
    if (static_cast<int>(pairing.rows()) != p.dim)
        throw std::invalid_argument("conr_apply: pairing/polynomial dimension mismatch");
    return detail::apply_diff(detail::con_symbol(wt, pairing), p);
}

// Matrix of one factor on graded-lex monomial bases, input degree N.
// For CON with N < r this is the zero map onto the empty space S^{N-r} = 0,
// returned as a 0 x dim matrix.
inline Matrix operator_matrix(const OperatorFactor& f, int N, int d, const Matrix& pairing) {
    int r = f.tensor.degree;
    int out_deg = (f.kind == FactorKind::MUL) ? N + r : N - r;
    BasisIndex in_basis(d, N);
    if (out_deg < 0) return Matrix(0, in_basis.size());
    BasisIndex out_basis(d, out_deg);
    Matrix m(out_basis.size(), in_basis.size());
    std::optional<SymPoly> symbol;
    if (f.kind == FactorKind::CON) symbol = detail::con_symbol(f.tensor, pairing);
    for (std::size_t j = 0; j < in_basis.size(); ++j) {
        SymPoly mono(d, N);
        mono.add_term(in_basis.at(j), 1);
        SymPoly img = (f.kind == FactorKind::MUL) ? mulr_apply(f.tensor, mono)
                                                  : detail::apply_diff(*symbol, mono);
        for (const auto& [e, c] : img.terms) m(out_basis.index_of(e), j) = c;
    }
    return m;
}

// Matrix of the whole word restricted to S^N V (degree shifts must cancel).
// Intermediate negative degrees give the zero map, not an error.
inline Matrix word_matrix(const OperatorWord& word, int N) {
    if (N < 0) throw std::invalid_argument("word_matrix: N must be nonnegative");
    long dim_n = sym_dim(word.d, N);
    int shift = 0;
    for (const auto& f : word.factors)
        shift += (f.kind == FactorKind::MUL) ? f.tensor.degree : -f.tensor.degree;
    if (shift != 0)
        throw std::invalid_argument("word_matrix: word does not preserve degree");
    Matrix cur = Matrix::identity(dim_n);
    int deg = N;
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
        int r = it->tensor.degree;
        if (it->kind == FactorKind::CON && deg < r)
            return Matrix(dim_n, dim_n);  // hit S^{<0} = 0
        Matrix m = operator_matrix(*it, deg, word.d, word.pairing);
        cur = m * cur;
        deg += (it->kind == FactorKind::MUL) ? r : -r;
    }
    return cur;
}

inline Rat word_trace(const OperatorWord& word, int N) {
    return word_matrix(word, N).trace();
}

}  // namespace symgraph

#endif
