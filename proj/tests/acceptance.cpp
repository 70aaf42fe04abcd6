// Acceptance harness: one pass/fail line per criterion, exit 0 only if all
// pass. argv[1] is the CLI binary, argv[2] the fixtures directory.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <symgraph/symgraph.hpp>

#include "test_util.hpp"

using namespace symgraph;

namespace {

std::string g_cli;
std::string g_fixtures;
int g_failures = 0;

#define REQUIRE_OR_FAIL(cond)                                               \
    do {                                                                    \
        if (!(cond)) {                                                      \
            std::ostringstream os;                                          \
            os << "assertion failed at line " << __LINE__ << ": " << #cond; \
            return os.str();                                                \
        }                                                                   \
    } while (0)

// Returns an empty string on success, a diagnostic otherwise.
using Criterion = std::function<std::string()>;

void run_criterion(int number, const std::string& name, const Criterion& fn) {
    auto start = std::chrono::steady_clock::now();
    std::string err;
    try {
        err = fn();
    } catch (const std::exception& e) {
        err = std::string("exception: ") + e.what();
    }
    auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count() /
                1000.0;
    if (err.empty()) {
        std::printf("PASS  criterion %2d  %-42s (%.1fs)\n", number, name.c_str(), secs);
    } else {
        std::printf("FAIL  criterion %2d  %-42s (%.1fs)  %s\n", number, name.c_str(), secs,
                    err.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

std::vector<std::pair<FactorKind, int>> alternating_order(int m) {
    std::vector<std::pair<FactorKind, int>> order;
    for (int i = 0; i < m; ++i) {
        order.push_back({FactorKind::MUL, i});
        order.push_back({FactorKind::CON, i});
    }
    return order;
}

SymPoly mono(int d, const ExpVec& e) {
    SymPoly p(d, expvec_degree(e));
    p.add_term(e, 1);
    return p;
}

std::vector<SymPoly> monomial_span(int d, int r) {
    std::vector<SymPoly> out;
    for (const auto& e : monomial_basis(d, r)) out.push_back(mono(d, e));
    return out;
}

// --- criteria -------------------------------------------------------------

std::string heisenberg() {
    std::mt19937_64 rng(101);
    for (int d = 1; d <= 3; ++d) {
        Matrix id = Matrix::identity(d);
        for (int N = 0; N <= 5; ++N)
            for (int trial = 0; trial < 20; ++trial) {
                auto v = testutil::random_vec(rng, d);
                auto w = testutil::random_vec(rng, d);
                OperatorWord cm{d, d, id,
                                {{FactorKind::CON, linear_form(w), 0},
                                 {FactorKind::MUL, linear_form(v), 0}}};
                OperatorWord mc{d, d, id,
                                {{FactorKind::MUL, linear_form(v), 0},
                                 {FactorKind::CON, linear_form(w), 0}}};
                Rat pair = 0;
                for (int i = 0; i < d; ++i) pair += w[i] * v[i];
                Matrix diff = word_matrix(cm, N) - word_matrix(mc, N);
                REQUIRE_OR_FAIL(diff == Matrix::identity(sym_dim(d, N)).scaled(pair));
            }
    }
    return {};
}

std::string power_compat() {
    std::mt19937_64 rng(102);
    for (int d = 1; d <= 3; ++d) {
        Matrix id = Matrix::identity(d);
        for (int r = 1; r <= 3; ++r)
            for (int trial = 0; trial < 3; ++trial) {
                auto v = testutil::random_vec(rng, d);
                auto w = testutil::random_vec(rng, d);
                for (int N = r; N <= 5; ++N) {
                    Matrix mr =
                        operator_matrix({FactorKind::MUL, power_of_linear(v, r), 0}, N - r, d, id);
                    Matrix m1pow = Matrix::identity(sym_dim(d, N - r));
                    for (int k = 0; k < r; ++k)
                        m1pow = operator_matrix({FactorKind::MUL, linear_form(v), 0}, N - r + k, d,
                                                id) *
                                m1pow;
                    REQUIRE_OR_FAIL(mr == m1pow);
                    Matrix ir =
                        operator_matrix({FactorKind::CON, power_of_linear(w, r), 0}, N, d, id);
                    Matrix i1pow = Matrix::identity(sym_dim(d, N));
                    for (int k = 0; k < r; ++k)
                        i1pow = operator_matrix({FactorKind::CON, linear_form(w), 0}, N - k, d, id) *
                                i1pow;
                    REQUIRE_OR_FAIL(ir == i1pow);
                }
            }
    }
    return {};
}

std::string trace_identity_r1() {
    std::mt19937_64 rng(103);
    for (int d = 1; d <= 2; ++d) {
        Matrix id = Matrix::identity(d);
        for (int m = 1; m <= 3; ++m)
            for (int N = 1; N <= 5; ++N)
                for (int set = 0; set < 10; ++set) {
                    std::vector<SymPoly> vdecs, wdecs;
                    for (int i = 0; i < m; ++i) {
                        vdecs.push_back(testutil::random_poly(rng, d, 1));
                        wdecs.push_back(testutil::random_poly(rng, d, 1));
                    }
                    auto order = alternating_order(m);
                    for (int perm = 0; perm < 3; ++perm) {
                        auto rep = trace_identity_check(vdecs, wdecs, order, id, N);
                        REQUIRE_OR_FAIL(rep.match);
                        std::shuffle(order.begin(), order.end(), rng);
                    }
                }
    }
    return {};
}

std::string trace_identity_r2() {
    std::mt19937_64 rng(104);
    for (int d = 1; d <= 2; ++d) {
        Matrix id = Matrix::identity(d);
        for (int m = 1; m <= 2; ++m)
            for (int N = 2; N <= 6; ++N)
                for (int set = 0; set < 10; ++set) {
                    std::vector<SymPoly> vdecs, wdecs;
                    for (int i = 0; i < m; ++i) {
                        vdecs.push_back(testutil::random_poly(rng, d, 2));
                        wdecs.push_back(testutil::random_poly(rng, d, 2));
                    }
                    auto rep =
                        trace_identity_check(vdecs, wdecs, alternating_order(m), id, N);
                    REQUIRE_OR_FAIL(rep.match);
                }
    }
    return {};
}

std::string expansion_count() {
    for (int m = 1; m <= 2; ++m)
        for (int r = 1; r <= 3; ++r) {
            int n = r * m;
            std::vector<int> target(n);
            for (int k = 0; k < n; ++k) target[k] = k;
            std::map<MultMatrix, long> counts;
            do {
                MultMatrix mult(m, std::vector<int>(m, 0));
                for (int k = 0; k < n; ++k) mult[k / r][target[k] / r] += 1;
                counts[mult] += 1;
            } while (std::next_permutation(target.begin(), target.end()));
            auto graphs = enumerate_graphs(m, r);
            REQUIRE_OR_FAIL(counts.size() == graphs.size());
            Rat rfact(factorial(static_cast<unsigned long>(r)));
            for (const auto& mult : graphs) {
                Rat expected = rat_pow(rfact, 2 * m) / Rat(symmetry_order(mult));
                REQUIRE_OR_FAIL(Rat(counts.at(mult)) == expected);
            }
        }
    return {};
}

std::string permanent_equivalence() {
    std::mt19937_64 rng(106);
    for (int m = 1; m <= 4; ++m)
        for (int trial = 0; trial < 5; ++trial) {
            int d = 2, e = 3;
            Matrix u = testutil::random_matrix(rng, d, e);
            std::vector<std::vector<Rat>> vs, ws;
            for (int i = 0; i < m; ++i) {
                vs.push_back(testutil::random_vec(rng, d));
                ws.push_back(testutil::random_vec(rng, e));
            }
            Matrix gram(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < d; ++k)
                        for (int l = 0; l < e; ++l) gram(i, j) += vs[i][k] * u(k, l) * ws[j][l];
            Rat sum = 0;
            for (const auto& mult : enumerate_graphs(m, 1))
                sum += graph_value_rank1(mult, vs, ws, u);
            REQUIRE_OR_FAIL(sum == testutil::permanent(gram));
        }
    return {};
}

std::string macaulay_bound() {
    std::mt19937_64 rng(107);
    int systems = 0;
    for (int e = 1; e <= 3; ++e)
        for (int r = 1; r <= 3; ++r)
            for (int trial = 0; trial < 4; ++trial) {
                std::vector<SymPoly> gens;
                for (int i = 0; i < e; ++i) {
                    ExpVec ev(e, 0);
                    ev[i] = r;
                    gens.push_back(mono(e, ev));
                }
                gens.push_back(testutil::random_poly(rng, e, r));
                PolySystem b{e, r, gens};
                auto rep = certify_basepoint_free(b, r * e);
                REQUIRE_OR_FAIL(rep.certified);
                REQUIRE_OR_FAIL(*rep.first_surjective_N <= r * e);
                ++systems;
            }
    REQUIRE_OR_FAIL(systems >= 30);
    // negative control: {y1^2} in two variables vanishes on the y2-axis
    PolySystem missing{2, 2, {mono(2, {2, 0})}};
    auto rep = certify_basepoint_free(missing, 10);
    REQUIRE_OR_FAIL(!rep.certified);
    REQUIRE_OR_FAIL(!rep.first_surjective_N.has_value());
    return {};
}

std::string nu_values() {
    REQUIRE_OR_FAIL(nu(1, 1) == 1);
    REQUIRE_OR_FAIL(nu(2, 1) == 1);
    REQUIRE_OR_FAIL(nu(1, 2) == 2520);
    for (auto [r, d] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{1, 3}}) {
        Int n = nu(r, d);
        for (Int k = 1; k <= big_D(r * d, d); ++k) REQUIRE_OR_FAIL(n % k == 0);
    }
    return {};
}

// Exhaustive basis-decoration witness search, independent of the searcher.
std::optional<std::pair<int, Rat>> brute_force_witness(const std::vector<SymPoly>& A,
                                                       const std::vector<SymPoly>& B,
                                                       const Matrix& u, int r, int m_max) {
    for (int m = 1; m <= m_max; ++m) {
        std::vector<std::size_t> idx(2 * m, 0);
        while (true) {
            std::vector<SymPoly> as, bs;
            for (int i = 0; i < m; ++i) as.push_back(A[idx[i]]);
            for (int i = 0; i < m; ++i) bs.push_back(B[idx[m + i]]);
            for (const auto& mult : enumerate_graphs(m, r)) {
                DecoratedGraph g{m, r, mult, as, bs, u};
                Rat val = graph_value(g);
                if (val != 0) return std::make_pair(m, val);
            }
            int p = 0;
            while (p < 2 * m) {
                std::size_t lim = p < m ? A.size() : B.size();
                if (++idx[p] < lim) break;
                idx[p++] = 0;
            }
            if (p == 2 * m) break;
        }
    }
    return std::nullopt;
}

std::string certificate_end_to_end() {
    std::mt19937_64 rng(109);
    for (int d = 1; d <= 3; ++d)
        for (int r = 1; r <= 2; ++r) {
            int e = d;
            auto A = monomial_span(d, r);
            auto B = monomial_span(e, r);
            for (int trial = 0; trial < 50; ++trial) {
                Matrix u(d, e);
                if (d > 1 && trial % 3 == 2) {
                    // rank-deficient u-hat: outer product of random vectors
                    auto x = testutil::random_vec(rng, d);
                    auto y = testutil::random_vec(rng, e);
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < e; ++j) u(i, j) = x[i] * y[j];
                } else {
                    u = testutil::random_matrix(rng, d, e);
                }
                if (u.is_zero()) continue;
                SearchOptions opts;
                opts.seed = 109 + trial;
                Certificate cert = certificate_search(A, B, u, opts);
                REQUIRE_OR_FAIL(cert.value != 0);
                REQUIRE_OR_FAIL(certificate_within_bound(cert, r, d));
                // independent re-validation through graph_value
                std::vector<SymPoly> as, bs;
                for (const auto& c : cert.coeffsA) {
                    SymPoly p(d, r);
                    for (std::size_t k = 0; k < A.size(); ++k) p = p + A[k].scaled(c[k]);
                    as.push_back(p);
                }
                for (const auto& c : cert.coeffsB) {
                    SymPoly p(e, r);
                    for (std::size_t k = 0; k < B.size(); ++k) p = p + B[k].scaled(c[k]);
                    bs.push_back(p);
                }
                DecoratedGraph g{cert.m, r, cert.mult, as, bs, u};
                REQUIRE_OR_FAIL(graph_value(g) == cert.value);
                if (d <= 2) {
                    auto bf = brute_force_witness(A, B, u, r, 2);
                    REQUIRE_OR_FAIL(bf.has_value());
                    REQUIRE_OR_FAIL(bf->first <= cert.m);
                }
            }
        }
    return {};
}

std::string phi_consistency() {
    std::mt19937_64 rng(110);
    for (int m = 1; m <= 3; ++m)
        for (int r = 1; r <= 2; ++r)
            for (int trial = 0; trial < 3; ++trial) {
                int d = 2, e = 2;
                Matrix u = testutil::random_matrix(rng, d, e);
                std::vector<SymPoly> sE, tF;
                for (int i = 0; i < m; ++i) {
                    sE.push_back(testutil::random_poly(rng, d, r));
                    tF.push_back(testutil::random_poly(rng, e, r));
                }
                for (const auto& mult : enumerate_graphs(m, r)) {
                    auto phi = phi_pairing(mult, sE, tF, u);
                    DecoratedGraph g{m, r, mult, sE, tF, u};
                    REQUIRE_OR_FAIL(phi.value == graph_value(g));
                    REQUIRE_OR_FAIL(static_cast<int>(phi.arrows.size()) == r * m);
                }
            }
    return {};
}

std::string direct_sum() {
    std::mt19937_64 rng(111);
    for (int inst = 0; inst < 20; ++inst) {
        int e = 1 + inst % 3;
        int f = 1 + (inst / 3) % 3;
        int r = 1 + inst % 3;
        std::vector<Rat> uE, uF;
        // exercise both pure-summand and mixed covectors
        bool zeroE = (inst % 4 == 1);
        for (int i = 0; i < e; ++i) uE.push_back(zeroE ? Rat(0) : testutil::random_rat(rng));
        for (int i = 0; i < f; ++i) uF.push_back(testutil::random_rat(rng));
        SymPoly sE = testutil::random_poly(rng, e, r);
        SymPoly sF = testutil::random_poly(rng, f, r);
        bool eNonzero = false;
        for (const auto& x : uE) eNonzero = eNonzero || x != 0;
        bool fNonzero = false;
        for (const auto& x : uF) fNonzero = fNonzero || x != 0;
        if (!eNonzero && !fNonzero) continue;
        auto cert = direct_sum_certificate(uE, uF, sE, sF);
        // embedded-section pairing equals the summand-side pairing
        Rat expected = cert.side == 0 ? sE.eval(uE) : sF.eval(uF);
        REQUIRE_OR_FAIL(cert.value == expected);
        std::vector<Rat> uu = uE;
        uu.insert(uu.end(), uF.begin(), uF.end());
        REQUIRE_OR_FAIL(cert.embedded.eval(uu) == expected);
    }
    return {};
}

struct RunResult {
    int rc;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string cli_determinism() {
    std::vector<std::string> runs = {
        "trace-verify --input " + g_fixtures + "/trace_basic.json",
        "trace-verify --input " + g_fixtures + "/trace_sweep.json",
        "nu 1 2",
        "macaulay --input " + g_fixtures + "/macaulay_squares.json",
        "certificate --input " + g_fixtures + "/certificate_d2.json",
        "gbs --input " + g_fixtures + "/gbs_model.json",
        "graph-eval --input " + g_fixtures + "/graph_eval.json",
    };
    for (const auto& spec : runs) {
        auto a = run_cli(spec);
        auto b = run_cli(spec);
        REQUIRE_OR_FAIL(a.rc == 0);
        REQUIRE_OR_FAIL(a.rc == b.rc);
        REQUIRE_OR_FAIL(!a.out.empty());
        REQUIRE_OR_FAIL(a.out == b.out);
    }
    auto bad = run_cli("trace-verify --input " + g_fixtures + "/trace_corrupt.json");
    REQUIRE_OR_FAIL(bad.rc == 3);
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <cli-binary> <fixtures-dir>\n");
        return 1;
    }
    g_cli = argv[1];
    g_fixtures = argv[2];

    run_criterion(1, "Heisenberg commutator", heisenberg);
    run_criterion(2, "power compatibility", power_compat);
    run_criterion(3, "trace identity, r = 1", trace_identity_r1);
    run_criterion(4, "trace identity, r = 2", trace_identity_r2);
    run_criterion(5, "labeled expansion count", expansion_count);
    run_criterion(6, "permanent equivalence", permanent_equivalence);
    run_criterion(7, "Macaulay bound", macaulay_bound);
    run_criterion(8, "nu values", nu_values);
    run_criterion(9, "certificate end-to-end", certificate_end_to_end);
    run_criterion(10, "phi pairing consistency", phi_consistency);
    run_criterion(11, "direct-sum certificate", direct_sum);
    run_criterion(12, "CLI determinism", cli_determinism);

    if (g_failures == 0) {
        std::printf("all 12 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
