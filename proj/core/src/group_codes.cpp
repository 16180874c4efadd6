#include "drmsim/group_codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace drmsim {

std::string to_string(CodeKind kind) { return kind == CodeKind::cyclic ? "cyclic" : "dicyclic"; }

CodeKind parse_code_kind(const std::string& text) {
    if (text == "cyclic") return CodeKind::cyclic;
    if (text == "dicyclic") return CodeKind::dicyclic;
    throw std::invalid_argument("unknown code kind '" + text + "' (expected cyclic|dicyclic)");
}

void GroupCodeSpec::validate() const {
    auto fail = [this](const std::string& what) {
        throw std::invalid_argument("group code " + to_string(kind) + " " + label() + " K=" +
                                    std::to_string(K) + ": " + what);
    };
    if (M < 2 || !std::has_single_bit(static_cast<unsigned>(M))) fail("M must be a power of two >= 2");
    if (K < 1 || K > 16) fail("K out of range");
    std::size_t want = static_cast<std::size_t>(K);
    int upper = M;  // exclusive
    if (kind == CodeKind::dicyclic) {
        if (K % 2 != 0) fail("dicyclic codes need even K");
        if (M < 4) fail("dicyclic codes need M >= 4");
        want = static_cast<std::size_t>(K / 2);
        upper = M / 2;
    }
    if (u.size() != want) fail("expected " + std::to_string(want) + " u entries, got " + std::to_string(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] <= 0 || u[i] >= upper) fail("u entry " + std::to_string(u[i]) + " outside (0, " + std::to_string(upper) + ")");
        if (u[i] % 2 == 0) fail("u entry " + std::to_string(u[i]) + " is even");
        if (i > 0 && u[i] < u[i - 1]) fail("u entries must be sorted");
    }
}

std::string GroupCodeSpec::u_list() const {
    std::string s;
    for (std::size_t i = 0; i < u.size(); ++i) s += (i ? "," : "") + std::to_string(u[i]);
    return s;
}

std::string GroupCodeSpec::label() const { return "(" + std::to_string(M) + ";" + u_list() + ")"; }

std::size_t GroupCode::index_of(const CMatrix& G, double tol) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (approx_eq(elements[i], G, tol)) return i;
    return elements.size();
}

namespace {

// diag(exp(2*pi*j*e_k*power/period)).
CMatrix diagonal_power(const std::vector<long long>& exponents, long long power, long long period) {
    std::vector<cplx> d(exponents.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = root_of_unity(exponents[k] * power, period);
    return CMatrix::diagonal(d);
}

CMatrix swap_generator(std::size_t K) {
    const std::size_t h = K / 2;
    CMatrix g(K, K);
    for (std::size_t i = 0; i < h; ++i) {
        g(i, h + i) = -1.0;
        g(h + i, i) = 1.0;
    }
    return g;
}

std::vector<long long> dicyclic_exponents(const GroupCodeSpec& spec) {
    std::vector<long long> e;
    for (int v : spec.u) e.push_back(v);
    for (int v : spec.u) e.push_back(-v);
    return e;
}

int max_order_of(const std::vector<CMatrix>& elements, int max_power) {
    int o = 0;
    for (const auto& g : elements) o = std::max(o, element_order(g, max_power));
    return o;
}

}  // namespace

GroupCode build_cyclic(const GroupCodeSpec& spec) {
    if (spec.kind != CodeKind::cyclic) throw std::invalid_argument("build_cyclic: spec is not cyclic");
    spec.validate();
    GroupCode code;
    code.spec = spec;
    const std::vector<long long> e(spec.u.begin(), spec.u.end());
    for (int m = 0; m < spec.M; ++m) code.elements.push_back(diagonal_power(e, m, spec.M));
    code.max_element_order = max_order_of(code.elements, 2 * spec.M);
    return code;
}

GroupCode build_dicyclic(const GroupCodeSpec& spec) {
    if (spec.kind != CodeKind::dicyclic) throw std::invalid_argument("build_dicyclic: spec is not dicyclic");
    spec.validate();
    GroupCode code;
    code.spec = spec;
    const auto e = dicyclic_exponents(spec);
    const CMatrix g1 = swap_generator(static_cast<std::size_t>(spec.K));
    const int half = spec.M / 2;
    for (int l = 0; l < 2; ++l) {
        for (int m = 0; m < half; ++m) {
            CMatrix g = diagonal_power(e, m, half);
            if (l == 1) g = matmul(g, g1);
            code.elements.push_back(std::move(g));
        }
    }
    code.max_element_order = max_order_of(code.elements, 2 * spec.M);
    return code;
}

GroupCode build_group_code(const GroupCodeSpec& spec) {
    return spec.kind == CodeKind::cyclic ? build_cyclic(spec) : build_dicyclic(spec);
}

int element_order(const CMatrix& G, int max_power, double tol) {
    if (!G.is_square()) throw DimensionError("element_order: matrix is not square");
    const CMatrix I = CMatrix::identity(G.rows());
    CMatrix p = G;
    for (int n = 1; n <= max_power; ++n) {
        if (approx_eq(p, I, tol)) return n;
        p = matmul(p, G);
    }
    return 0;
}

std::string to_string(InitStyle style) { return style == InitStyle::hadamard ? "hadamard" : "identity"; }

InitStyle parse_init_style(const std::string& text) {
    if (text == "hadamard") return InitStyle::hadamard;
    if (text == "identity" || text == "scaled_identity") return InitStyle::scaled_identity;
    throw std::invalid_argument("unknown initializer '" + text + "' (expected hadamard|identity)");
}

InitStyle default_init_style(int K) {
    return (K == 2 || K == 4) ? InitStyle::hadamard : InitStyle::scaled_identity;
}

InitializerD build_initializer(int K, InitStyle style) {
    if (K < 1 || K > 16) throw std::invalid_argument("build_initializer: K out of range");
    InitializerD init;
    if (style == InitStyle::hadamard) {
        if (K == 2) {
            init.D = CMatrix{{1, -1}, {1, 1}};
        } else if (K == 4) {
            init.D = CMatrix{{1, -1, -1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, 1, 1, 1}};
        } else {
            throw std::invalid_argument("build_initializer: Hadamard initializer needs K = 2 or 4, got " +
                                        std::to_string(K));
        }
    } else {
        init.D = CMatrix::identity(static_cast<std::size_t>(K)) * std::sqrt(static_cast<double>(K));
    }
    init.normalized_D = init.D * (1.0 / std::sqrt(static_cast<double>(K)));
    return init;
}

std::vector<GroupCodeSpec> builtin_code_tables() {
    using enum CodeKind;
    return {
        // K = 2
        {cyclic, 2, 2, {1, 1}},
        {cyclic, 4, 2, {1, 1}},
        {cyclic, 8, 2, {1, 3}},
        {cyclic, 16, 2, {1, 7}},
        {cyclic, 32, 2, {1, 7}},
        {cyclic, 64, 2, {1, 19}},
        {cyclic, 128, 2, {1, 47}},
        {cyclic, 256, 2, {1, 75}},
        {dicyclic, 4, 2, {1}},
        {dicyclic, 8, 2, {1}},
        {dicyclic, 16, 2, {1}},
        {dicyclic, 32, 2, {1}},
        {dicyclic, 64, 2, {1}},
        {dicyclic, 128, 2, {1}},
        // K = 3
        {cyclic, 2, 3, {1, 1, 1}},
        {cyclic, 4, 3, {1, 1, 1}},
        {cyclic, 8, 3, {1, 1, 3}},
        {cyclic, 16, 3, {1, 3, 5}},
        {cyclic, 32, 3, {1, 7, 9}},
        {cyclic, 64, 3, {1, 17, 19}},
        // K = 4
        {cyclic, 2, 4, {1, 1, 1, 1}},
        {cyclic, 4, 4, {1, 1, 1, 1}},
        {cyclic, 8, 4, {1, 1, 3, 3}},
        {cyclic, 16, 4, {1, 3, 5, 7}},
        {cyclic, 32, 4, {1, 7, 9, 15}},
        {cyclic, 64, 4, {1, 11, 17, 19}},
        {cyclic, 128, 4, {1, 29, 37, 39}},
        {dicyclic, 4, 4, {1, 1}},
        {dicyclic, 8, 4, {1, 1}},
        {dicyclic, 16, 4, {1, 3}},
        {dicyclic, 32, 4, {1, 7}},
        {dicyclic, 64, 4, {1, 7}},
        {dicyclic, 128, 4, {1, 19}},
    };
}

std::vector<GroupCodeSpec> builtin_code_tables(int K) {
    auto all = builtin_code_tables();
    std::erase_if(all, [K](const GroupCodeSpec& s) { return s.K != K; });
    return all;
}

GroupReport verify_group(const GroupCode& code) {
    GroupReport r;
    const auto& el = code.elements;
    const std::size_t K = static_cast<std::size_t>(code.spec.K);
    r.unitary = std::all_of(el.begin(), el.end(), [K](const CMatrix& g) {
        return g.rows() == K && g.cols() == K && is_unitary(g);
    });
    r.size_ok = el.size() == static_cast<std::size_t>(code.spec.M);
    r.identity_first = !el.empty() && approx_eq(el.front(), CMatrix::identity(K));

    r.distinct = true;
    for (std::size_t i = 0; i < el.size() && r.distinct; ++i)
        for (std::size_t j = i + 1; j < el.size(); ++j)
            if (approx_eq(el[i], el[j])) {
                r.distinct = false;
                break;
            }

    r.closed = r.unitary;
    for (std::size_t i = 0; i < el.size() && r.closed; ++i)
        for (std::size_t j = 0; j < el.size(); ++j)
            if (code.index_of(matmul(el[i], el[j])) == el.size()) {
                r.closed = false;
                break;
            }

    r.max_order = r.unitary ? max_order_of(el, 2 * std::max<int>(code.spec.M, 4)) : 0;
    r.expected_order = code.spec.kind == CodeKind::cyclic ? code.spec.M : code.spec.M / 2;
    r.order_ok = r.max_order == r.expected_order;
    return r;
}

namespace {

// Calls visit(u) for every non-decreasing sequence of `len` odd values in (0, upper).
template <class Visit>
void for_each_sorted_odd(int len, int upper, Visit&& visit) {
    std::vector<int> u(static_cast<std::size_t>(len), 1);
    if (upper <= 1) return;
    while (true) {
        visit(u);
        int i = len - 1;
        while (i >= 0 && u[static_cast<std::size_t>(i)] + 2 >= upper) --i;
        if (i < 0) return;
        const int next = u[static_cast<std::size_t>(i)] + 2;
        for (int k = i; k < len; ++k) u[static_cast<std::size_t>(k)] = next;
    }
}

std::size_t count_sorted_odd(int len, int upper) {
    std::size_t n = 0;
    for_each_sorted_odd(len, upper, [&n](const std::vector<int>&) { ++n; });
    return n;
}

}  // namespace

USearchResult search_best_u(CodeKind kind, int M, int K, std::size_t max_work) {
    const int len = kind == CodeKind::cyclic ? K : K / 2;
    const int upper = kind == CodeKind::cyclic ? M : M / 2;
    GroupCodeSpec probe{kind, M, K, std::vector<int>(static_cast<std::size_t>(std::max(len, 0)), 1)};
    probe.validate();

    const std::size_t candidates = count_sorted_odd(len, upper);
    const std::size_t work = candidates * static_cast<std::size_t>(M) * static_cast<std::size_t>(M) *
                             static_cast<std::size_t>(K);
    if (work > max_work) {
        throw std::invalid_argument("search_best_u: search space too large (" + std::to_string(work) +
                                    " > " + std::to_string(max_work) + ")");
    }

    USearchResult best;
    best.candidates = candidates;
    best.min_distance_sq = -1.0;
    for_each_sorted_odd(len, upper, [&](const std::vector<int>& u) {
        const GroupCode code = build_group_code({kind, M, K, u});
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < code.size(); ++i)
            for (std::size_t j = i + 1; j < code.size(); ++j)
                dmin = std::min(dmin, frob_norm_sq(code.elements[i] - code.elements[j]));
        // Strict improvement keeps the lexicographically first u on ties.
        if (dmin > best.min_distance_sq + 1e-9) {
            best.min_distance_sq = dmin;
            best.spec = code.spec;
        }
    });
    return best;
}

}  // namespace drmsim
