#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drmsim/cmatrix.hpp"

namespace drmsim {

enum class CodeKind { cyclic, dicyclic };

std::string to_string(CodeKind kind);
CodeKind parse_code_kind(const std::string& text);

// (M; u_1..u_K) cyclic or (M; u_1..u_{K/2}) dicyclic unitary group code.
struct GroupCodeSpec {
    CodeKind kind = CodeKind::cyclic;
    int M = 2;
    int K = 2;
    std::vector<int> u;

    // Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
    // "(8;1,3)"
    std::string label() const;
    // "1,3"
    std::string u_list() const;

    friend bool operator==(const GroupCodeSpec&, const GroupCodeSpec&) = default;
};

struct GroupCode {
    GroupCodeSpec spec;
    // Canonical order: cyclic m -> G0^m; dicyclic l*M/2 + m -> G0^m G1^l.
    std::vector<CMatrix> elements;
    int max_element_order = 0;

    std::size_t size() const noexcept { return elements.size(); }
    std::size_t index_of(const CMatrix& G, double tol = kDefaultTol) const;
};

GroupCode build_cyclic(const GroupCodeSpec& spec);
GroupCode build_dicyclic(const GroupCodeSpec& spec);
GroupCode build_group_code(const GroupCodeSpec& spec);

// Smallest n >= 1 with G^n = I, or 0 when none is found up to max_power.
int element_order(const CMatrix& G, int max_power, double tol = kDefaultTol);

enum class InitStyle { hadamard, scaled_identity };

std::string to_string(InitStyle style);
InitStyle parse_init_style(const std::string& text);
// Hadamard where available (K = 2, 4), sqrt(K) I otherwise.
InitStyle default_init_style(int K);

struct InitializerD {
    CMatrix D;             // D D^H = K I
    CMatrix normalized_D;  // D / sqrt(K), unitary
};

InitializerD build_initializer(int K, InitStyle style);

// Every row of the shipped K = 2, 3, 4 tables.
std::vector<GroupCodeSpec> builtin_code_tables();
std::vector<GroupCodeSpec> builtin_code_tables(int K);

struct GroupReport {
    bool unitary = false;
    bool closed = false;
    bool size_ok = false;
    bool distinct = false;
    bool identity_first = false;
    int max_order = 0;
    int expected_order = 0;
    bool order_ok = false;

    bool ok() const noexcept {
        return unitary && closed && size_ok && distinct && identity_first && order_ok;
    }
};

// Expected maximal order is M for cyclic codes and M/2 for dicyclic ones.
GroupReport verify_group(const GroupCode& code);

// Exhaustive search for the u-vector maximising the minimum pairwise squared
// Frobenius distance between group elements. Ties go to the
// lexicographically smallest u.
struct USearchResult {
    GroupCodeSpec spec;
    double min_distance_sq = 0.0;
    std::size_t candidates = 0;
};

USearchResult search_best_u(CodeKind kind, int M, int K, std::size_t max_work = 50'000'000);

}  // namespace drmsim
