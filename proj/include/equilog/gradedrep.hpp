#pragma once

#include <map>
#include <optional>
#include <vector>

#include "equilog/characters.hpp"

namespace equilog {

// Graded S_n-representation: degree-indexed decompositions. Degrees without a
// stored piece are the zero representation.
struct GradedRep {
    int n = 0;
    std::map<int, IrrDecomposition> pieces;

    GradedRep() = default;
    explicit GradedRep(int n_) : n(n_) {}

    int top() const;  // largest degree with a nonzero piece, -1 if zero rep
    const IrrDecomposition& piece(int degree) const;
    void set_piece(int degree, IrrDecomposition d);
    bool operator==(const GradedRep&) const = default;
};

// (V tensor W)^m = sum_p kronecker(V^p, W^{m-p})
GradedRep graded_tensor(const GradedRep& v, const GradedRep& w);

struct SubrepWitness {
    Partition lambda;
    long long left = 0, right = 0;
};

// nullopt iff mult_a(lambda) <= mult_b(lambda) for all lambda; otherwise the
// first violating lambda in canonical order.
std::optional<SubrepWitness> subrep_violation(const IrrDecomposition& a,
                                              const IrrDecomposition& b);
bool is_subrep(const IrrDecomposition& a, const IrrDecomposition& b);

struct ChainLink {
    int i = 0, l = 0;  // left pair (i, l)
    int j = 0, k = 0;  // right pair (j, k)
    bool holds = true;
    std::optional<SubrepWitness> witness;
};

struct ElcVerdict {
    int m = 0;
    bool holds = true;
    std::vector<ChainLink> links;
    std::optional<SubrepWitness> witness;  // present iff some link fails
};

// Consecutive inclusions V^0 x V^m < V^1 x V^{m-1} < ... up to the middle.
ElcVerdict check_strong_elc(const GradedRep& v, int m);

// All quadruples i <= j <= k <= l with j+k = i+l = m; slow cross-check mode.
ElcVerdict check_strong_elc_quadruples(const GradedRep& v, int m);

struct WeakElcVerdict {
    int i = 0;
    bool holds = true;
    std::optional<SubrepWitness> witness;
};

// V^{i-1} x V^{i+1} < V^i x V^i for each i from 1 to top.
std::vector<WeakElcVerdict> check_weak_elc(const GradedRep& v);

// Exterior algebra on one degree-1 variable: trivial rep in degrees 0 and 1.
GradedRep e_rep(int n);

// Trivial rep in degree 0, V_{[n-1,1]} in degree 1.
GradedRep w_rep(int n);

}  // namespace equilog
