#pragma once

#include <map>
#include <optional>
#include <vector>

#include "equilog/characters.hpp"
#include "equilog/engine.hpp"

namespace equilog {

// Onset d plus multiplicities {r_lambda : |lambda| + lambda_1 <= d}. For all
// n >= d the described representation is sum of V_{lambda[n]}^{r_lambda}.
struct StablePattern {
    int d = 0;
    std::map<Partition, long long, PartitionLess> mult;
    bool operator==(const StablePattern&) const = default;
};

// lambda[n]: prepend a first part of size n - |lambda|.
Partition pad(const Partition& lambda, int n);

// All lambda with |lambda| + lambda_1 <= d, in canonical order.
std::vector<Partition> lambda_set(int d);

// Strip the first part of every constituent; NotStableAtD when a stripped
// partition falls outside Lambda_d.
StablePattern unpad(const IrrDecomposition& a, int d);

IrrDecomposition instantiate(const StablePattern& p, int n);

StablePattern pattern_add(const StablePattern& p, const StablePattern& q);
// NegativeMultiplicity when the difference is not an honest pattern.
StablePattern pattern_subtract(const StablePattern& p, const StablePattern& q);

// Onset d+e: instantiate both at max(d+e,1), multiply, unpad.
StablePattern pattern_tensor(const StablePattern& p, const StablePattern& q);

enum class CompareMode { Equal, Subrep };

struct PatternCompareResult {
    bool holds = true;
    std::optional<Partition> witness;
};

// Aligns both patterns to onset max(p.d, q.d) by instantiate-then-unpad, then
// compares multiplicity maps.
PatternCompareResult pattern_compare(const StablePattern& p, const StablePattern& q,
                                     CompareMode mode);

// Free-module data: P(lambda)_n decomposes over the interlacing set
// {mu : lambda_i >= mu_i >= lambda_{i+1}}.
std::vector<Partition> interlacing_set(const Partition& lambda);
StablePattern free_module_pattern(const Partition& lambda);
IrrDecomposition free_module_instance(const Partition& lambda, int n);

struct FreeModuleDecomposition {
    std::map<Partition, long long, PartitionLess> mult;
};

// Greedy peeling by maximal |lambda|+lambda_1 (ties by canonical order);
// NotFree when the pattern is not a non-negative combination.
FreeModuleDecomposition free_decompose(StablePattern p);

// Proven stabilization onsets (A,B: 3i+1; C,D,OT,M: 3i; T,R: 2i).
int stable_onset(RingId ring, int degree);

// Fit at n = max(d,1) from presentation data and verify at n+1.
StablePattern fit_pattern(Engine& engine, RingId ring, int degree, int d);

}  // namespace equilog
