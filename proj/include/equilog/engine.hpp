#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "equilog/gradedrep.hpp"
#include "equilog/presentation.hpp"

namespace equilog {

inline constexpr const char* kCodeVersion = "0.1.0";
inline constexpr const char* kMonomialOrderId = "lex-desc-sorted-tuples-v1";

struct EngineOptions {
    std::string cache_dir;  // empty: in-memory only
    ArithMode arith = ArithMode::Rational;
    int jobs = 1;
    // above this many monomials a degree is handled by the generator-transfer
    // recursion (dimension only) instead of the relation-times-monomial matrix
    size_t macaulay_column_cap = 60000;
    size_t entry_cap = 400u * 1000u * 1000u;
    bool progress = false;  // cell timings on stderr (env EQUILOG_PROGRESS)
};

struct CellData {
    long long dimension = 0;
    IrrDecomposition decomposition;
};

// Computes and caches graded pieces of the presented rings: dimension and
// S_n-decomposition per (ring, n, degree). Disk cache entries are one JSON
// file per cell, written atomically; a manifest pins code version and
// monomial order, and mismatched caches are ignored.
class Engine {
  public:
    struct DegreeState;  // monomials + echelon of one degree

    explicit Engine(EngineOptions opts);

    const EngineOptions& options() const { return opts_; }

    // Full cell: dimension and honest decomposition (trace route).
    CellData cell(RingId ring, int n, int degree);

    long long dimension_of(RingId ring, int n, int degree);

    // Pieces 0..max_degree assembled into a graded representation.
    GradedRep graded_rep(RingId ring, int n, int max_degree);

    // Dimensions by ascending degree until the first zero piece; every ring
    // here is generated in degree one, so all later pieces vanish too.
    // Works for the deformed family via t; not available for T/R/OT (infinite).
    std::vector<long long> dims_until_zero(RingId ring, int n, const Rat& t = Rat(0),
                                           int degree_cap = 24);

    // Total dimension of the D_t quotient at each sample; throws on samples
    // that fail to terminate by the degree cap (non-generic).
    long long deformed_total(int n, const Rat& t);

  private:
    std::shared_ptr<const ReducedRing> reduced(RingId ring, int n, const Rat& t);
    CellData compute_cell(const ReducedRing& ring, int n, int degree);
    std::shared_ptr<DegreeState> degree_state(const ReducedRing& ring, int degree);

    std::optional<CellData> cache_load(RingId ring, int n, int degree);
    void cache_store(RingId ring, int n, int degree, const CellData& data);

    EngineOptions opts_;
    std::mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<const ReducedRing>> rings_;
    std::unordered_map<std::string, CellData> cells_;
    bool cache_ready_ = false;
};

}  // namespace equilog
