#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "equilog/arith.hpp"
#include "equilog/errors.hpp"
#include "equilog/sparse.hpp"

namespace equilog {

// A and B are exterior-algebra quotients; the rest are polynomial quotients.
// Dx is the production presentation of the ring D; Dh the cross-check
// presentation on triple generators. Dt is the one-parameter deformation
// interpolating D (t=0) and M (t=1). AOT is OT with generator squares added.
enum class RingId { A, B, C, Dx, Dh, T, R, OT, M, Dt, AOT };

std::string ring_name(RingId id);
RingId parse_ring(const std::string& name);

enum class AlgebraKind { Exterior, Polynomial };

// Monomials are packed into a uint64: up to eight generator slots, one byte
// each, holding id+1 from the most significant byte down, ascending. The
// packed integer order coincides with lexicographic order on sorted
// generator tuples.
namespace mono {

constexpr int kMaxDegree = 8;
constexpr uint64_t kOne = 0;

inline int degree(uint64_t m) {
    int d = 0;
    for (int k = 0; k < 8; ++k)
        if ((m >> (8 * (7 - k))) & 0xff) ++d;
    return d;
}

inline uint64_t single(int gen) { return static_cast<uint64_t>(gen + 1) << 56; }

inline int unpack(uint64_t m, std::array<uint8_t, 8>& out) {
    int d = 0;
    for (int k = 0; k < 8; ++k) {
        uint8_t b = static_cast<uint8_t>(m >> (8 * (7 - k)));
        if (!b) break;
        out[d++] = static_cast<uint8_t>(b - 1);
    }
    return d;
}

inline uint64_t pack(const uint8_t* gens, int deg) {
    uint64_t m = 0;
    for (int k = 0; k < deg; ++k) m |= static_cast<uint64_t>(gens[k] + 1) << (8 * (7 - k));
    return m;
}

struct MulResult {
    int sign;  // 0 when the product vanishes (or is pruned)
    uint64_t m;
};

// Merge of two sorted tuples. Exterior: repeated generator kills the product
// and the sign is the interleaving parity. squarefree prunes repeats.
MulResult mul(uint64_t a, uint64_t b, AlgebraKind kind, bool squarefree);

}  // namespace mono

// Sparse polynomial keyed by packed monomial; map order is the monomial order.
using Poly = std::map<uint64_t, Rat>;

void poly_add(Poly& p, uint64_t m, const Rat& c);
Poly poly_mul(const Poly& a, const Poly& b, AlgebraKind kind, bool squarefree);

struct RingPresentation {
    RingId id;
    int n = 0;
    AlgebraKind kind = AlgebraKind::Polynomial;
    Rat t;                 // Dt only
    int arity = 2;         // generator label length: 1, 2, or 3
    int swap_sign = 1;     // pairs: x_{ji} = swap_sign * x_{ij}
    std::vector<std::array<int, 3>> gens;  // canonical labels, ascending lex
    std::vector<Poly> linear;              // degree-1 relation instances
    std::vector<Poly> quadratic;           // degree-2 relation instances

    int gen_count() const { return static_cast<int>(gens.size()); }
    int gen_id(std::array<int, 3> label) const;  // canonical label required
    // canonicalize raw (possibly unordered) labels: sign and generator id
    std::pair<int, int> canon(std::array<int, 3> raw) const;
};

RingPresentation build_ring(RingId id, int n, const Rat& t = Rat(0));

// All degree-i monomials over the full canonical generators, in monomial
// order; squarefree for the exterior kind.
std::vector<uint64_t> monomial_basis(const RingPresentation& p, int degree);

// Degree-i monomials over an arbitrary generator count.
std::vector<uint64_t> enumerate_monomials(int gen_count, int degree, bool squarefree);

// Signed permutation action on a full-generator monomial: sigma is 1-based.
std::pair<int, uint64_t> sigma_mono(const RingPresentation& p, const std::vector<int>& sigma,
                                    uint64_t m);

// Full-ambient echelon of the degree-i piece of the ideal: rows are all
// relation instances times complementary-degree monomials.
struct FullEchelon {
    std::vector<uint64_t> monomials;
    RrefResult basis;
};
FullEchelon ideal_echelon(const RingPresentation& p, int degree,
                          ArithMode mode = ArithMode::Rational);

// Presentation with the linear relations eliminated by substitution (they
// define a coordinate subspace). Kept generators are a subset of the full
// ones, re-indexed in order. For rings whose relations would densify badly
// under substitution the linear relations are retained as degree-1 members
// of the relation set instead (kept = all generators).
struct ReducedRing {
    RingPresentation pres;
    bool squarefree = false;        // squarefree monomial basis (exterior or absorbed squares)
    bool absorbed_squares = false;  // all generator squares lie in the ideal
    std::vector<uint8_t> kept;      // full ids, ascending
    std::vector<int> kept_of_full;  // -1 when eliminated
    // full id -> linear form over kept ids
    std::vector<std::vector<std::pair<uint8_t, Rat>>> elim;
    std::vector<Poly> relations;  // rewritten quadratics over kept ids
    std::vector<Poly> linear;     // retained degree-1 relations over kept ids

    int kept_count() const { return static_cast<int>(kept.size()); }
    // image of a kept generator under sigma, as a form over kept generators
    std::vector<std::pair<uint8_t, Rat>> sigma_image(const std::vector<int>& sigma,
                                                     uint8_t kept_id) const;
};

ReducedRing reduce_ring(const RingPresentation& p);

}  // namespace equilog
