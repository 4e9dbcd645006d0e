#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equilog/engine.hpp"
#include "equilog/json_io.hpp"
#include "equilog/stability.hpp"

namespace equilog {

struct CheckRecord {
    std::string name;
    bool pass = false;
    ordered_json details;
};

// Machine-readable record of a verification pipeline. Every check is
// reproducible from the cached decompositions it references; failure is data,
// not an exception.
struct Certificate {
    std::string pipeline;
    ordered_json params;
    std::vector<CheckRecord> checks;
    ordered_json environment;

    bool all_pass() const;
    ordered_json to_json() const;
    void add(std::string name, bool pass, ordered_json details = ordered_json::object());
};

class Verifier {
  public:
    explicit Verifier(Engine& engine) : engine_(engine) {}

    // Graded pieces with the degree-m chain evaluated for every n up to the
    // stabilization bound of the tensor squares (B/A: 3m+2, D/C/M: 3m).
    Certificate verify_elc(RingId ring, int m_max, int bound_override = -1);

    // D^i vs M^i: direct comparisons for n <= 3i and pattern equality at the
    // proven onset.
    Certificate verify_mpy(int i_max);

    // The consistency battery: tensor identities, restriction, the two D
    // presentations, and the Artinian Orlik-Terao comparison.
    Certificate consistency(int cap_n = 8);

    // Totals of the deformed family at t = 0, 1 and at random generic
    // samples; flags every n whose generic total drops below (n-1)!.
    Certificate deform(int n_max, int samples, uint64_t seed);

    // Computes cells and emits the dimension table and decompositions.
    Certificate characters(RingId ring, int n_min, int n_max, int degree_max);

    // Fitted, verified pattern; onset from the proven table unless overridden.
    Certificate fit(RingId ring, int degree, int onset_override = -1);

    // Pattern for a ring/degree, fitted at the proven onset and cached.
    const StablePattern& pattern(RingId ring, int degree);

    // Graded rep of pieces 0..max_degree at n: direct data below the onset,
    // instantiated patterns at or above it.
    GradedRep assemble(RingId ring, int n, int max_degree);

    int elc_bound(RingId ring, int m) const;

  private:
    Engine& engine_;
    std::map<std::pair<int, int>, StablePattern> patterns_;  // (ring, degree)
    std::mutex pattern_mu_;
};

Certificate make_certificate(const Engine& engine, std::string pipeline, ordered_json params);

}  // namespace equilog
