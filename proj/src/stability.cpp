#include "equilog/stability.hpp"

#include <algorithm>

namespace equilog {

Partition pad(const Partition& lambda, int n) {
    int first = n - lambda.size();
    if (first < lambda.part(0))
        throw PadTooSmall("pad: n = " + std::to_string(n) + " too small for [" + lambda.str() +
                          "]");
    std::vector<int> parts;
    if (first > 0) parts.push_back(first);
    else if (!lambda.parts.empty())
        throw PadTooSmall("pad: zero first part for nonempty partition");
    parts.insert(parts.end(), lambda.parts.begin(), lambda.parts.end());
    return Partition(std::move(parts));
}

std::vector<Partition> lambda_set(int d) {
    std::vector<Partition> out;
    for (int s = 0; s <= d; ++s)
        for (const auto& la : partitions(s))
            if (s + la.part(0) <= d) out.push_back(la);
    return out;
}

StablePattern unpad(const IrrDecomposition& a, int d) {
    if (a.n < d) throw NotStableAtD("unpad: n below onset");
    StablePattern p;
    p.d = d;
    for (const auto& [la, m] : a.mult) {
        std::vector<int> rest(la.parts.begin() + (la.parts.empty() ? 0 : 1), la.parts.end());
        Partition stripped(std::move(rest));
        if (stripped.size() + stripped.part(0) > d)
            throw NotStableAtD("unpad: constituent [" + la.str() + "] lies outside Lambda_" +
                               std::to_string(d));
        p.mult[stripped] += m;
    }
    return p;
}

IrrDecomposition instantiate(const StablePattern& p, int n) {
    if (n < p.d) throw PadTooSmall("instantiate: n below onset");
    IrrDecomposition out(n);
    for (const auto& [la, m] : p.mult) out.add(pad(la, n), m);
    return out;
}

StablePattern pattern_add(const StablePattern& p, const StablePattern& q) {
    StablePattern out;
    out.d = std::max(p.d, q.d);
    out.mult = p.mult;
    for (const auto& [la, m] : q.mult) {
        out.mult[la] += m;
        if (out.mult[la] == 0) out.mult.erase(la);
    }
    return out;
}

StablePattern pattern_subtract(const StablePattern& p, const StablePattern& q) {
    StablePattern out;
    out.d = std::max(p.d, q.d);
    out.mult = p.mult;
    for (const auto& [la, m] : q.mult) {
        long long v = (out.mult.count(la) ? out.mult[la] : 0) - m;
        if (v < 0)
            throw NegativeMultiplicity("pattern_subtract: negative multiplicity at [" + la.str() +
                                       "]");
        if (v == 0)
            out.mult.erase(la);
        else
            out.mult[la] = v;
    }
    return out;
}

StablePattern pattern_tensor(const StablePattern& p, const StablePattern& q) {
    StablePattern out;
    out.d = p.d + q.d;
    if (p.mult.empty() || q.mult.empty()) return out;
    int n = std::max(out.d, 1);
    IrrDecomposition prod = kronecker(instantiate(p, n), instantiate(q, n));
    StablePattern u = unpad(prod, out.d);
    out.mult = std::move(u.mult);
    return out;
}

PatternCompareResult pattern_compare(const StablePattern& p, const StablePattern& q,
                                     CompareMode mode) {
    int d = std::max(p.d, q.d);
    int n = std::max(d, 1);
    StablePattern pa = unpad(instantiate(p, n), d);
    StablePattern qa = unpad(instantiate(q, n), d);
    PatternCompareResult res;
    for (const auto& [la, m] : pa.mult) {
        long long other = qa.mult.count(la) ? qa.mult[la] : 0;
        bool ok = mode == CompareMode::Equal ? m == other : m <= other;
        if (!ok) {
            res.holds = false;
            res.witness = la;
            return res;
        }
    }
    if (mode == CompareMode::Equal)
        for (const auto& [la, m] : qa.mult)
            if (!pa.mult.count(la) && m != 0) {
                res.holds = false;
                res.witness = la;
                return res;
            }
    return res;
}

std::vector<Partition> interlacing_set(const Partition& lambda) {
    int L = lambda.length();
    std::vector<Partition> out;
    std::vector<int> mu;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == L) {
            std::vector<int> clean;
            for (int v : mu)
                if (v > 0) clean.push_back(v);
            out.push_back(Partition(std::move(clean)));
            return;
        }
        int lo = (i + 1 < L) ? lambda.parts[i + 1] : 0;
        int lo2 = lo;
        int hi = lambda.parts[i];
        for (int v = hi; v >= lo2; --v) {
            mu.push_back(v);
            self(self, i + 1);
            mu.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), partition_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StablePattern free_module_pattern(const Partition& lambda) {
    StablePattern p;
    p.d = lambda.size() + lambda.part(0);
    for (const auto& mu : interlacing_set(lambda)) p.mult[mu] = 1;
    return p;
}

IrrDecomposition free_module_instance(const Partition& lambda, int n) {
    return instantiate(free_module_pattern(lambda), n);
}

FreeModuleDecomposition free_decompose(StablePattern p) {
    FreeModuleDecomposition out;
    while (!p.mult.empty()) {
        // maximal |lambda|+lambda_1; among ties the last in canonical order
        auto best = p.mult.begin();
        int best_key = -1;
        for (auto it = p.mult.begin(); it != p.mult.end(); ++it) {
            int key = it->first.size() + it->first.part(0);
            if (key >= best_key) {
                best_key = key;
                best = it;
            }
        }
        Partition la = best->first;
        long long r = best->second;
        if (r < 0) throw NotFree("free_decompose: negative multiplicity");
        StablePattern pl = free_module_pattern(la);
        for (const auto& [mu, c] : pl.mult) {
            long long v = (p.mult.count(mu) ? p.mult[mu] : 0) - r * c;
            if (v < 0)
                throw NotFree("free_decompose: pattern is not a non-negative combination of free "
                              "modules (failed at [" +
                              la.str() + "])");
            if (v == 0)
                p.mult.erase(mu);
            else
                p.mult[mu] = v;
        }
        out.mult[la] += r;
    }
    return out;
}

int stable_onset(RingId ring, int degree) {
    switch (ring) {
        case RingId::A:
        case RingId::B: return 3 * degree + 1;
        case RingId::C:
        case RingId::Dx:
        case RingId::Dh:
        case RingId::OT:
        case RingId::M: return 3 * degree;
        case RingId::T:
        case RingId::R: return 2 * degree;
        default: throw std::invalid_argument("stable_onset: no proven onset for this ring");
    }
}

StablePattern fit_pattern(Engine& engine, RingId ring, int degree, int d) {
    int n0 = std::max(d, 1);
    StablePattern p = unpad(engine.cell(ring, n0, degree).decomposition, d);
    IrrDecomposition predicted = instantiate(p, n0 + 1);
    IrrDecomposition direct = engine.cell(ring, n0 + 1, degree).decomposition;
    if (!(predicted == direct))
        throw VerificationFailed("fit_pattern: instantiation at n = " + std::to_string(n0 + 1) +
                                 " disagrees with direct computation for " + ring_name(ring) +
                                 "^" + std::to_string(degree));
    return p;
}

}  // namespace equilog
