#include <iostream>

#include "equilog/engine.hpp"
#include "equilog/presentation.hpp"

using namespace equilog;

// independent route: trace on quotient = trace on full ambient - trace on
// full ideal (pivot formula), signed permutation action
static Rat full_trace(const RingPresentation& p, const FullEchelon& ech,
                      const std::vector<int>& sigma) {
    std::map<uint64_t, ColIdx> idx;
    for (size_t i = 0; i < ech.monomials.size(); ++i) idx[ech.monomials[i]] = (ColIdx)i;
    Rat amb = 0;
    for (uint64_t m : ech.monomials) {
        auto [s, im] = sigma_mono(p, sigma, m);
        if (s != 0 && im == m) amb += s;
    }
    Rat ideal = 0;
    for (size_t r = 0; r < ech.basis.pivots.size(); ++r) {
        ColIdx piv = ech.basis.pivots[r];
        // coeff of column piv in sigma . e_r, where e_r = unit(piv) + tail
        // compute sigma(e_r) term by term
        auto add_term = [&](uint64_t m, const Rat& c) {
            auto [s, im] = sigma_mono(p, sigma, m);
            if (s == 0) return;
            if (im == ech.monomials[piv]) ideal += c * s;
        };
        add_term(ech.monomials[piv], Rat(1));
        for (const auto& [col, v] : ech.basis.tails[r]) add_term(ech.monomials[col], v);
    }
    return amb - ideal;
}

// NF route on the same echelon: sum over standard monomials s of [s]NF(sigma.s)
static Rat nf_trace(const RingPresentation& p, const FullEchelon& ech,
                    const std::vector<int>& sigma, bool verbose) {
    std::map<uint64_t, ColIdx> idx;
    for (size_t i = 0; i < ech.monomials.size(); ++i) idx[ech.monomials[i]] = (ColIdx)i;
    Rat tr = 0;
    for (ColIdx scol : ech.basis.nonpivots) {
        uint64_t s = ech.monomials[scol];
        auto [sg, im] = sigma_mono(p, sigma, s);
        Rat contrib = 0;
        if (sg != 0) {
            ColIdx col = idx.at(im);
            int pr = ech.basis.pivot_row_of_col[col];
            if (pr < 0) {
                if (col == scol) contrib += sg;
            } else {
                const Rat* e = ech.basis.tail_entry(pr, scol);
                if (e) contrib -= Rat(sg) * (*e);
            }
        }
        if (verbose && contrib != 0)
            std::cout << "   s=" << std::hex << s << std::dec << " contrib " << contrib.get_str()
                      << "\n";
        tr += contrib;
    }
    return tr;
}

// engine-style reduced computation replicated
static void reduced_route(RingId id, int n, int degree) {
    auto red = reduce_ring(build_ring(id, n));
    auto mons = enumerate_monomials(red.kept_count(), degree, red.squarefree);
    std::map<uint64_t, ColIdx> index;
    for (size_t i = 0; i < mons.size(); ++i) index[mons[i]] = (ColIdx)i;
    std::vector<RatRow> rows;
    auto mults = enumerate_monomials(red.kept_count(), degree - 2, red.squarefree);
    for (const auto& q : red.relations)
        for (uint64_t m : mults) {
            Poly prod;
            for (const auto& [rm, rc] : q) {
                auto r = mono::mul(rm, m, red.pres.kind, red.squarefree);
                if (r.sign == 0) continue;
                poly_add(prod, r.m, r.sign < 0 ? Rat(-rc) : rc);
            }
            if (prod.empty()) continue;
            RatRow row;
            for (const auto& [pm, pc] : prod) row.emplace_back(index.at(pm), pc);
            rows.push_back(std::move(row));
        }
    auto basis = rref_rational(std::move(rows), (ColIdx)mons.size());
    std::cout << "reduced rank=" << basis.rank() << " cols=" << mons.size() << "\n";

    for (const auto& mu : partitions(n)) {
        std::vector<int> sigma(n + 1);
        int pos = 1;
        for (int part : mu.parts) {
            for (int x = pos; x < pos + part - 1; ++x) sigma[x] = x + 1;
            sigma[pos + part - 1] = pos;
            pos += part;
        }
        // engine fast-path logic
        int K = red.kept_count();
        std::vector<std::vector<std::pair<uint8_t, Rat>>> img(K);
        for (int k = 0; k < K; ++k) img[k] = red.sigma_image(sigma, (uint8_t)k);
        Rat trace = 0;
        std::array<uint8_t, 8> gens{};
        for (ColIdx scol : basis.nonpivots) {
            uint64_t s = mons[scol];
            int d = mono::unpack(s, gens);
            int sign = 1;
            uint64_t acc = mono::kOne;
            Rat coeff = 1;
            for (int k = 0; k < d && sign; ++k) {
                const auto& [gi, gc] = img[gens[k]][0];
                auto r = mono::mul(acc, mono::single(gi), red.pres.kind, red.squarefree);
                sign = r.sign;
                acc = r.m;
                coeff *= gc;
            }
            if (sign == 0) continue;
            if (sign < 0) coeff = -coeff;
            ColIdx col = index.at(acc);
            int pr = basis.pivot_row_of_col[col];
            if (pr < 0) {
                if (col == scol) trace += coeff;
            } else {
                const Rat* e = basis.tail_entry(pr, scol);
                if (e) trace -= coeff * (*e);
            }
        }
        std::cout << "class " << mu.str() << " engine-route " << trace.get_str() << "\n";
    }
}

int main() {
    EngineOptions opts;
    opts.jobs = 1;
    Engine eng(opts);
    auto p = build_ring(RingId::A, 4);
    auto ech = ideal_echelon(p, 3);
    std::cout << "full rank=" << ech.basis.rank() << " cols=" << ech.monomials.size() << "\n";
    reduced_route(RingId::A, 4, 3);

    for (const auto& mu : partitions(4)) {
        std::vector<int> sigma(5);
        int pos = 1;
        for (int part : mu.parts) {
            for (int x = pos; x < pos + part - 1; ++x) sigma[x] = x + 1;
            sigma[pos + part - 1] = pos;
            pos += part;
        }
        Rat tr = full_trace(p, ech, sigma);
        Rat tr2 = nf_trace(p, ech, sigma, false);
        std::cout << "class " << mu.str() << " pivot-route " << tr.get_str() << "  nf-route "
                  << tr2.get_str() << "\n";
    }
    return 0;
}
