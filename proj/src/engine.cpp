#include "equilog/engine.hpp"

#include <chrono>
#include <iostream>
#include <filesystem>
#include <fstream>

#include "equilog/json_io.hpp"
#include "equilog/parallel.hpp"

namespace fs = std::filesystem;

namespace equilog {

namespace {

Int count_monomials(int gens, int degree, bool squarefree) {
    Int c;
    if (squarefree) {
        if (degree > gens) return 0;
        mpz_bin_uiui(c.get_mpz_t(), gens, degree);
    } else {
        if (gens == 0) return degree == 0 ? 1 : 0;
        mpz_bin_uiui(c.get_mpz_t(), gens + degree - 1, degree);
    }
    return c;
}

std::vector<int> class_representative(const Partition& mu, int n) {
    std::vector<int> sigma(n + 1);
    int pos = 1;
    for (int part : mu.parts) {
        for (int x = pos; x < pos + part - 1; ++x) sigma[x] = x + 1;
        sigma[pos + part - 1] = pos;
        pos += part;
    }
    return sigma;
}

}  // namespace

struct Engine::DegreeState {
    int degree = 0;
    std::vector<uint64_t> mons;
    std::unordered_map<uint64_t, ColIdx> index;
    RrefResult basis;
    std::vector<int> std_index_of_col;  // ordinal among non-pivots, -1 for pivots
    long long dim = 0;
};

Engine::Engine(EngineOptions opts) : opts_(std::move(opts)) {}

std::shared_ptr<const ReducedRing> Engine::reduced(RingId ring, int n, const Rat& t) {
    std::string key = ring_name(ring) + "|" + std::to_string(n) + "|" + t.get_str();
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = rings_.find(key);
        if (it != rings_.end()) return it->second;
    }
    auto red = std::make_shared<ReducedRing>(reduce_ring(build_ring(ring, n, t)));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, _] = rings_.emplace(key, std::move(red));
    return it->second;
}

std::shared_ptr<Engine::DegreeState> Engine::degree_state(const ReducedRing& ring, int degree) {
    auto started = std::chrono::steady_clock::now();
    auto st = std::make_shared<DegreeState>();
    st->degree = degree;
    if (degree > mono::kMaxDegree) throw CellTooLarge("degree exceeds monomial packing limit");
    st->mons = enumerate_monomials(ring.kept_count(), degree, ring.squarefree);
    st->index.reserve(st->mons.size() * 2);
    for (size_t i = 0; i < st->mons.size(); ++i)
        st->index.emplace(st->mons[i], static_cast<ColIdx>(i));

    std::vector<RatRow> rows;
    auto emit_multiples = [&](const std::vector<Poly>& rels, int rel_degree) {
        if (degree < rel_degree) return;
        std::vector<uint64_t> mults =
            enumerate_monomials(ring.kept_count(), degree - rel_degree, ring.squarefree);
        for (const auto& q : rels) {
            for (uint64_t m : mults) {
                RatRow row;
                row.reserve(q.size());
                Poly prod;
                for (const auto& [rm, rc] : q) {
                    auto r = mono::mul(rm, m, ring.pres.kind, ring.squarefree);
                    if (r.sign == 0) continue;
                    poly_add(prod, r.m, r.sign < 0 ? Rat(-rc) : rc);
                }
                if (prod.empty()) continue;
                for (const auto& [pm, pc] : prod) row.emplace_back(st->index.at(pm), pc);
                std::sort(row.begin(), row.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                rows.push_back(std::move(row));
            }
        }
    };
    emit_multiples(ring.linear, 1);
    emit_multiples(ring.relations, 2);
    size_t nrows = rows.size();
    st->basis = rref(std::move(rows), static_cast<ColIdx>(st->mons.size()), opts_.arith, false,
                     opts_.entry_cap, opts_.jobs);
    st->dim = static_cast<long long>(st->basis.nonpivots.size());
    st->std_index_of_col.assign(st->mons.size(), -1);
    for (size_t j = 0; j < st->basis.nonpivots.size(); ++j)
        st->std_index_of_col[st->basis.nonpivots[j]] = static_cast<int>(j);
    if (opts_.progress) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        std::cerr << "[equilog] " << ring_name(ring.pres.id) << " n=" << ring.pres.n
                  << " deg=" << degree << " cols=" << st->mons.size() << " rows=" << nrows
                  << " dim=" << st->dim << " (" << ms << " ms)\n";
    }
    return st;
}

namespace {

// [s] NF(sigma . s) summed over the standard monomials s: the trace of sigma
// on the quotient in the standard-monomial basis.
Rat quotient_trace(const ReducedRing& ring, const Engine::DegreeState& st,
                   const std::vector<int>& sigma) {
    int K = ring.kept_count();
    std::vector<std::vector<std::pair<uint8_t, Rat>>> img(K);
    for (int k = 0; k < K; ++k) img[k] = ring.sigma_image(sigma, static_cast<uint8_t>(k));

    AlgebraKind kind = ring.pres.kind;
    bool sf = ring.squarefree;
    Rat trace = 0;
    std::array<uint8_t, 8> gens{};

    for (ColIdx scol : st.basis.nonpivots) {
        uint64_t s = st.mons[scol];
        int d = mono::unpack(s, gens);

        bool fast = true;
        for (int k = 0; k < d; ++k)
            if (img[gens[k]].size() != 1) {
                fast = false;
                break;
            }

        if (fast) {
            int sign = 1;
            uint64_t acc = mono::kOne;
            Rat coeff = 1;
            for (int k = 0; k < d && sign; ++k) {
                const auto& [gi, gc] = img[gens[k]][0];
                auto r = mono::mul(acc, mono::single(gi), kind, sf);
                sign *= r.sign;
                acc = r.m;
                coeff *= gc;
            }
            if (sign == 0) continue;
            if (sign < 0) coeff = -coeff;
            ColIdx col = st.index.at(acc);
            int pr = st.basis.pivot_row_of_col[col];
            if (pr < 0) {
                if (col == scol) trace += coeff;
            } else {
                const Rat* e = st.basis.tail_entry(pr, scol);
                if (e) trace -= coeff * (*e);
            }
            continue;
        }

        Poly p;
        p.emplace(mono::kOne, Rat(1));
        for (int k = 0; k < d; ++k) {
            Poly next;
            for (const auto& [m, c] : p)
                for (const auto& [gi, gc] : img[gens[k]]) {
                    auto r = mono::mul(m, mono::single(gi), kind, sf);
                    if (r.sign == 0) continue;
                    Rat cc = c * gc;
                    if (r.sign < 0) cc = -cc;
                    poly_add(next, r.m, cc);
                }
            p = std::move(next);
        }
        for (const auto& [m, c] : p) {
            ColIdx col = st.index.at(m);
            int pr = st.basis.pivot_row_of_col[col];
            if (pr < 0) {
                if (col == scol) trace += c;
            } else {
                const Rat* e = st.basis.tail_entry(pr, scol);
                if (e) trace -= c * (*e);
            }
        }
    }
    return trace;
}

}  // namespace

CellData Engine::compute_cell(const ReducedRing& ring, int n, int degree) {
    auto st = degree_state(ring, degree);
    CellData out;
    out.dimension = st->dim;
    if (st->dim == 0) {
        out.decomposition = IrrDecomposition(n);
        return out;
    }
    const auto& classes = CharTable::of(n).classes();
    ClassFunction chi(n);
    parallel_for(classes.size(), opts_.jobs, [&](size_t ci) {
        chi.values[ci] = quotient_trace(ring, *st, class_representative(classes[ci], n));
    });
    // the identity class must recover the dimension
    int id_idx = CharTable::of(n).index(
        n == 0 ? Partition() : Partition(std::vector<int>(static_cast<size_t>(n), 1)));
    if (chi.values[id_idx] != Rat(int_of(st->dim)))
        throw std::logic_error("quotient trace at identity disagrees with dimension");
    out.decomposition = decompose(chi, true);
    return out;
}

CellData Engine::cell(RingId ring, int n, int degree) {
    if (ring == RingId::Dt) throw std::invalid_argument("cell: deformed ring is dimension-only");
    std::string key = ring_name(ring) + "|" + std::to_string(n) + "|" + std::to_string(degree);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cells_.find(key);
        if (it != cells_.end()) return it->second;
    }
    if (auto disk = cache_load(ring, n, degree)) {
        std::lock_guard<std::mutex> lock(mu_);
        cells_.emplace(key, *disk);
        return *disk;
    }
    auto red = reduced(ring, n, Rat(0));
    CellData data = compute_cell(*red, n, degree);
    cache_store(ring, n, degree, data);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, _] = cells_.emplace(key, std::move(data));
    return it->second;
}

long long Engine::dimension_of(RingId ring, int n, int degree) {
    return cell(ring, n, degree).dimension;
}

GradedRep Engine::graded_rep(RingId ring, int n, int max_degree) {
    GradedRep out(n);
    for (int d = 0; d <= max_degree; ++d) out.set_piece(d, cell(ring, n, d).decomposition);
    return out;
}

namespace {

// Abstract multiplication data carried from degree to degree once monomial
// enumeration becomes infeasible: for each generator, the map from the basis
// of the previous degree into the current one.
struct TransferState {
    int dim_prev = 0;  // dim Q_{i-1}
    int dim_cur = 0;   // dim Q_i
    std::vector<std::vector<RatRow>> mult;  // [gen][prev basis] -> coords in cur basis
};

TransferState transfer_from_states(const ReducedRing& ring, const Engine::DegreeState& prev,
                                   const Engine::DegreeState& cur) {
    int K = ring.kept_count();
    TransferState ts;
    ts.dim_prev = static_cast<int>(prev.dim);
    ts.dim_cur = static_cast<int>(cur.dim);
    ts.mult.assign(K, std::vector<RatRow>(ts.dim_prev));
    for (int g = 0; g < K; ++g) {
        for (int v = 0; v < ts.dim_prev; ++v) {
            uint64_t s = prev.mons[prev.basis.nonpivots[v]];
            auto r = mono::mul(mono::single(static_cast<uint8_t>(g)), s, ring.pres.kind,
                               ring.squarefree);
            if (r.sign == 0) continue;
            ColIdx col = cur.index.at(r.m);
            int pr = cur.basis.pivot_row_of_col[col];
            RatRow coords;
            if (pr < 0) {
                coords.emplace_back(cur.std_index_of_col[col], Rat(r.sign));
            } else {
                for (const auto& [c2, v2] : cur.basis.tails[pr])
                    coords.emplace_back(cur.std_index_of_col[c2],
                                        r.sign < 0 ? Rat(v2) : Rat(-v2));
            }
            std::sort(coords.begin(), coords.end());
            ts.mult[g][v] = std::move(coords);
        }
    }
    return ts;
}

// One degree step of the quadratic-algebra transfer: Q_{i+1} is the cokernel
// of the relation rows inside (generators x Q_i).
// Rows presenting Q_{i+1} as a quotient of (generators x Q_i): commutation
// and square syzygies, lifted quadratic relations, and any retained degree-1
// relations, all expressed through the multiplication maps.
std::vector<RatRow> transfer_rows(const ReducedRing& ring, const TransferState& ts) {
    int K = ring.kept_count();
    auto sym = [&](int g, int u) { return static_cast<ColIdx>(g) * ts.dim_cur + u; };

    std::vector<RatRow> rows;
    bool exterior = ring.pres.kind == AlgebraKind::Exterior;
    bool squares = exterior || ring.absorbed_squares;

    auto add_block = [&](RatRow& row, int g, const RatRow& coords, const Rat& scale) {
        for (const auto& [u, c] : coords) row.emplace_back(sym(g, u), c * scale);
    };
    auto finish = [&](RatRow& row) {
        std::sort(row.begin(), row.end());
        RatRow merged;
        for (auto& [c, v] : row) {
            if (!merged.empty() && merged.back().first == c)
                merged.back().second += v;
            else
                merged.emplace_back(c, v);
        }
        RatRow clean;
        for (auto& [c, v] : merged)
            if (v != 0) clean.emplace_back(c, std::move(v));
        if (!clean.empty()) rows.push_back(std::move(clean));
    };

    for (int v = 0; v < ts.dim_prev; ++v) {
        for (int g = 0; g < K; ++g) {
            if (squares) {
                RatRow row;
                add_block(row, g, ts.mult[g][v], Rat(1));
                finish(row);
            }
            for (int h = g + 1; h < K; ++h) {
                RatRow row;
                add_block(row, g, ts.mult[h][v], Rat(1));
                add_block(row, h, ts.mult[g][v], exterior ? Rat(1) : Rat(-1));
                finish(row);
            }
        }
        for (const auto& q : ring.relations) {
            RatRow row;
            std::array<uint8_t, 8> gg{};
            for (const auto& [m, c] : q) {
                mono::unpack(m, gg);
                add_block(row, gg[0], ts.mult[gg[1]][v], c);
            }
            finish(row);
        }
    }
    // retained degree-1 relations: L (x) w for every basis vector w
    for (const auto& lin : ring.linear) {
        std::array<uint8_t, 8> gg{};
        for (int w = 0; w < ts.dim_cur; ++w) {
            RatRow row;
            for (const auto& [m, c] : lin) {
                mono::unpack(m, gg);
                row.emplace_back(sym(gg[0], w), c);
            }
            finish(row);
        }
    }
    return rows;
}

std::pair<long long, TransferState> transfer_step(const ReducedRing& ring, const TransferState& ts,
                                                  ArithMode arith, size_t entry_cap, int jobs) {
    int K = ring.kept_count();
    ColIdx ncols = static_cast<ColIdx>(K) * ts.dim_cur;
    auto sym = [&](int g, int u) { return static_cast<ColIdx>(g) * ts.dim_cur + u; };

    std::vector<RatRow> rows = transfer_rows(ring, ts);
    RrefResult basis = rref(std::move(rows), ncols, arith, true, entry_cap, jobs);
    long long dim_next = static_cast<long long>(basis.nonpivots.size());

    TransferState out;
    out.dim_prev = ts.dim_cur;
    out.dim_cur = static_cast<int>(dim_next);
    if (dim_next > 0) {
        std::vector<int> ordinal(ncols, -1);
        for (size_t j = 0; j < basis.nonpivots.size(); ++j) ordinal[basis.nonpivots[j]] = (int)j;
        out.mult.assign(K, std::vector<RatRow>(out.dim_prev));
        for (int g = 0; g < K; ++g)
            for (int u = 0; u < out.dim_prev; ++u) {
                ColIdx col = sym(g, u);
                int pr = basis.pivot_row_of_col[col];
                RatRow coords;
                if (pr < 0) {
                    coords.emplace_back(ordinal[col], Rat(1));
                } else {
                    for (const auto& [c2, v2] : basis.tails[pr])
                        coords.emplace_back(ordinal[c2], -v2);
                }
                std::sort(coords.begin(), coords.end());
                out.mult[g][u] = std::move(coords);
            }
    }
    return {dim_next, std::move(out)};
}

}  // namespace

std::vector<long long> Engine::dims_until_zero(RingId ring, int n, const Rat& t, int degree_cap) {
    if (ring == RingId::T || ring == RingId::R || ring == RingId::OT)
        throw std::invalid_argument("dims_until_zero: ring has infinite top degree");
    auto red = reduced(ring, n, t);
    int K = red->kept_count();

    std::vector<long long> dims;
    std::shared_ptr<DegreeState> prev2, prev;
    std::optional<TransferState> ts;

    for (int degree = 0; degree <= degree_cap; ++degree) {
        long long dim = 0;
        if (!ts) {
            Int cols = count_monomials(K, degree, red->squarefree);
            // The transfer matrix is smaller but much denser and its exact
            // reconstruction carries larger numerators, so the full transfer
            // step is a last resort. A cheap mod-p probe of it certifies
            // vanishing pieces outright: full column rank over one prime
            // already pins the rational rank.
            bool macaulay_ok = degree <= mono::kMaxDegree &&
                               cols <= Int(static_cast<unsigned long>(opts_.macaulay_column_cap));
            bool probe_worthwhile =
                prev && prev2 &&
                (!macaulay_ok || int_of(static_cast<long long>(K) * prev->dim) * 6 < cols);
            if (probe_worthwhile) {
                TransferState probe = transfer_from_states(*red, *prev2, *prev);
                ColIdx tcols = static_cast<ColIdx>(K) * probe.dim_cur;
                auto rows = transfer_rows(*red, probe);
                if (rank_modp(rows, tcols, opts_.entry_cap) == tcols) return dims;
                if (!macaulay_ok) ts = std::move(probe);
            }
            if (!ts) {
                if (!macaulay_ok)
                    throw CellTooLarge("degree out of reach for both elimination routes");
                auto st = degree_state(*red, degree);
                dim = st->dim;
                prev2 = prev;
                prev = st;
            }
        }
        if (ts) {
            auto [d, next] = transfer_step(*red, *ts, opts_.arith, opts_.entry_cap, opts_.jobs);
            dim = d;
            ts = std::move(next);
        }
        if (dim == 0) return dims;
        dims.push_back(dim);
    }
    throw CellTooLarge("dims_until_zero: no zero piece by degree cap (non-generic sample?)");
}

long long Engine::deformed_total(int n, const Rat& t) {
    auto dims = dims_until_zero(RingId::Dt, n, t);
    long long total = 0;
    for (long long d : dims) total += d;
    return total;
}

std::optional<CellData> Engine::cache_load(RingId ring, int n, int degree) {
    if (opts_.cache_dir.empty()) return std::nullopt;
    fs::path dir(opts_.cache_dir);
    fs::path manifest = dir / "manifest.json";
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (!cache_ready_) {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (fs::exists(manifest)) {
                try {
                    std::ifstream in(manifest);
                    auto j = ordered_json::parse(in);
                    if (j.value("code_version", "") != kCodeVersion ||
                        j.value("monomial_order", "") != kMonomialOrderId) {
                        // foreign cache: ignore it entirely
                        opts_.cache_dir.clear();
                        return std::nullopt;
                    }
                } catch (...) {
                    opts_.cache_dir.clear();
                    return std::nullopt;
                }
            } else {
                ordered_json j{{"code_version", kCodeVersion},
                               {"monomial_order", kMonomialOrderId}};
                std::ofstream out(manifest);
                out << j.dump(2) << "\n";
            }
            cache_ready_ = true;
        }
    }
    fs::path file = dir / (ring_name(ring) + "_" + std::to_string(n) + "_" +
                           std::to_string(degree) + ".json");
    if (!fs::exists(file)) return std::nullopt;
    try {
        std::ifstream in(file);
        auto j = ordered_json::parse(in);
        CellData data;
        data.dimension = j.at("dimension").get<long long>();
        data.decomposition = decomposition_from_json(n, j.at("decomposition"));
        return data;
    } catch (...) {
        return std::nullopt;
    }
}

void Engine::cache_store(RingId ring, int n, int degree, const CellData& data) {
    if (opts_.cache_dir.empty() || !cache_ready_) return;
    fs::path dir(opts_.cache_dir);
    fs::path file = dir / (ring_name(ring) + "_" + std::to_string(n) + "_" +
                           std::to_string(degree) + ".json");
    ordered_json j{{"ring", ring_name(ring)},
                   {"n", n},
                   {"degree", degree},
                   {"dimension", data.dimension},
                   {"decomposition", decomposition_to_json(data.decomposition)}};
    fs::path tmp = file;
    tmp += ".tmp" + std::to_string(static_cast<unsigned long>(
               std::hash<std::thread::id>{}(std::this_thread::get_id()) & 0xffff));
    {
        std::ofstream out(tmp);
        out << j.dump(2) << "\n";
    }
    std::error_code ec;
    fs::rename(tmp, file, ec);
}

}  // namespace equilog
