#include "equilog/sparse.hpp"

#include "equilog/parallel.hpp"
#include <chrono>
#include <cstdlib>
#include <iostream>

#include <algorithm>
#include <map>
#include <queue>

namespace equilog {

namespace {

// Shared elimination engine. Field must provide value_type, zero/one tests,
// and the usual arithmetic. Rows are lazily kept fully reduced: a stored tail
// may go stale when later pivots appear, and is re-reduced on first use after
// that (generation stamps make the staleness check O(1) when nothing changed).
// This keeps reduction chains at final-density cost.
template <class Field>
class Eliminator {
  public:
    using V = typename Field::value_type;
    using Row = std::vector<std::pair<ColIdx, V>>;

    Eliminator(Field f, ColIdx ncols, size_t entry_cap)
        : fld_(f), ncols_(ncols), entry_cap_(entry_cap), acc_(ncols), stamp_(ncols, 0),
          acc2_(ncols), stamp2_(ncols, 0), inuse_(ncols, 0), inuse2_(ncols, 0),
          pivot_row_(ncols, -1) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    bool full_rank() const { return rank() == ncols_; }

    // Columns below this are walked by a plain linear scan of the dense
    // accumulator; above it the touched-column heap pays off.
    static constexpr ColIdx kScanCols = 65536;

    // Returns true when the row contributed a new pivot.
    bool insert(const Row& r) {
        if (ncols_ <= kScanCols) return insert_scan(r);
        ++epoch_;
        for (const auto& [c, v] : r) {
            if (fld_.is_zero(v)) continue;
            acc_[c] = v;
            stamp_[c] = epoch_;
            pq_.push(c);
        }
        while (!pq_.empty()) {
            ColIdx c = pq_.top();
            pq_.pop();
            if (stamp_[c] != epoch_) continue;
            stamp_[c] = 0;
            if (fld_.is_zero(acc_[c])) continue;
            V v = acc_[c];
            int pr = pivot_row_[c];
            if (pr < 0) {
                Row row;
                row.emplace_back(c, fld_.one());
                V vinv = fld_.inv(v);
                while (!pq_.empty()) {
                    ColIdx c2 = pq_.top();
                    pq_.pop();
                    if (stamp_[c2] != epoch_) continue;
                    stamp_[c2] = 0;
                    if (!fld_.is_zero(acc_[c2])) row.emplace_back(c2, fld_.mul(acc_[c2], vinv));
                }
                store_pivot(c, std::move(row));
                return true;
            }
            if (lazy_reduce_) reduce_row(pr);
            const Row& prow = rows_[pr];
            for (size_t k = 1; k < prow.size(); ++k) {
                ColIdx col = prow[k].first;
                V t = fld_.mul(v, prow[k].second);
                if (stamp_[col] != epoch_) {
                    stamp_[col] = epoch_;
                    acc_[col] = fld_.neg(t);
                    pq_.push(col);
                } else {
                    acc_[col] = fld_.sub(acc_[col], t);
                }
            }
        }
        return false;
    }

    void finalize() {
        for (size_t r = 0; r < rows_.size(); ++r) reduce_row(static_cast<int>(r));
    }

    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<int>& pivot_row_of_col() const { return pivot_row_; }

  private:
    void store_pivot(ColIdx c, Row row) {
        entries_ += row.size();
        if (entry_cap_ && entries_ > entry_cap_)
            throw CellTooLarge("echelon basis exceeded entry cap");
        pivot_row_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        clean_gen_.push_back(gen_);
        ++gen_;  // older tails holding column c are now stale
    }

    bool insert_scan(const Row& r) {
        ColIdx lo = ncols_;
        for (const auto& [c, v] : r) {
            if (fld_.is_zero(v)) continue;
            acc_[c] = v;
            inuse_[c] = 1;
            touched_.push_back(c);
            lo = std::min(lo, c);
        }
        bool made_pivot = false;
        for (ColIdx c = lo; c < ncols_; ++c) {
            if (!inuse_[c]) continue;
            inuse_[c] = 0;
            V v = acc_[c];
            if (fld_.is_zero(v)) continue;
            int pr = pivot_row_[c];
            if (pr < 0) {
                Row row;
                row.emplace_back(c, fld_.one());
                V vinv = fld_.inv(v);
                for (ColIdx c2 = c + 1; c2 < ncols_; ++c2) {
                    if (!inuse_[c2]) continue;
                    inuse_[c2] = 0;
                    if (!fld_.is_zero(acc_[c2])) row.emplace_back(c2, fld_.mul(acc_[c2], vinv));
                }
                store_pivot(c, std::move(row));
                made_pivot = true;
                break;
            }
            if (lazy_reduce_) reduce_row(pr);
            const Row& prow = rows_[pr];
            for (size_t k = 1; k < prow.size(); ++k) {
                ColIdx col = prow[k].first;
                V t = fld_.mul(v, prow[k].second);
                if (!inuse_[col]) {
                    inuse_[col] = 1;
                    touched_.push_back(col);
                    acc_[col] = fld_.neg(t);
                } else {
                    acc_[col] = fld_.sub(acc_[col], t);
                }
            }
        }
        for (ColIdx c : touched_) inuse_[c] = 0;
        touched_.clear();
        return made_pivot;
    }

    // Bring a stored row back to fully-reduced form (tail on non-pivot
    // columns only). Dependencies have strictly larger pivot columns, so the
    // dependency graph is acyclic; they are cleaned first via an explicit
    // stack, after which one accumulator pass suffices.
    void reduce_row(int start) {
        if (clean_gen_[start] == gen_) return;
        work_.clear();
        work_.push_back(start);
        while (!work_.empty()) {
            int r = work_.back();
            if (clean_gen_[r] == gen_) {
                work_.pop_back();
                continue;
            }
            Row& row = rows_[r];
            bool deps_pending = false;
            bool dirty = false;
            for (size_t k = 1; k < row.size(); ++k) {
                int pr = pivot_row_[row[k].first];
                if (pr < 0) continue;
                dirty = true;
                if (clean_gen_[pr] != gen_) {
                    work_.push_back(pr);
                    deps_pending = true;
                }
            }
            if (deps_pending) continue;
            if (!dirty) {
                clean_gen_[r] = gen_;
                work_.pop_back();
                continue;
            }
            Row out;
            out.push_back(row[0]);
            if (ncols_ <= kScanCols) {
                ColIdx lo = ncols_;
                for (size_t k = 1; k < row.size(); ++k) {
                    if (fld_.is_zero(row[k].second)) continue;
                    acc2_[row[k].first] = row[k].second;
                    inuse2_[row[k].first] = 1;
                    lo = std::min(lo, row[k].first);
                }
                for (ColIdx c = lo; c < ncols_; ++c) {
                    if (!inuse2_[c]) continue;
                    inuse2_[c] = 0;
                    V v = acc2_[c];
                    if (fld_.is_zero(v)) continue;
                    int pr = pivot_row_[c];
                    if (pr < 0) {
                        out.emplace_back(c, v);
                        continue;
                    }
                    const Row& prow = rows_[pr];
                    for (size_t t = 1; t < prow.size(); ++t) {
                        ColIdx col = prow[t].first;
                        V w = fld_.mul(v, prow[t].second);
                        if (!inuse2_[col]) {
                            inuse2_[col] = 1;
                            acc2_[col] = fld_.neg(w);
                        } else {
                            acc2_[col] = fld_.sub(acc2_[col], w);
                        }
                    }
                }
            } else {
                ++epoch2_;
                for (size_t k = 1; k < row.size(); ++k) {
                    if (fld_.is_zero(row[k].second)) continue;
                    acc2_[row[k].first] = row[k].second;
                    stamp2_[row[k].first] = epoch2_;
                    pq2_.push(row[k].first);
                }
                while (!pq2_.empty()) {
                    ColIdx c = pq2_.top();
                    pq2_.pop();
                    if (stamp2_[c] != epoch2_) continue;
                    stamp2_[c] = 0;
                    V v = acc2_[c];
                    if (fld_.is_zero(v)) continue;
                    int pr = pivot_row_[c];
                    if (pr < 0) {
                        out.emplace_back(c, v);
                        continue;
                    }
                    // pr is clean: its tail touches non-pivot columns only
                    const Row& prow = rows_[pr];
                    for (size_t t = 1; t < prow.size(); ++t) {
                        ColIdx col = prow[t].first;
                        V w = fld_.mul(v, prow[t].second);
                        if (stamp2_[col] != epoch2_) {
                            stamp2_[col] = epoch2_;
                            acc2_[col] = fld_.neg(w);
                            pq2_.push(col);
                        } else {
                            acc2_[col] = fld_.sub(acc2_[col], w);
                        }
                    }
                }
            }
            entries_ -= row.size();
            entries_ += out.size();
            if (entry_cap_ && entries_ > entry_cap_)
                throw CellTooLarge("echelon basis exceeded entry cap");
            row = std::move(out);
            clean_gen_[r] = gen_;
            work_.pop_back();
        }
    }

    Field fld_;
    ColIdx ncols_;
    size_t entry_cap_;
    size_t entries_ = 0;
    std::vector<V> acc_;
    std::vector<uint32_t> stamp_;
    uint32_t epoch_ = 0;
    std::priority_queue<ColIdx, std::vector<ColIdx>, std::greater<ColIdx>> pq_;
    std::vector<V> acc2_;
    std::vector<uint32_t> stamp2_;
    uint32_t epoch2_ = 0;
    std::priority_queue<ColIdx, std::vector<ColIdx>, std::greater<ColIdx>> pq2_;
    std::vector<char> inuse_, inuse2_;
    std::vector<ColIdx> touched_;
    std::vector<int> pivot_row_;
    std::vector<Row> rows_;
    std::vector<uint64_t> clean_gen_;
    uint64_t gen_ = 0;
    std::vector<int> work_;

  public:
    bool lazy_reduce_ = true;
};

struct RatField {
    using value_type = Rat;
    bool is_zero(const Rat& v) const { return v == 0; }
    Rat one() const { return Rat(1); }
    Rat inv(const Rat& v) const { return Rat(1) / v; }
    Rat mul(const Rat& a, const Rat& b) const { return a * b; }
    Rat sub(const Rat& a, const Rat& b) const { return a - b; }
    Rat neg(const Rat& a) const { return -a; }
};

struct ZpField {
    unsigned long p;
    using value_type = uint32_t;
    bool is_zero(uint32_t v) const { return v == 0; }
    uint32_t one() const { return 1; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + (uint32_t)p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : (uint32_t)p - a; }
    uint32_t inv(uint32_t a) const {
        // extended Euclid
        int64_t t = 0, newt = 1;
        int64_t r = (int64_t)p, newr = a;
        while (newr != 0) {
            int64_t q = r / newr;
            std::swap(t -= q * newt, newt);
            std::swap(r -= q * newr, newr);
        }
        if (t < 0) t += (int64_t)p;
        return (uint32_t)t;
    }
};

// Sparse rows first so the staircase pivots are in place before any dense
// row walks them; ties by leading column for determinism of the path (the
// resulting reduced echelon is unique regardless).
template <class Field>
void sort_rows_for_insert(std::vector<std::vector<std::pair<ColIdx, typename Field::value_type>>>& rows) {
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        if (a.empty()) return false;
        if (a[0].first != b[0].first) return a[0].first < b[0].first;
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
    });
}

}  // namespace

const Rat* RrefResult::tail_entry(int row, ColIdx col) const {
    const RatRow& t = tails[row];
    auto it = std::lower_bound(t.begin(), t.end(), col,
                               [](const auto& e, ColIdx c) { return e.first < c; });
    if (it == t.end() || it->first != col) return nullptr;
    return &it->second;
}

void RrefResult::build_index() {
    pivot_row_of_col.assign(ncols, -1);
    for (size_t i = 0; i < pivots.size(); ++i) pivot_row_of_col[pivots[i]] = static_cast<int>(i);
    nonpivots.clear();
    for (ColIdx c = 0; c < ncols; ++c)
        if (pivot_row_of_col[c] < 0) nonpivots.push_back(c);
}

RatRow normal_form(const RrefResult& basis, const RatRow& v) {
    std::map<ColIdx, Rat> acc;
    for (const auto& [c, val] : v) {
        if (val == 0) continue;
        int pr = basis.ncols ? basis.pivot_row_of_col[c] : -1;
        if (pr < 0) {
            acc[c] += val;
        } else {
            for (const auto& [tc, tv] : basis.tails[pr]) acc[tc] -= val * tv;
        }
    }
    RatRow out;
    for (auto& [c, val] : acc)
        if (val != 0) out.emplace_back(c, std::move(val));
    return out;
}

RrefResult rref_rational(std::vector<RatRow> rows, ColIdx ncols, size_t entry_cap) {
    sort_rows_for_insert<RatField>(rows);
    Eliminator<RatField> elim(RatField{}, ncols, entry_cap);
    elim.lazy_reduce_ = std::getenv("EQUILOG_NOLAZY") == nullptr;
    for (auto& r : rows) {
        elim.insert(r);
        if (elim.full_rank()) break;
    }
    elim.finalize();
    RrefResult out;
    out.ncols = ncols;
    std::vector<int> order;
    for (size_t i = 0; i < elim.rows().size(); ++i) order.push_back((int)i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return elim.rows()[a][0].first < elim.rows()[b][0].first;
    });
    for (int i : order) {
        const auto& row = elim.rows()[i];
        out.pivots.push_back(row[0].first);
        RatRow tail(row.begin() + 1, row.end());
        out.tails.push_back(std::move(tail));
    }
    out.build_index();
    return out;
}

const std::vector<unsigned long>& modular_primes() {
    static std::vector<unsigned long> primes = [] {
        std::vector<unsigned long> out;
        Int p = (Int(1) << 31) - 1;
        while (out.size() < 40) {
            if (mpz_probab_prime_p(p.get_mpz_t(), 30)) out.push_back(p.get_ui());
            p -= 2;
        }
        return out;
    }();
    return primes;
}

namespace {

struct ModpRref {
    std::vector<ColIdx> pivots;
    std::vector<std::vector<std::pair<ColIdx, uint32_t>>> tails;  // aligned with pivots
};

// Rows scaled to integer content first; entries then reduced mod p.
std::vector<std::vector<std::pair<ColIdx, Int>>> integerize(const std::vector<RatRow>& rows) {
    std::vector<std::vector<std::pair<ColIdx, Int>>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        Int lcm = 1;
        for (const auto& [c, v] : r) {
            Int den = v.get_den();
            lcm = lcm / gcd(lcm, den) * den;
        }
        std::vector<std::pair<ColIdx, Int>> row;
        row.reserve(r.size());
        Int content = 0;
        for (const auto& [c, v] : r) {
            Int num = v.get_num() * (lcm / v.get_den());
            if (num == 0) continue;
            content = gcd(content, num);
            row.emplace_back(c, std::move(num));
        }
        if (!row.empty() && content > 1)
            for (auto& [c, v] : row) v /= content;
        out.push_back(std::move(row));
    }
    return out;
}

ModpRref rref_modp(const std::vector<std::vector<std::pair<ColIdx, Int>>>& irows, ColIdx ncols,
                   unsigned long p, size_t entry_cap) {
    ZpField f{p};
    std::vector<std::vector<std::pair<ColIdx, uint32_t>>> rows;
    rows.reserve(irows.size());
    for (const auto& r : irows) {
        std::vector<std::pair<ColIdx, uint32_t>> row;
        row.reserve(r.size());
        for (const auto& [c, v] : r) {
            uint32_t m = (uint32_t)mpz_fdiv_ui(v.get_mpz_t(), p);
            if (m) row.emplace_back(c, m);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    sort_rows_for_insert<ZpField>(rows);
    Eliminator<ZpField> elim(f, ncols, entry_cap);
    elim.lazy_reduce_ = std::getenv("EQUILOG_NOLAZY") == nullptr;
    for (auto& r : rows) {
        elim.insert(r);
        if (elim.full_rank()) break;
    }
    elim.finalize();
    ModpRref out;
    std::vector<int> order;
    for (size_t i = 0; i < elim.rows().size(); ++i) order.push_back((int)i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return elim.rows()[a][0].first < elim.rows()[b][0].first;
    });
    for (int i : order) {
        const auto& row = elim.rows()[i];
        out.pivots.push_back(row[0].first);
        out.tails.emplace_back(row.begin() + 1, row.end());
    }
    return out;
}

// Parallel exact check that every row lies in the span of the basis, with a
// dense per-thread accumulator.
bool verify_exact(const RrefResult& basis, const std::vector<RatRow>& rows, int jobs) {
    std::atomic<bool> ok{true};
    int nthreads = std::max(1, std::min<int>(jobs, 8));
    std::vector<std::thread> threads;
    auto run = [&](int tid) {
        std::vector<Rat> acc(basis.ncols);
        std::vector<char> used(basis.ncols, 0);
        std::vector<ColIdx> touched;
        for (size_t i = tid; i < rows.size() && ok.load(); i += nthreads) {
            touched.clear();
            for (const auto& [c, v] : rows[i]) {
                int pr = basis.pivot_row_of_col[c];
                if (pr < 0) {
                    if (!used[c]) {
                        used[c] = 1;
                        touched.push_back(c);
                        acc[c] = v;
                    } else {
                        acc[c] += v;
                    }
                } else {
                    for (const auto& [tc, tv] : basis.tails[pr]) {
                        Rat w = v * tv;
                        if (!used[tc]) {
                            used[tc] = 1;
                            touched.push_back(tc);
                            acc[tc] = -w;
                        } else {
                            acc[tc] -= w;
                        }
                    }
                }
            }
            for (ColIdx c : touched) {
                if (acc[c] != 0) ok.store(false);
                used[c] = 0;
            }
        }
    };
    if (nthreads == 1) {
        run(0);
    } else {
        for (int t = 0; t < nthreads; ++t) threads.emplace_back(run, t);
        for (auto& t : threads) t.join();
    }
    return ok.load();
}

}  // namespace

namespace {
struct PhaseTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long take() {
        auto now = std::chrono::steady_clock::now();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - start).count();
        start = now;
        return ms;
    }
};
bool sparse_progress() {
    static bool on = std::getenv("EQUILOG_PROGRESS") != nullptr;
    return on;
}
}  // namespace

RrefResult rref_multimodular(const std::vector<RatRow>& rows, ColIdx ncols, bool dims_only,
                             size_t entry_cap, int jobs) {
    PhaseTimer timer;
    auto irows = integerize(rows);
    const auto& primes = modular_primes();

    std::vector<unsigned long> used;
    std::vector<ModpRref> results;
    size_t pi = 0;
    auto run_primes = [&](size_t count) {
        size_t base = results.size();
        count = std::min(count, primes.size() - pi);
        results.resize(base + count);
        parallel_for(count, jobs, [&](size_t k) {
            results[base + k] = rref_modp(irows, ncols, primes[pi + k], entry_cap);
        });
        for (size_t k = 0; k < count; ++k) used.push_back(primes[pi + k]);
        pi += count;
        if (sparse_progress())
            std::cerr << "[rref] " << count << " prime(s) eliminated in " << timer.take()
                      << " ms, rank " << results.back().pivots.size() << "/" << ncols << "\n";
    };

    run_primes(static_cast<size_t>(std::max(1, std::min(jobs, 2))));
    // Full column rank mod p already certifies the rational rank: it cannot
    // drop mod p and cannot exceed the column count.
    if ((ColIdx)results[0].pivots.size() == ncols) {
        RrefResult out;
        out.ncols = ncols;
        out.pivots = results[0].pivots;
        out.tails.assign(ncols, {});
        out.build_index();
        return out;
    }
    (void)dims_only;
    if (results.size() < 2) run_primes(1);

    for (int attempt = 0; attempt < 12; ++attempt) {
        // consensus profile: the one with maximal rank
        size_t best = 0;
        for (size_t i = 1; i < results.size(); ++i)
            if (results[i].pivots.size() > results[best].pivots.size()) best = i;
        std::vector<size_t> agree;
        for (size_t i = 0; i < results.size(); ++i)
            if (results[i].pivots == results[best].pivots) agree.push_back(i);

        if (agree.size() >= 2 || results[best].pivots.empty()) {
            // CRT + rational reconstruction over the agreeing primes
            Int modulus = 1;
            for (size_t i : agree) modulus *= Int((unsigned long)used[i]);
            RrefResult cand;
            cand.ncols = ncols;
            cand.pivots = results[best].pivots;
            cand.tails.resize(cand.pivots.size());
            std::atomic<bool> ok{true};
            parallel_for(cand.pivots.size(), jobs, [&](size_t r) {
                if (!ok.load()) return;
                std::map<ColIdx, std::vector<std::pair<unsigned long, unsigned long>>> merged;
                for (size_t i : agree)
                    for (const auto& [c, v] : results[i].tails[r])
                        merged[c].emplace_back(used[i], v);
                RatRow tail;
                for (auto& [c, residues] : merged) {
                    Int x = 0, m = 1;
                    for (size_t i : agree) {
                        unsigned long rv = 0;
                        for (auto& [pp, vv] : residues)
                            if (pp == used[i]) rv = vv;
                        x = crt_pair(x, m, rv, used[i]);
                        m *= Int(used[i]);
                    }
                    auto rec = rational_reconstruct(x, modulus);
                    if (!rec) {
                        ok.store(false);
                        return;
                    }
                    if (*rec != 0) tail.emplace_back(c, std::move(*rec));
                }
                cand.tails[r] = std::move(tail);
            });
            if (ok.load()) {
                cand.build_index();
                if (sparse_progress())
                    std::cerr << "[rref] reconstruct " << timer.take() << " ms\n";
                bool verified = verify_exact(cand, rows, jobs);
                if (sparse_progress())
                    std::cerr << "[rref] verify " << timer.take() << " ms ("
                              << (verified ? "ok" : "failed") << ")\n";
                if (verified) return cand;
            } else if (sparse_progress()) {
                std::cerr << "[rref] reconstruction needs more primes (" << timer.take()
                          << " ms)\n";
            }
        }
        if (pi >= primes.size()) break;
        run_primes(std::max(1, std::min(jobs, 2)));
    }
    throw std::runtime_error("rref_multimodular: reconstruction failed to stabilize");
}

RrefResult rref(std::vector<RatRow> rows, ColIdx ncols, ArithMode mode, bool dims_only,
                size_t entry_cap, int jobs) {
    if (mode == ArithMode::Rational) return rref_rational(std::move(rows), ncols, entry_cap);
    return rref_multimodular(rows, ncols, dims_only, entry_cap, jobs);
}

int rank_modp(const std::vector<RatRow>& rows, ColIdx ncols, size_t entry_cap) {
    auto irows = integerize(rows);
    ModpRref r = rref_modp(irows, ncols, modular_primes()[0], entry_cap);
    return static_cast<int>(r.pivots.size());
}

}  // namespace equilog
