#include "equilog/characters.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace equilog {

ClassFunction::ClassFunction(int n_) : n(n_), values(partitions(n_).size(), Rat(0)) {}

namespace {

struct ClassIndex {
    std::vector<Partition> classes;
    std::unordered_map<Partition, int, PartitionHash> idx;
};

const ClassIndex& class_index(int n) {
    static std::mutex mu;
    static std::unordered_map<int, std::unique_ptr<ClassIndex>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(n);
    if (it == tables.end()) {
        auto ci = std::make_unique<ClassIndex>();
        ci->classes = partitions(n);
        for (size_t i = 0; i < ci->classes.size(); ++i) ci->idx.emplace(ci->classes[i], (int)i);
        it = tables.emplace(n, std::move(ci)).first;
    }
    return *it->second;
}

int class_index_of(int n, const Partition& mu) {
    const auto& ci = class_index(n);
    auto it = ci.idx.find(mu);
    if (it == ci.idx.end()) throw std::invalid_argument("not a partition of " + std::to_string(n));
    return it->second;
}

// Murnaghan-Nakayama with memo over (lambda, mu-suffix). Beta-number encoding:
// removing a border strip of length k moves one beta value down by k.
struct MnKey {
    std::vector<int> lam;
    std::vector<int> mu;
    bool operator==(const MnKey&) const = default;
};
struct MnKeyHash {
    size_t operator()(const MnKey& k) const {
        size_t h = 1469598103934665603ull;
        for (int v : k.lam) h = (h ^ (size_t)(v + 1)) * 1099511628211ull;
        h = (h ^ 0xffu) * 1099511628211ull;
        for (int v : k.mu) h = (h ^ (size_t)(v + 1)) * 1099511628211ull;
        return h;
    }
};

long long mn_rec(const std::vector<int>& lam, const std::vector<int>& mu, size_t mu_pos,
                 std::unordered_map<MnKey, long long, MnKeyHash>& memo) {
    if (lam.empty()) return 1;
    MnKey key{lam, std::vector<int>(mu.begin() + mu_pos, mu.end())};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    int k = mu[mu_pos];  // largest remaining cycle
    int L = (int)lam.size();
    std::vector<int> beta(L);
    for (int i = 0; i < L; ++i) beta[i] = lam[i] + (L - 1 - i);  // strictly decreasing

    long long total = 0;
    for (int i = 0; i < L; ++i) {
        int b = beta[i] - k;
        if (b < 0) continue;
        if (std::find(beta.begin(), beta.end(), b) != beta.end()) continue;
        int crossed = 0;  // beta values strictly between b and beta[i]
        for (int j = 0; j < L; ++j)
            if (j != i && beta[j] > b && beta[j] < beta[i]) ++crossed;
        std::vector<int> nb = beta;
        nb[i] = b;
        std::sort(nb.rbegin(), nb.rend());
        std::vector<int> nl(L);
        for (int j = 0; j < L; ++j) nl[j] = nb[j] - (L - 1 - j);
        while (!nl.empty() && nl.back() == 0) nl.pop_back();
        long long sub = mn_rec(nl, mu, mu_pos + 1, memo);
        total += (crossed % 2 ? -sub : sub);
    }
    memo.emplace(std::move(key), total);
    return total;
}

std::unordered_map<MnKey, long long, MnKeyHash>& mn_memo() {
    static std::unordered_map<MnKey, long long, MnKeyHash> memo;
    return memo;
}
std::mutex& mn_mutex() {
    static std::mutex mu;
    return mu;
}

}  // namespace

long long character_value(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) throw SizeMismatch("character_value: |lambda| != |mu|");
    std::lock_guard<std::mutex> lock(mn_mutex());
    return mn_rec(lambda.parts, mu.parts, 0, mn_memo());
}

long long dimension(const Partition& lambda) {
    int n = lambda.size();
    if (n == 0) return 1;
    Int prod = 1;
    int L = lambda.length();
    std::vector<int> conj(lambda.parts[0], 0);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < lambda.parts[i]; ++j) ++conj[j];
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < lambda.parts[i]; ++j) {
            int hook = (lambda.parts[i] - j) + (conj[j] - i) - 1;
            prod *= hook;
        }
    return to_ll(factorial(n) / prod);
}

CharTable::CharTable(int n) : n_(n) {
    classes_ = partitions(n);
    size_t m = classes_.size();
    chi_.assign(m, std::vector<long long>(m, 0));
    std::lock_guard<std::mutex> lock(mn_mutex());
    for (size_t l = 0; l < m; ++l)
        for (size_t c = 0; c < m; ++c)
            chi_[l][c] = mn_rec(classes_[l].parts, classes_[c].parts, 0, mn_memo());
}

const CharTable& CharTable::of(int n) {
    static std::mutex mu;
    static std::unordered_map<int, std::unique_ptr<CharTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(n);
    if (it == tables.end())
        it = tables.emplace(n, std::unique_ptr<CharTable>(new CharTable(n))).first;
    return *it->second;
}

int CharTable::index(const Partition& p) const { return class_index_of(n_, p); }

Rat& ClassFunction::at(const Partition& mu) { return values[class_index_of(n, mu)]; }
const Rat& ClassFunction::at(const Partition& mu) const { return values[class_index_of(n, mu)]; }

long long IrrDecomposition::multiplicity(const Partition& lambda) const {
    auto it = mult.find(lambda);
    return it == mult.end() ? 0 : it->second;
}

void IrrDecomposition::add(const Partition& lambda, long long count) {
    if (count == 0) return;
    auto [it, inserted] = mult.emplace(lambda, count);
    if (!inserted) {
        it->second += count;
        if (it->second == 0) mult.erase(it);
    }
}

Int IrrDecomposition::dim() const {
    Int d = 0;
    for (const auto& [la, m] : mult) d += int_of(dimension(la)) * int_of(m);
    return d;
}

Rat inner_product(const ClassFunction& f, const ClassFunction& g) {
    if (f.n != g.n) throw SizeMismatch("inner_product: group sizes differ");
    const auto& classes = class_index(f.n).classes;
    Rat acc = 0;
    for (size_t i = 0; i < classes.size(); ++i) {
        Rat term = f.values[i] * g.values[i];
        term *= Rat(class_size(classes[i]));
        acc += term;
    }
    acc /= Rat(factorial(f.n));
    return acc;
}

ClassFunction to_class_function(const IrrDecomposition& a) {
    ClassFunction f(a.n);
    const CharTable& t = CharTable::of(a.n);
    for (const auto& [la, m] : a.mult) {
        int li = t.index(la);
        for (size_t c = 0; c < f.values.size(); ++c)
            f.values[c] += Rat(int_of(m) * int_of(t.value(li, (int)c)));
    }
    return f;
}

IrrDecomposition decompose(const ClassFunction& f, bool honest) {
    const CharTable& t = CharTable::of(f.n);
    const auto& classes = t.classes();
    Int nfact = factorial(f.n);
    std::vector<Int> sizes(classes.size());
    for (size_t i = 0; i < classes.size(); ++i) sizes[i] = class_size(classes[i]);

    IrrDecomposition out(f.n);
    for (size_t l = 0; l < classes.size(); ++l) {
        Rat acc = 0;
        for (size_t c = 0; c < classes.size(); ++c) {
            if (f.values[c] == 0) continue;
            Rat term = f.values[c] * Rat(sizes[c] * int_of(t.value((int)l, (int)c)));
            acc += term;
        }
        acc /= Rat(nfact);
        if (acc == 0) continue;
        if (honest) {
            if (!is_integer(acc))
                throw NonIntegralMultiplicity("decompose: <f, chi^" + classes[l].str() +
                                              "> = " + acc.get_str());
            if (acc < 0)
                throw NegativeMultiplicity("decompose: <f, chi^" + classes[l].str() +
                                           "> = " + acc.get_str());
        }
        out.add(classes[l], to_ll(acc.get_num()));
    }
    return out;
}

IrrDecomposition kronecker(const IrrDecomposition& a, const IrrDecomposition& b) {
    if (a.n != b.n) throw SizeMismatch("kronecker: group sizes differ");
    if (a.is_zero() || b.is_zero()) return IrrDecomposition(a.n);
    ClassFunction fa = to_class_function(a), fb = to_class_function(b);
    ClassFunction prod(a.n);
    for (size_t i = 0; i < prod.values.size(); ++i) prod.values[i] = fa.values[i] * fb.values[i];
    return decompose(prod, true);
}

IrrDecomposition restrict_rep(const IrrDecomposition& a) {
    if (a.n < 1) throw SizeMismatch("restrict_rep: n must be >= 1");
    IrrDecomposition out(a.n - 1);
    for (const auto& [la, m] : a.mult) {
        int L = la.length();
        for (int i = 0; i < L; ++i) {
            // removable box at row i
            if (i + 1 < L && la.parts[i] == la.parts[i + 1]) continue;
            std::vector<int> p = la.parts;
            if (--p[i] == 0) p.erase(p.begin() + i);
            out.add(Partition(std::move(p)), m);
        }
    }
    return out;
}

}  // namespace equilog
