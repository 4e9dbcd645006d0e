#include "equilog/gradedrep.hpp"

#include <mutex>

namespace equilog {

namespace {
Partition trivial_partition(int n) {
    return n == 0 ? Partition() : Partition(std::vector<int>{n});
}

const IrrDecomposition& zero_rep(int n) {
    static std::mutex mu;
    static std::map<int, IrrDecomposition> zeros;
    std::lock_guard<std::mutex> lock(mu);
    auto it = zeros.find(n);
    if (it == zeros.end()) it = zeros.emplace(n, IrrDecomposition(n)).first;
    return it->second;
}
}  // namespace

int GradedRep::top() const {
    int t = -1;
    for (const auto& [d, p] : pieces)
        if (!p.is_zero()) t = std::max(t, d);
    return t;
}

const IrrDecomposition& GradedRep::piece(int degree) const {
    auto it = pieces.find(degree);
    if (it == pieces.end()) return zero_rep(n);
    return it->second;
}

void GradedRep::set_piece(int degree, IrrDecomposition d) {
    if (d.n != n) throw SizeMismatch("GradedRep::set_piece: group size differs");
    if (d.is_zero())
        pieces.erase(degree);
    else
        pieces[degree] = std::move(d);
}

GradedRep graded_tensor(const GradedRep& v, const GradedRep& w) {
    if (v.n != w.n) throw SizeMismatch("graded_tensor: group sizes differ");
    GradedRep out(v.n);
    for (const auto& [dv, pv] : v.pieces) {
        if (pv.is_zero()) continue;
        for (const auto& [dw, pw] : w.pieces) {
            if (pw.is_zero()) continue;
            IrrDecomposition prod = kronecker(pv, pw);
            auto it = out.pieces.find(dv + dw);
            if (it == out.pieces.end())
                out.pieces.emplace(dv + dw, std::move(prod));
            else
                for (const auto& [la, m] : prod.mult) it->second.add(la, m);
        }
    }
    for (auto it = out.pieces.begin(); it != out.pieces.end();)
        it = it->second.is_zero() ? out.pieces.erase(it) : std::next(it);
    return out;
}

std::optional<SubrepWitness> subrep_violation(const IrrDecomposition& a,
                                              const IrrDecomposition& b) {
    if (a.n != b.n) throw SizeMismatch("subrep_violation: group sizes differ");
    for (const auto& [la, m] : a.mult) {
        long long mb = b.multiplicity(la);
        if (m > mb) return SubrepWitness{la, m, mb};
    }
    return std::nullopt;
}

bool is_subrep(const IrrDecomposition& a, const IrrDecomposition& b) {
    return !subrep_violation(a, b).has_value();
}

ElcVerdict check_strong_elc(const GradedRep& v, int m) {
    ElcVerdict verdict;
    verdict.m = m;
    for (int i = 0; i + 1 <= m - (i + 1); ++i) {
        ChainLink link;
        link.i = i;
        link.l = m - i;
        link.j = i + 1;
        link.k = m - i - 1;
        IrrDecomposition left = kronecker(v.piece(link.i), v.piece(link.l));
        IrrDecomposition right = kronecker(v.piece(link.j), v.piece(link.k));
        link.witness = subrep_violation(left, right);
        link.holds = !link.witness.has_value();
        if (!link.holds && !verdict.witness) verdict.witness = link.witness;
        verdict.holds = verdict.holds && link.holds;
        verdict.links.push_back(std::move(link));
    }
    return verdict;
}

ElcVerdict check_strong_elc_quadruples(const GradedRep& v, int m) {
    ElcVerdict verdict;
    verdict.m = m;
    for (int i = 0; 2 * i <= m; ++i)
        for (int j = i; 2 * j <= m; ++j) {
            int l = m - i, k = m - j;
            if (j > k || k > l) continue;
            ChainLink link{i, l, j, k, true, std::nullopt};
            IrrDecomposition left = kronecker(v.piece(i), v.piece(l));
            IrrDecomposition right = kronecker(v.piece(j), v.piece(k));
            link.witness = subrep_violation(left, right);
            link.holds = !link.witness.has_value();
            if (!link.holds && !verdict.witness) verdict.witness = link.witness;
            verdict.holds = verdict.holds && link.holds;
            verdict.links.push_back(std::move(link));
        }
    return verdict;
}

std::vector<WeakElcVerdict> check_weak_elc(const GradedRep& v) {
    std::vector<WeakElcVerdict> out;
    for (int i = 1; i <= v.top(); ++i) {
        WeakElcVerdict w;
        w.i = i;
        IrrDecomposition left = kronecker(v.piece(i - 1), v.piece(i + 1));
        IrrDecomposition right = kronecker(v.piece(i), v.piece(i));
        w.witness = subrep_violation(left, right);
        w.holds = !w.witness.has_value();
        out.push_back(std::move(w));
    }
    return out;
}

GradedRep e_rep(int n) {
    GradedRep out(n);
    IrrDecomposition triv(n);
    triv.add(trivial_partition(n), 1);
    out.set_piece(0, triv);
    out.set_piece(1, triv);
    return out;
}

GradedRep w_rep(int n) {
    GradedRep out(n);
    IrrDecomposition triv(n);
    triv.add(trivial_partition(n), 1);
    out.set_piece(0, triv);
    if (n >= 2) {
        IrrDecomposition std_rep(n);
        std_rep.add(Partition(std::vector<int>{n - 1, 1}), 1);
        out.set_piece(1, std_rep);
    }
    return out;
}

}  // namespace equilog
