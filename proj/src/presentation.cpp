#include "equilog/presentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace equilog {

std::string ring_name(RingId id) {
    switch (id) {
        case RingId::A: return "A";
        case RingId::B: return "B";
        case RingId::C: return "C";
        case RingId::Dx: return "D";
        case RingId::Dh: return "D_h";
        case RingId::T: return "T";
        case RingId::R: return "R";
        case RingId::OT: return "OT";
        case RingId::M: return "M";
        case RingId::Dt: return "D_t";
        case RingId::AOT: return "AOT";
    }
    return "?";
}

RingId parse_ring(const std::string& name) {
    if (name == "A") return RingId::A;
    if (name == "B") return RingId::B;
    if (name == "C") return RingId::C;
    if (name == "D" || name == "D_x") return RingId::Dx;
    if (name == "D_h") return RingId::Dh;
    if (name == "T") return RingId::T;
    if (name == "R") return RingId::R;
    if (name == "OT") return RingId::OT;
    if (name == "M") return RingId::M;
    if (name == "D_t") return RingId::Dt;
    if (name == "AOT") return RingId::AOT;
    throw std::invalid_argument("unknown ring id: " + name);
}

namespace mono {

MulResult mul(uint64_t a, uint64_t b, AlgebraKind kind, bool squarefree) {
    if (a == kOne) return {1, b};
    if (b == kOne) return {1, a};
    std::array<uint8_t, 8> ga{}, gb{}, out{};
    int da = unpack(a, ga), db = unpack(b, gb);
    if (da + db > kMaxDegree) throw CellTooLarge("monomial degree exceeds packing limit");
    int i = 0, j = 0, k = 0;
    int inversions = 0;
    while (i < da && j < db) {
        if (ga[i] < gb[j]) {
            out[k++] = ga[i++];
        } else if (ga[i] > gb[j]) {
            inversions += da - i;
            out[k++] = gb[j++];
        } else {
            if (kind == AlgebraKind::Exterior || squarefree) return {0, 0};
            out[k++] = ga[i++];
            out[k++] = gb[j++];
        }
    }
    while (i < da) out[k++] = ga[i++];
    while (j < db) out[k++] = gb[j++];
    int sign = 1;
    if (kind == AlgebraKind::Exterior && (inversions & 1)) sign = -1;
    return {sign, pack(out.data(), k)};
}

}  // namespace mono

void poly_add(Poly& p, uint64_t m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

Poly poly_mul(const Poly& a, const Poly& b, AlgebraKind kind, bool squarefree) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            auto r = mono::mul(ma, mb, kind, squarefree);
            if (r.sign == 0) continue;
            Rat c = ca * cb;
            if (r.sign < 0) c = -c;
            poly_add(out, r.m, c);
        }
    return out;
}

int RingPresentation::gen_id(std::array<int, 3> label) const {
    auto it = std::lower_bound(gens.begin(), gens.end(), label);
    if (it == gens.end() || *it != label)
        throw std::invalid_argument("unknown generator label");
    return static_cast<int>(it - gens.begin());
}

std::pair<int, int> RingPresentation::canon(std::array<int, 3> raw) const {
    int sign = 1;
    if (arity == 2) {
        if (raw[0] > raw[1]) {
            std::swap(raw[0], raw[1]);
            sign = swap_sign;
        }
    } else if (arity == 3) {
        // bubble sort, alternating sign per transposition
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k + 1 < 3 - pass; ++k)
                if (raw[k] > raw[k + 1]) {
                    std::swap(raw[k], raw[k + 1]);
                    sign = -sign;
                }
    }
    return {sign, gen_id(raw)};
}

namespace {

// raw product of two generator labels with canonicalization and the ring's
// monomial arithmetic
void add_raw_quadratic_term(const RingPresentation& p, Poly& poly, std::array<int, 3> g1,
                            std::array<int, 3> g2, const Rat& coeff) {
    auto [s1, id1] = p.canon(g1);
    auto [s2, id2] = p.canon(g2);
    auto r = mono::mul(mono::single(id1), mono::single(id2), p.kind, false);
    if (r.sign == 0) return;
    poly_add(poly, r.m, coeff * s1 * s2 * r.sign);
}

void add_raw_linear_term(const RingPresentation& p, Poly& poly, std::array<int, 3> g,
                         const Rat& coeff) {
    auto [s, id] = p.canon(g);
    poly_add(poly, mono::single(id), coeff * s);
}

}  // namespace

RingPresentation build_ring(RingId id, int n, const Rat& t) {
    if (n < 1) throw std::invalid_argument("build_ring: n must be >= 1");
    if (id == RingId::Dt && (t == 0 || t == 1)) {
        // still a valid presentation; callers sampling generic t avoid these
    }
    RingPresentation p;
    p.id = id;
    p.n = n;
    p.t = t;

    switch (id) {
        case RingId::A:
        case RingId::B:
            p.kind = AlgebraKind::Exterior;
            p.arity = 2;
            p.swap_sign = 1;
            break;
        case RingId::C:
        case RingId::Dx:
        case RingId::OT:
        case RingId::M:
        case RingId::Dt:
        case RingId::AOT:
            p.kind = AlgebraKind::Polynomial;
            p.arity = 2;
            p.swap_sign = -1;
            break;
        case RingId::Dh:
            p.kind = AlgebraKind::Polynomial;
            p.arity = 3;
            break;
        case RingId::T:
        case RingId::R:
            p.kind = AlgebraKind::Polynomial;
            p.arity = 1;
            break;
    }

    if (p.arity == 1) {
        for (int i = 1; i <= n; ++i) p.gens.push_back({i, 0, 0});
    } else if (p.arity == 2) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) p.gens.push_back({i, j, 0});
    } else {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k) p.gens.push_back({i, j, k});
    }
    if (p.gen_count() > 254) throw CellTooLarge("generator count exceeds packing limit");

    auto three_term = [&](int i, int j, int k) {
        // x_ij x_jk + x_jk x_ki + x_ki x_ij
        Poly q;
        add_raw_quadratic_term(p, q, {i, j, 0}, {j, k, 0}, 1);
        add_raw_quadratic_term(p, q, {j, k, 0}, {k, i, 0}, 1);
        add_raw_quadratic_term(p, q, {k, i, 0}, {i, j, 0}, 1);
        return q;
    };
    auto pair_square = [&](int i, int j) {
        Poly q;
        add_raw_quadratic_term(p, q, {i, j, 0}, {i, j, 0}, 1);
        return q;
    };
    auto row_sums = [&]() {
        // sum_{j != i} x_ij = 0, one instance per i
        for (int i = 1; i <= n; ++i) {
            Poly lin;
            for (int j = 1; j <= n; ++j)
                if (j != i) add_raw_linear_term(p, lin, {i, j, 0}, 1);
            if (!lin.empty()) p.linear.push_back(std::move(lin));
        }
    };

    switch (id) {
        case RingId::A:
        case RingId::B: {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k) p.quadratic.push_back(three_term(i, j, k));
            if (id == RingId::B) {
                Poly lin;
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j)
                        if (i != j) add_raw_linear_term(p, lin, {i, j, 0}, 1);
                if (!lin.empty()) p.linear.push_back(std::move(lin));
            }
            break;
        }
        case RingId::C:
        case RingId::AOT: {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) p.quadratic.push_back(pair_square(i, j));
            [[fallthrough]];
        }
        case RingId::OT: {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k) p.quadratic.push_back(three_term(i, j, k));
            break;
        }
        case RingId::M: {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k) p.quadratic.push_back(three_term(i, j, k));
            row_sums();
            break;
        }
        case RingId::Dx:
        case RingId::Dt: {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k) {
                        Poly sum;
                        add_raw_linear_term(p, sum, {i, j, 0}, 1);
                        add_raw_linear_term(p, sum, {j, k, 0}, 1);
                        add_raw_linear_term(p, sum, {k, i, 0}, 1);
                        Poly q = poly_mul(sum, sum, p.kind, false);
                        if (id == RingId::Dt && t != 0) {
                            Poly sq;
                            add_raw_quadratic_term(p, sq, {i, j, 0}, {i, j, 0}, 1);
                            add_raw_quadratic_term(p, sq, {j, k, 0}, {j, k, 0}, 1);
                            add_raw_quadratic_term(p, sq, {k, i, 0}, {k, i, 0}, 1);
                            for (const auto& [m, c] : sq) poly_add(q, m, -t * c);
                        }
                        if (!q.empty()) p.quadratic.push_back(std::move(q));
                    }
            row_sums();
            break;
        }
        case RingId::Dh: {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k) {
                        Poly q;
                        auto [s, gid] = p.canon({i, j, k});
                        (void)s;
                        auto r = mono::mul(mono::single(gid), mono::single(gid), p.kind, false);
                        poly_add(q, r.m, Rat(1));
                        p.quadratic.push_back(std::move(q));
                    }
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k)
                        for (int l = k + 1; l <= n; ++l) {
                            Poly lin;
                            add_raw_linear_term(p, lin, {i, j, k}, 1);
                            add_raw_linear_term(p, lin, {i, j, l}, -1);
                            add_raw_linear_term(p, lin, {i, k, l}, 1);
                            add_raw_linear_term(p, lin, {j, k, l}, -1);
                            if (!lin.empty()) p.linear.push_back(std::move(lin));
                        }
            break;
        }
        case RingId::T:
            break;
        case RingId::R: {
            Poly lin;
            for (int i = 1; i <= n; ++i) add_raw_linear_term(p, lin, {i, 0, 0}, 1);
            p.linear.push_back(std::move(lin));
            break;
        }
    }
    return p;
}

std::vector<uint64_t> enumerate_monomials(int gen_count, int degree, bool squarefree) {
    if (degree > mono::kMaxDegree) throw CellTooLarge("degree exceeds monomial packing limit");
    std::vector<uint64_t> out;
    if (degree == 0) {
        out.push_back(mono::kOne);
        return out;
    }
    std::array<uint8_t, 8> cur{};
    auto rec = [&](auto&& self, int pos, int from) -> void {
        if (pos == degree) {
            out.push_back(mono::pack(cur.data(), degree));
            return;
        }
        for (int g = from; g < gen_count; ++g) {
            cur[pos] = static_cast<uint8_t>(g);
            self(self, pos + 1, squarefree ? g + 1 : g);
        }
    };
    rec(rec, 0, 0);
    // The fixed monomial order iterates lexicographically from the top: the
    // leading (pivot) monomial of a relation row is then its lex-largest
    // term, which for the three-term ideals here is the broken-circuit
    // staircase; elimination against that staircase stays sparse.
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<uint64_t> monomial_basis(const RingPresentation& p, int degree) {
    return enumerate_monomials(p.gen_count(), degree, p.kind == AlgebraKind::Exterior);
}

std::pair<int, uint64_t> sigma_mono(const RingPresentation& p, const std::vector<int>& sigma,
                                    uint64_t m) {
    std::array<uint8_t, 8> gens{};
    int d = mono::unpack(m, gens);
    int sign = 1;
    uint64_t acc = mono::kOne;
    for (int k = 0; k < d; ++k) {
        std::array<int, 3> lab = p.gens[gens[k]];
        for (int a = 0; a < p.arity; ++a) lab[a] = sigma[lab[a]];
        auto [s, id] = p.canon(lab);
        auto r = mono::mul(acc, mono::single(id), p.kind, p.kind == AlgebraKind::Exterior);
        if (r.sign == 0) return {0, 0};
        sign *= s * r.sign;
        acc = r.m;
    }
    return {sign, acc};
}

FullEchelon ideal_echelon(const RingPresentation& p, int degree, ArithMode mode) {
    FullEchelon out;
    out.monomials = monomial_basis(p, degree);
    std::map<uint64_t, ColIdx> index;
    for (size_t i = 0; i < out.monomials.size(); ++i)
        index.emplace(out.monomials[i], static_cast<ColIdx>(i));

    std::vector<RatRow> rows;
    bool sf = p.kind == AlgebraKind::Exterior;
    auto emit = [&](const Poly& rel, int reldeg) {
        if (degree < reldeg) return;
        for (uint64_t m : enumerate_monomials(p.gen_count(), degree - reldeg, sf)) {
            Poly prod;
            for (const auto& [rm, rc] : rel) {
                auto r = mono::mul(rm, m, p.kind, sf);
                if (r.sign == 0) continue;
                poly_add(prod, r.m, r.sign < 0 ? Rat(-rc) : rc);
            }
            if (prod.empty()) continue;
            RatRow row;
            row.reserve(prod.size());
            for (const auto& [pm, pc] : prod) row.emplace_back(index.at(pm), pc);
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            rows.push_back(std::move(row));
        }
    };
    for (const auto& rel : p.linear) emit(rel, 1);
    for (const auto& rel : p.quadratic) emit(rel, 2);
    out.basis = rref(std::move(rows), static_cast<ColIdx>(out.monomials.size()), mode);
    return out;
}

ReducedRing reduce_ring(const RingPresentation& p) {
    ReducedRing r;
    r.pres = p;
    int g = p.gen_count();

    // B keeps its single sum relation as a degree-1 row family: substituting
    // it rewrites a batch of three-term relations into dense ones and ruins
    // the staircase sparsity of the exterior ideal. For the rings with a full
    // family of row-sum relations the opposite holds: the relation rows of
    // that family alone carry a large dense block, and substitution removes
    // it symbolically.
    bool substitute = p.id != RingId::B;
    if (!substitute) {
        r.squarefree = p.kind == AlgebraKind::Exterior;
        r.kept_of_full.resize(g);
        r.elim.resize(g);
        for (int full = 0; full < g; ++full) {
            r.kept_of_full[full] = full;
            r.kept.push_back(static_cast<uint8_t>(full));
            r.elim[full] = {{static_cast<uint8_t>(full), Rat(1)}};
        }
        r.linear = p.linear;
        r.relations = p.quadratic;
        return r;
    }

    // detect generator squares among the quadratics (polynomial kind only)
    std::vector<char> has_square(g, 0);
    if (p.kind == AlgebraKind::Polynomial) {
        for (const auto& q : p.quadratic) {
            if (q.size() != 1) continue;
            std::array<uint8_t, 8> gg{};
            if (mono::unpack(q.begin()->first, gg) == 2 && gg[0] == gg[1]) has_square[gg[0]] = 1;
        }
        r.absorbed_squares = std::all_of(has_square.begin(), has_square.end(),
                                         [](char c) { return c != 0; }) &&
                             g > 0;
    }
    r.squarefree = (p.kind == AlgebraKind::Exterior) || r.absorbed_squares;

    // echelonize the linear relations over the generator span
    std::vector<RatRow> lin_rows;
    for (const auto& rel : p.linear) {
        RatRow row;
        for (const auto& [m, c] : rel) {
            std::array<uint8_t, 8> gg{};
            mono::unpack(m, gg);
            row.emplace_back(gg[0], c);
        }
        std::sort(row.begin(), row.end());
        lin_rows.push_back(std::move(row));
    }
    RrefResult lin = rref_rational(std::move(lin_rows), g);

    r.kept_of_full.assign(g, -1);
    for (ColIdx c : lin.nonpivots) {
        r.kept_of_full[c] = static_cast<int>(r.kept.size());
        r.kept.push_back(static_cast<uint8_t>(c));
    }
    if (r.kept_count() > 254) throw CellTooLarge("kept generator count exceeds packing limit");

    r.elim.resize(g);
    for (int full = 0; full < g; ++full) {
        int pr = lin.pivot_row_of_col[full];
        if (pr < 0) {
            r.elim[full] = {{static_cast<uint8_t>(r.kept_of_full[full]), Rat(1)}};
        } else {
            for (const auto& [c, v] : lin.tails[pr])
                r.elim[full].emplace_back(static_cast<uint8_t>(r.kept_of_full[c]), -v);
        }
    }

    // rewrite quadratics over kept generators
    for (const auto& q : p.quadratic) {
        Poly rew;
        for (const auto& [m, c] : q) {
            std::array<uint8_t, 8> gg{};
            mono::unpack(m, gg);
            const auto& f1 = r.elim[gg[0]];
            const auto& f2 = r.elim[gg[1]];
            for (const auto& [k1, c1] : f1)
                for (const auto& [k2, c2] : f2) {
                    auto mr = mono::mul(mono::single(k1), mono::single(k2), p.kind, r.squarefree);
                    if (mr.sign == 0) continue;
                    Rat coeff = c * c1 * c2;
                    if (mr.sign < 0) coeff = -coeff;
                    poly_add(rew, mr.m, coeff);
                }
        }
        if (!rew.empty()) r.relations.push_back(std::move(rew));
    }
    return r;
}

std::vector<std::pair<uint8_t, Rat>> ReducedRing::sigma_image(const std::vector<int>& sigma,
                                                              uint8_t kept_id) const {
    std::array<int, 3> lab = pres.gens[kept[kept_id]];
    for (int a = 0; a < pres.arity; ++a) lab[a] = sigma[lab[a]];
    auto [s, id] = pres.canon(lab);
    std::vector<std::pair<uint8_t, Rat>> out;
    out.reserve(elim[id].size());
    for (const auto& [k, c] : elim[id]) out.emplace_back(k, s < 0 ? Rat(-c) : c);
    return out;
}

}  // namespace equilog
