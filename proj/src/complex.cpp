// complex.cpp

#include "hfl/complex.hpp"
#include "hfl/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hfl {

std::optional<std::pair<int, int>> GradedComplex::square_defect() const {
    RMat dd = d * d;
    auto [r, c] = dd.first_nonzero();
    if (r < 0) return std::nullopt;
    return std::make_pair(c, r);
}

void GradedComplex::require_square_zero() const {
    if (auto w = square_defect())
        throw InvariantError("differential does not square to zero: " + name(w->first) + " -> " + name(w->second));
}

std::optional<std::pair<int, int>> GradedComplex::grading_defect() const {
    if (!graded) return std::nullopt;
    for (int s = 0; s < size(); ++s)
        for (const auto& e : d.col(s))
            for (Mono m : e.val.terms())
                if (grading[s] - 1 != grading[e.row] - 2 * ring.degree(m)) return std::make_pair(s, e.row);
    return std::nullopt;
}

GradedComplex GradedComplex::truncate(int delta) const {
    GradedComplex c = *this;
    c.ring.delta = delta;
    c.d = d.truncate(c.ring);
    return c;
}

GradedComplex GradedComplex::restrict_to(const std::vector<int>& gens) const {
    GradedComplex c(ring, int(gens.size()));
    c.graded = graded;
    std::vector<int> pos(size(), -1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        pos[gens[i]] = int(i);
        c.grading[i] = grading[gens[i]];
        if (!names.empty()) c.names.push_back(names[gens[i]]);
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (const auto& e : d.col(gens[i]))
            if (pos[e.row] >= 0) c.d.add(pos[e.row], int(i), e.val);
    return c;
}

FlatComplex flatten(const GradedComplex& c) {
    const TruncatedRing& r = c.ring;
    const std::size_t B = r.basis_size();
    FlatComplex f;
    f.dim = std::size_t(c.size()) * B;
    f.graded = c.graded;
    f.grading.resize(f.dim);
    f.image.resize(f.dim);
    std::vector<Mono> basis(B);
    for (std::size_t k = 0; k < B; ++k) basis[k] = r.basis_mono(k);
    for (int g = 0; g < c.size(); ++g)
        for (std::size_t k = 0; k < B; ++k) {
            std::size_t idx = std::size_t(g) * B + k;
            f.grading[idx] = c.graded ? c.grading[g] - 2 * r.degree(basis[k]) : 0;
            auto& img = f.image[idx];
            for (const auto& e : c.d.col(g))
                for (Mono a : e.val.terms()) {
                    Mono z = a + basis[k];
                    if (r.alive(z)) img.push_back(std::size_t(e.row) * B + r.basis_index(z));
                }
            std::sort(img.begin(), img.end());
            std::size_t w = 0;
            for (std::size_t i = 0; i < img.size();) {
                std::size_t j = i;
                while (j < img.size() && img[j] == img[i]) ++j;
                if ((j - i) & 1) img[w++] = img[i];
                i = j;
            }
            img.resize(w);
        }
    return f;
}

namespace {

struct Buckets {
    std::map<int, std::vector<std::size_t>> members;  // degree -> basis ids
    std::vector<std::size_t> local;                   // basis id -> index in its bucket
};

Buckets bucketize(const FlatComplex& f) {
    Buckets b;
    b.local.resize(f.dim);
    for (std::size_t i = 0; i < f.dim; ++i) {
        auto& v = b.members[f.graded ? f.grading[i] : 0];
        b.local[i] = v.size();
        v.push_back(i);
    }
    return b;
}

// Rows: images of degree-k basis vectors, restricted to the target bucket.
gf2::BitMatrix boundary_block(const FlatComplex& f, const Buckets& b, int k) {
    static const std::vector<std::size_t> none;
    auto src = b.members.find(k);
    int tk = f.graded ? k - 1 : k;
    auto tgt = b.members.find(tk);
    std::size_t nr = src == b.members.end() ? 0 : src->second.size();
    std::size_t nc = tgt == b.members.end() ? 0 : tgt->second.size();
    gf2::BitMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t t : f.image[src->second[i]]) {
            int tg = f.graded ? f.grading[t] : 0;
            if (tg != tk) throw InvariantError("differential does not drop grading by one");
            m.set(i, b.local[t]);
        }
    return m;
}

}  // namespace

std::map<int, std::size_t> homology_ranks(const FlatComplex& f) {
    Buckets b = bucketize(f);
    std::map<int, std::size_t> rk;  // rank of d out of degree k
    for (const auto& [k, mem] : b.members) rk[k] = gf2::rank(boundary_block(f, b, k));
    std::map<int, std::size_t> out;
    for (const auto& [k, mem] : b.members) {
        std::size_t h;
        if (f.graded) {
            auto up = rk.find(k + 1);
            h = mem.size() - rk[k] - (up == rk.end() ? 0 : up->second);
        } else {
            h = mem.size() - 2 * rk[k];
        }
        out[k] = h;
    }
    return out;
}

std::map<int, std::size_t> homology_ranks(const GradedComplex& c) {
    c.require_square_zero();
    return homology_ranks(flatten(c));
}

std::size_t total(const std::map<int, std::size_t>& ranks) {
    std::size_t t = 0;
    for (const auto& kv : ranks) t += kv.second;
    return t;
}

std::map<int, std::size_t> stable_ranks(const GradedComplex& c2, int delta) {
    if (c2.ring.delta < delta) throw ValidationError("stable_ranks: larger truncation required");
    c2.require_square_zero();
    GradedComplex c1 = c2.truncate(delta);
    FlatComplex f2 = flatten(c2), f1 = flatten(c1);
    Buckets b2 = bucketize(f2), b1 = bucketize(f1);
    const std::size_t B2 = c2.ring.basis_size(), B1 = c1.ring.basis_size();
    std::map<int, std::size_t> out;
    for (const auto& [k, mem1] : b1.members) {
        gf2::Echelon ech(mem1.size());
        std::vector<gf2::Word> v(ech.stride());
        // boundaries at delta
        int up = c1.graded ? k + 1 : k;
        if (b1.members.count(up)) {
            gf2::BitMatrix m = boundary_block(f1, b1, up);
            for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row(i));
        }
        std::size_t rb = ech.dim();
        // projected cycles from the larger truncation
        auto it2 = b2.members.find(k);
        if (it2 != b2.members.end()) {
            gf2::BitMatrix m2 = boundary_block(f2, b2, k);
            for (const auto& z : gf2::left_kernel(m2)) {
                std::fill(v.begin(), v.end(), 0);
                for (std::size_t i = 0; i < it2->second.size(); ++i) {
                    if (!((z[i >> 6] >> (i & 63)) & 1)) continue;
                    std::size_t id = it2->second[i];
                    std::size_t g = id / B2;
                    Mono mono = c2.ring.basis_mono(id % B2);
                    if (!c1.ring.alive(mono)) continue;
                    std::size_t id1 = g * B1 + c1.ring.basis_index(mono);
                    std::size_t loc = b1.local[id1];
                    v[loc >> 6] ^= gf2::Word(1) << (loc & 63);
                }
                ech.insert(v.data());
            }
        }
        out[k] = ech.dim() - rb;
    }
    return out;
}

GradedComplex cancel_units(const GradedComplex& c, std::vector<int>* kept) {
    const int n = c.size();
    const TruncatedRing& r = c.ring;
    std::vector<std::map<int, std::vector<Mono>>> out(n);
    std::vector<std::set<int>> in(n);
    for (int s = 0; s < n; ++s)
        for (const auto& e : c.d.col(s)) {
            out[s][e.row] = e.val.terms();
            in[e.row].insert(s);
        }
    std::vector<char> alive(n, 1);
    auto is_unit = [](const std::vector<Mono>& p) { return p.size() == 1 && p[0] == 0; };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n; ++x) {
            if (!alive[x]) continue;
            int y = -1;
            for (const auto& [t, p] : out[x])
                if (t != x && is_unit(p)) { y = t; break; }
            if (y < 0) continue;
            std::vector<std::pair<int, std::vector<Mono>>> srcs, tgts;
            for (int z : in[y])
                if (z != x) srcs.emplace_back(z, out[z][y]);
            for (const auto& [w, p] : out[x])
                if (w != y) tgts.emplace_back(w, p);
            for (const auto& [z, czy] : srcs)
                for (const auto& [w, cxw] : tgts) {
                    std::vector<Mono> prod = poly_mul(r, czy, cxw);
                    if (prod.empty()) continue;
                    auto& slot = out[z][w];
                    poly_add(slot, prod);
                    if (slot.empty()) {
                        out[z].erase(w);
                        in[w].erase(z);
                    } else {
                        in[w].insert(z);
                    }
                }
            for (int v : {x, y}) {
                for (const auto& kv : out[v]) in[kv.first].erase(v);
                for (int z : in[v]) out[z].erase(v);
                out[v].clear();
                in[v].clear();
                alive[v] = 0;
            }
            changed = true;
        }
    }
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (alive[i]) keep.push_back(i);
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = int(i);
    GradedComplex res(r, int(keep.size()));
    res.graded = c.graded;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        res.grading[i] = c.grading[keep[i]];
        if (!c.names.empty()) res.names.push_back(c.names[keep[i]]);
        for (const auto& [t, p] : out[keep[i]]) res.d.add(pos[t], int(i), RingElement(r, p));
    }
    if (kept) *kept = keep;
    return res;
}

std::vector<std::vector<int>> components(const GradedComplex& c) {
    const int n = c.size();
    std::vector<int> par(n);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int a) {
        while (par[a] != a) a = par[a] = par[par[a]];
        return a;
    };
    for (int s = 0; s < n; ++s)
        for (const auto& e : c.d.col(s)) {
            int a = find(s), b = find(e.row);
            if (a != b) par[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& kv : groups) out.push_back(std::move(kv.second));
    return out;
}

GradedComplex cone(TruncatedRing r, const RingElement& a) {
    GradedComplex c(r, 2);
    c.names = {"t", "s"};
    std::set<int> degs;
    for (Mono m : a.terms()) degs.insert(r.degree(m));
    if (degs.size() > 1) c.graded = false;
    int k = degs.empty() ? 0 : *degs.begin();
    c.grading = {0, 1 - 2 * k};
    c.d.add(0, 1, a);
    return c;
}

GradedComplex direct_sum(const GradedComplex& a, const GradedComplex& b) {
    if (!(a.ring == b.ring)) throw ValidationError("direct sum: ring mismatch");
    GradedComplex c(a.ring, a.size() + b.size());
    c.graded = a.graded && b.graded;
    std::copy(a.grading.begin(), a.grading.end(), c.grading.begin());
    std::copy(b.grading.begin(), b.grading.end(), c.grading.begin() + a.size());
    if (!a.names.empty() || !b.names.empty())
        for (int i = 0; i < c.size(); ++i) c.names.push_back(i < a.size() ? a.name(i) : b.name(i - a.size()));
    c.d.place(a.d, 0, 0);
    c.d.place(b.d, a.size(), a.size());
    return c;
}

GradedComplex tensor(const GradedComplex& a, const GradedComplex& b) {
    if (!(a.ring == b.ring)) throw ValidationError("tensor: ring mismatch");
    const int na = a.size(), nb = b.size();
    GradedComplex c(a.ring, na * nb);
    c.graded = a.graded && b.graded;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) c.grading[i * nb + j] = a.grading[i] + b.grading[j];
    for (int i = 0; i < na; ++i)
        for (const auto& e : a.d.col(i))
            for (int j = 0; j < nb; ++j) c.d.add(e.row * nb + j, i * nb + j, e.val);
    for (int j = 0; j < nb; ++j)
        for (const auto& e : b.d.col(j))
            for (int i = 0; i < na; ++i) c.d.add(i * nb + e.row, i * nb + j, e.val);
    return c;
}

}  // namespace hfl
