#pragma once
// fixtures.hpp - random collections, songs and a brute-force player

#include "hfl/hyperbox.hpp"
#include "hfl/songs.hpp"

#include <random>

namespace fixtures {

using namespace hfl;

inline int pick(std::mt19937_64& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline RMat power(const RMat& a, int k) {
    RMat p = RMat::identity(a.ring(), a.rows());
    for (int i = 0; i < k; ++i) p = p * a;
    return p;
}

inline RMat kron(const RMat& a, const RMat& b) {
    RMat out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.cols(); ++i)
        for (const auto& ea : a.col(i))
            for (int j = 0; j < b.cols(); ++j)
                for (const auto& eb : b.col(j)) out.add(ea.row * b.rows() + eb.row, i * b.cols() + j, ea.val * eb.val);
    return out;
}

// Letters of a come first. The total differential is D_a x 1 + 1 x D_b.
inline Collection tensor(const Collection& a, const Collection& b) {
    Collection c(a.ring, a.letters + b.letters, a.dim * b.dim);
    RMat Ia = RMat::identity(a.ring, a.dim), Ib = RMat::identity(a.ring, b.dim);
    for (Letters Z = 0; Z < c.A.size(); ++Z) {
        Letters x = Z & ((1u << a.letters) - 1), y = Z >> a.letters;
        if (!x && !y) c.A[Z] = kron(a.A[0], Ib) + kron(Ia, b.A[0]);
        else if (!y) c.A[Z] = kron(a.A[x], Ib);
        else if (!x) c.A[Z] = kron(Ia, b.A[y]);
    }
    return c;
}

// Polynomials in one random matrix T; any commuting family whose empty
// entry squares to zero satisfies the relations.
inline Collection commuting_collection(std::mt19937_64& g, int letters, int dim, TruncatedRing r) {
    RMat T(r, dim, dim);
    const bool nil = pick(g, 0, 1);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if ((!nil || i < j) && pick(g, 0, 1)) T.add(i, j, RingElement::one(r));
    std::vector<RMat> pw{RMat::identity(r, dim)};
    for (int k = 1; k <= dim; ++k) pw.push_back(pw.back() * T);
    Collection c(r, letters, dim);
    for (int k = 1; k <= dim; ++k)
        if ((pw[k] * pw[k]).zero() && !pw[k].zero()) {
            c.A[0] = pw[k];
            break;
        }
    for (Letters Z = 1; Z < c.A.size(); ++Z)
        for (int k = 0; k <= dim; ++k)
            if (pick(g, 0, 1)) c.A[Z] += pw[k];
    return c;
}

inline Collection raw_collection(std::mt19937_64& g, int letters, int max_dim, TruncatedRing r) {
    int kind = pick(g, 0, 2);
    if (kind == 2 && letters >= 2 && max_dim >= 4) {
        int a = pick(g, 1, letters - 1);
        int da = pick(g, 2, max_dim / 2);
        return tensor(raw_collection(g, a, da, r), raw_collection(g, letters - a, max_dim / da, r));
    }
    if (kind == 1 && letters <= 2) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            RandomBoxSpec spec;
            spec.ring = r;
            for (int i = 0; i < letters; ++i) spec.size.push_back(pick(g, 1, letters == 1 ? 3 : 1));
            spec.max_gens = 2;
            spec.graded = r.p > 0;
            spec.perturbations = 4;
            Collection c = hyperbox_collection(random_hyperbox(g, spec));
            if (c.dim >= 1 && c.dim <= max_dim && !c.A[0].zero()) return c;
        }
    }
    return commuting_collection(g, letters, pick(g, 1, max_dim), r);
}

// Hyperbox collections, tensor products and commuting families, conjugated
// by one random invertible matrix; at most 6x6.
inline Collection random_collection(std::mt19937_64& g, int letters, TruncatedRing r) {
    Collection c = raw_collection(g, letters, 6, r);
    auto [P, Q] = random_invertible(g, r, c.dim, nullptr);
    for (auto& a : c.A) a = P * a * Q;
    return c;
}

inline Song random_song(std::mt19937_64& g, int letters, int len) {
    Song s;
    for (int i = 0; i < len; ++i) {
        if (pick(g, 0, 1)) s.push_back(Item::note(pick(g, 0, letters - 1)));
        else s.push_back(Item::chord(Letters(pick(g, 0, (1 << letters) - 1))));
    }
    return s;
}

// Enumerates every exponent assignment directly.
inline RMat play_brute(const Song& s, const Collection& c, const std::vector<int>& reg) {
    RMat acc(c.ring, c.dim, c.dim);
    std::vector<int> notes;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!s[i].harmony) notes.push_back(int(i));
    std::vector<int> j(notes.size(), 0);
    while (true) {
        std::vector<int> used(c.letters, 0);
        for (std::size_t k = 0; k < notes.size(); ++k) used[s[notes[k]].letter()] += j[k];
        for (const Item& it : s)
            if (it.harmony)
                for (int x = 0; x < c.letters; ++x)
                    if (it.mask >> x & 1) ++used[x];
        if (used == reg) {
            RMat p = RMat::identity(c.ring, c.dim);
            std::size_t k = 0;
            for (const Item& it : s) p = p * (it.harmony ? c.A[it.mask] : power(c.A[it.mask], j[k++]));
            acc += p;
        }
        std::size_t k = 0;
        while (k < j.size()) {
            int x = s[notes[k]].letter();
            if (++j[k] <= reg[x]) break;
            j[k++] = 0;
        }
        if (k == j.size()) break;
    }
    return acc;
}

}  // namespace fixtures
