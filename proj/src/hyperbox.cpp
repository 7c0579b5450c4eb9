// hyperbox.cpp

#include "hfl/hyperbox.hpp"
#include "hfl/errors.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace hfl {

Hyperbox::Hyperbox(TruncatedRing r, std::vector<int> sz) : ring(r), size(std::move(sz)) {
    int n = 1;
    for (int d : size) {
        if (d < 0) throw ValidationError("hyperbox: negative size");
        n *= d + 1;
    }
    vertex.assign(n, GradedComplex(r, 0));
}

int Hyperbox::index(const std::vector<int>& e) const {
    int v = 0;
    for (int i = dim() - 1; i >= 0; --i) {
        if (e[i] < 0 || e[i] > size[i]) return -1;
        v = v * (size[i] + 1) + e[i];
    }
    return v;
}

std::vector<int> Hyperbox::coords(int v) const {
    std::vector<int> e(dim());
    for (int i = 0; i < dim(); ++i) {
        e[i] = v % (size[i] + 1);
        v /= size[i] + 1;
    }
    return e;
}

int Hyperbox::shift(int v, Letters eps) const {
    int stride = 1, w = v;
    for (int i = 0; i < dim(); ++i) {
        int c = v / stride % (size[i] + 1);
        if (eps >> i & 1) {
            if (c + 1 > size[i]) return -1;
            w += stride;
        }
        stride *= size[i] + 1;
    }
    return w;
}

RMat Hyperbox::map(int v, Letters eps) const {
    if (!eps) return vertex[v].d;
    auto it = maps.find({v, eps});
    if (it != maps.end()) return it->second;
    int w = shift(v, eps);
    if (w < 0) throw ValidationError("hyperbox: map leaves the box");
    return RMat(ring, vertex[w].size(), vertex[v].size());
}

void Hyperbox::set_map(int v, Letters eps, RMat m) {
    int w = shift(v, eps);
    if (w < 0) throw ValidationError("hyperbox: map leaves the box");
    if (m.rows() != vertex[w].size() || m.cols() != vertex[v].size()) throw ValidationError("hyperbox: map has the wrong shape");
    if (!eps) {
        vertex[v].d = std::move(m);
        return;
    }
    if (m.zero()) maps.erase({v, eps});
    else maps[{v, eps}] = std::move(m);
}

void Hyperbox::add_map(int v, Letters eps, const RMat& m) { set_map(v, eps, map(v, eps) + m); }

bool Hyperbox::is_cube() const {
    for (int d : size)
        if (d > 1) return false;
    return true;
}

std::optional<std::pair<int, Letters>> Hyperbox::violation() const {
    const Letters all = (Letters(1) << dim()) - 1;
    for (int v = 0; v < num_vertices(); ++v)
        for (Letters eps = 0; eps <= all; ++eps) {
            int w = shift(v, eps);
            if (w < 0) continue;
            RMat acc(ring, vertex[w].size(), vertex[v].size());
            for (Letters a = eps;; a = (a - 1) & eps) {
                acc += map(shift(v, a), eps & ~a) * map(v, a);
                if (!a) break;
            }
            if (!acc.zero()) return std::make_pair(v, eps);
        }
    return std::nullopt;
}

std::optional<std::pair<int, Letters>> Hyperbox::degree_violation() const {
    for (const auto& c : vertex)
        if (!c.graded) return std::nullopt;
    const Letters all = (Letters(1) << dim()) - 1;
    for (int v = 0; v < num_vertices(); ++v)
        for (Letters eps = 0; eps <= all; ++eps) {
            int w = shift(v, eps);
            if (w < 0) continue;
            RMat m = map(v, eps);
            const int want = std::popcount(eps) - 1;
            for (int s = 0; s < m.cols(); ++s)
                for (const auto& e : m.col(s))
                    for (Mono mono : e.val.terms())
                        if (vertex[w].grading[e.row] - 2 * ring.degree(mono) - vertex[v].grading[s] != want)
                            return std::make_pair(v, eps);
        }
    return std::nullopt;
}

std::string eps_str(const std::vector<int>& e) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ")";
    return os.str();
}

namespace {

std::vector<int> mask_vec(Letters eps, int n) {
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = int(eps >> i & 1);
    return e;
}

}  // namespace

void Hyperbox::require_valid() const {
    for (int v = 0; v < num_vertices(); ++v)
        if (!(vertex[v].ring == ring)) throw ValidationError("hyperbox: vertex ring mismatch");
    if (auto bad = violation())
        throw ValidationError("hyperbox relation fails at vertex " + eps_str(coords(bad->first)) + ", eps " + eps_str(mask_vec(bad->second, dim())));
    if (auto bad = degree_violation())
        throw ValidationError("hyperbox map at vertex " + eps_str(coords(bad->first)) + ", eps " + eps_str(mask_vec(bad->second, dim())) + " has the wrong degree");
}

Collection hyperbox_collection(const Hyperbox& h, std::vector<int>* offsets) {
    std::vector<int> off(h.num_vertices() + 1, 0);
    for (int v = 0; v < h.num_vertices(); ++v) off[v + 1] = off[v] + h.vertex[v].size();
    Collection c(h.ring, h.dim(), off.back());
    for (Letters Z = 0; Z < (Letters(1) << h.dim()); ++Z)
        for (int v = 0; v < h.num_vertices(); ++v) {
            int w = h.shift(v, Z);
            if (w >= 0) c.A[Z].place(h.map(v, Z), off[w], off[v]);
        }
    if (offsets) *offsets = off;
    return c;
}

Hyperbox compress(const Hyperbox& h) {
    h.require_valid();
    std::vector<int> active, reg;
    Letters amask = 0;
    for (int i = 0; i < h.dim(); ++i)
        if (h.size[i] > 0) {
            active.push_back(i);
            reg.push_back(h.size[i]);
            amask |= Letters(1) << i;
        }
    const int m = int(active.size());
    std::vector<int> off;
    Collection full = hyperbox_collection(h, &off);
    Collection coll = full.restrict_to(amask);
    Hyperbox out(h.ring, std::vector<int>(m, 1));
    auto corner = [&](Letters e) {
        std::vector<int> c(h.dim(), 0);
        for (int k = 0; k < m; ++k)
            if (e >> k & 1) c[active[k]] = h.size[active[k]];
        return h.index(c);
    };
    for (Letters e = 0; e < (Letters(1) << m); ++e) {
        const int src = corner(e);
        out.vertex[out.index(mask_vec(e, m))] = h.vertex[src];
    }
    for (Letters e = 0; e < (Letters(1) << m); ++e) {
        const int src = corner(e);
        const int ov = out.index(mask_vec(e, m));
        RMat start(h.ring, coll.dim, h.vertex[src].size());
        for (int j = 0; j < h.vertex[src].size(); ++j) start.add(off[src] + j, j, RingElement::one(h.ring));
        const Letters free = ((Letters(1) << m) - 1) & ~e;
        for (Letters Z = free; Z; Z = (Z - 1) & free) {
            std::vector<int> sub;
            for (Letters b = Z; b; b &= b - 1) sub.push_back(reg[std::countr_zero(b)]);
            RMat col = play(symphony(int(sub.size())), coll.restrict_to(Z), sub, &start);
            const int dst = corner(e | Z);
            out.set_map(ov, Z, col.block(off[dst], h.vertex[dst].size(), 0, h.vertex[src].size()));
        }
    }
    if (auto bad = out.violation()) throw InvariantError("compressed hypercube fails its relation at vertex " + eps_str(out.coords(bad->first)));
    return out;
}

Hyperbox enlarge(const Hyperbox& h, int k, int j) {
    if (k < 0 || k >= h.dim()) throw ValidationError("enlarge: axis out of range");
    if (j < 0 || j > h.size[k]) throw ValidationError("enlarge: slot out of range");
    std::vector<int> sz = h.size;
    ++sz[k];
    Hyperbox out(h.ring, sz);
    const Letters tk = Letters(1) << k;
    auto old = [&](std::vector<int> e) {
        if (e[k] > j) --e[k];
        return h.index(e);
    };
    for (int v = 0; v < out.num_vertices(); ++v) out.vertex[v] = h.vertex[old(out.coords(v))];
    const Letters all = (Letters(1) << h.dim()) - 1;
    for (int v = 0; v < out.num_vertices(); ++v) {
        std::vector<int> e = out.coords(v);
        for (Letters eps = 1; eps <= all; ++eps) {
            if (out.shift(v, eps) < 0) continue;
            const int ek = int(eps >> k & 1);
            if (e[k] + ek <= j) {
                out.set_map(v, eps, h.map(h.index(e), eps));
            } else if (e[k] == j && eps == tk) {
                out.set_map(v, eps, RMat::identity(h.ring, out.vertex[v].size()));
            } else if (e[k] == j) {
                continue;  // zero
            } else {
                std::vector<int> o = e;
                --o[k];
                out.set_map(v, eps, h.map(h.index(o), eps));
            }
        }
    }
    return out;
}

GradedComplex total_complex(const Hyperbox& h) {
    if (!h.is_cube()) throw ValidationError("total complex needs a hypercube");
    std::vector<int> off;
    Collection c = hyperbox_collection(h, &off);
    GradedComplex t(h.ring, c.dim);
    t.graded = true;
    for (int v = 0; v < h.num_vertices(); ++v) {
        const auto& x = h.vertex[v];
        t.graded = t.graded && x.graded;
        std::vector<int> e = h.coords(v);
        int norm = 0;
        for (int b : e) norm += b;
        for (int g = 0; g < x.size(); ++g) {
            t.grading[off[v] + g] = x.grading[g] - norm;
            t.names.push_back(eps_str(e) + x.name(g));
        }
    }
    for (const RMat& a : c.A) t.d += a;
    t.require_square_zero();
    return t;
}

RMat HyperboxChainMap::at(int v, Letters eps) const {
    auto it = F.find({v, eps});
    if (it != F.end()) return it->second;
    int w = target.shift(v, eps);
    if (w < 0) throw ValidationError("chain map component leaves the box");
    return RMat(target.ring, target.vertex[w].size(), source.vertex[v].size());
}

Hyperbox HyperboxChainMap::as_hyperbox() const {
    if (source.size != target.size) throw ValidationError("chain map: hyperboxes of different sizes");
    std::vector<int> sz = source.size;
    sz.push_back(1);
    Hyperbox h(source.ring, sz);
    const int N = source.num_vertices();
    const int n = source.dim();
    for (int v = 0; v < N; ++v) {
        h.vertex[v] = source.vertex[v];
        h.vertex[v + N] = target.vertex[v];
    }
    for (const auto& [key, m] : source.maps) h.set_map(key.first, key.second, m);
    for (const auto& [key, m] : target.maps) h.set_map(key.first + N, key.second, m);
    for (const auto& [key, m] : F) h.set_map(key.first, key.second | (Letters(1) << n), m);
    return h;
}

HyperboxChainMap compose(const HyperboxChainMap& g, const HyperboxChainMap& f) {
    HyperboxChainMap out{f.source, g.target, {}};
    const Letters all = (Letters(1) << f.source.dim()) - 1;
    for (int v = 0; v < f.source.num_vertices(); ++v)
        for (Letters eps = 0; eps <= all; ++eps) {
            int w = f.source.shift(v, eps);
            if (w < 0) continue;
            RMat acc(f.source.ring, g.target.vertex[w].size(), f.source.vertex[v].size());
            for (Letters a = eps;; a = (a - 1) & eps) {
                acc += g.at(f.source.shift(v, a), eps & ~a) * f.at(v, a);
                if (!a) break;
            }
            if (!acc.zero()) out.F[{v, eps}] = std::move(acc);
        }
    return out;
}

Hyperbox canonical_hypercube(const GradedComplex& k, int n) {
    Hyperbox h(k.ring, std::vector<int>(n, 1));
    for (auto& c : h.vertex) c = k;
    for (int v = 0; v < h.num_vertices(); ++v)
        for (int i = 0; i < n; ++i)
            if (h.shift(v, Letters(1) << i) >= 0) h.set_map(v, Letters(1) << i, RMat::identity(k.ring, k.size()));
    return h;
}

HyperboxChainMap canonical_inclusion(const Hyperbox& H) {
    if (!H.is_cube() || std::find(H.size.begin(), H.size.end(), 0) != H.size.end())
        throw ValidationError("canonical inclusion needs a hypercube of size (1,...,1)");
    H.require_valid();
    const int n = H.dim();
    const Letters all = (Letters(1) << n) - 1;
    auto low = [](int i) { return (Letters(1) << i) - 1; };  // axes 1..i
    auto vid = [&](Letters e) { return int(e); };             // unit cube: index == mask
    auto level = [&](int i) {
        Hyperbox h(H.ring, H.size);
        for (Letters e = 0; e <= all; ++e) h.vertex[vid(e)] = H.vertex[vid(e & low(i))];
        for (Letters e = 0; e <= all; ++e)
            for (Letters d = 1; d <= all; ++d) {
                if (d & e) continue;
                if (!(d & ~low(i))) h.set_map(vid(e), d, H.map(vid(e & low(i)), d));
                else if (!(d & low(i)) && std::popcount(d) == 1) h.set_map(vid(e), d, RMat::identity(H.ring, h.vertex[vid(e)].size()));
            }
        return h;
    };
    HyperboxChainMap total;
    Hyperbox prev = level(0);
    for (int i = 1; i <= n; ++i) {
        Hyperbox cur = level(i);
        HyperboxChainMap f{prev, cur, {}};
        const Letters bi = Letters(1) << (i - 1);
        for (Letters e = 0; e <= all; ++e)
            for (Letters d = 0; d <= all; ++d) {
                if (d & e) continue;
                const Letters e2 = e | d;
                if ((e & bi) && !(d & ~low(i))) {
                    Letters from = e & low(i - 1);
                    Letters step = (e2 & low(i)) & ~from;
                    RMat m = H.map(vid(from), step);
                    if (!m.zero()) f.F[{vid(e), d}] = m;
                } else if (!d && !(e & bi)) {
                    f.F[{vid(e), 0}] = RMat::identity(H.ring, prev.vertex[vid(e)].size());
                }
            }
        total = i == 1 ? f : compose(f, total);
        prev = std::move(cur);
    }
    if (n == 0) {
        total = HyperboxChainMap{H, H, {}};
        total.F[{0, 0}] = RMat::identity(H.ring, H.vertex[0].size());
    }
    return total;
}

io::json hyperbox_to_json(const Hyperbox& h) {
    io::json verts = io::json::array(), maps = io::json::array();
    for (int v = 0; v < h.num_vertices(); ++v) {
        io::json c = io::complex_to_json(h.vertex[v]);
        c["at"] = h.coords(v);
        verts.push_back(c);
    }
    for (const auto& [key, m] : h.maps)
        maps.push_back({{"from", h.coords(key.first)}, {"eps", mask_vec(key.second, h.dim())}, {"entries", io::mat_to_json(m)}});
    return {{"ring", io::ring_to_json(h.ring)}, {"size", h.size}, {"vertices", verts}, {"maps", maps}};
}

Hyperbox hyperbox_from_json(const io::json& j) {
    TruncatedRing r = io::ring_from_json(j.at("ring"));
    Hyperbox h(r, j.at("size").get<std::vector<int>>());
    if (h.dim() > 16) throw ValidationError("hyperbox: too many axes");
    std::vector<char> seen(h.num_vertices(), 0);
    for (const auto& vj : j.at("vertices")) {
        int v = h.index(vj.at("at").get<std::vector<int>>());
        if (v < 0 || int(vj.at("at").size()) != h.dim()) throw ValidationError("hyperbox: vertex outside the box");
        if (seen[v]) throw ValidationError("hyperbox: vertex listed twice");
        seen[v] = 1;
        h.vertex[v] = io::complex_from_json(r, vj);
    }
    for (int v = 0; v < h.num_vertices(); ++v)
        if (!seen[v]) throw ValidationError("hyperbox: missing vertex " + eps_str(h.coords(v)));
    if (j.contains("maps"))
        for (const auto& mj : j.at("maps")) {
            int v = h.index(mj.at("from").get<std::vector<int>>());
            auto e = mj.at("eps").get<std::vector<int>>();
            if (v < 0 || int(e.size()) != h.dim()) throw ValidationError("hyperbox: bad map location");
            Letters eps = 0;
            for (int i = 0; i < h.dim(); ++i) {
                if (e[i] != 0 && e[i] != 1) throw ValidationError("hyperbox: eps entries must be 0 or 1");
                if (e[i]) eps |= Letters(1) << i;
            }
            if (!eps) throw ValidationError("hyperbox: differentials belong to the vertices");
            int w = h.shift(v, eps);
            if (w < 0) throw ValidationError("hyperbox: map leaves the box");
            h.add_map(v, eps, io::mat_from_json(r, h.vertex[w].size(), h.vertex[v].size(), mj.at("entries")));
        }
    return h;
}

// ---------------------------------------------------------------- random

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Monomials m with 2 deg m == want (any alive monomial when want < 0 is
// meaningless; pass ungraded to skip the constraint).
std::vector<Mono> monos_of_degree(const TruncatedRing& r, int twice_deg, bool graded) {
    std::vector<Mono> out;
    for (std::size_t i = 0; i < r.basis_size(); ++i) {
        Mono m = r.basis_mono(i);
        if (!graded || 2 * r.degree(m) == twice_deg) out.push_back(m);
    }
    return out;
}

RMat kron(const RMat& a, const RMat& b) {
    RMat out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.cols(); ++i)
        for (const auto& ea : a.col(i))
            for (int j = 0; j < b.cols(); ++j)
                for (const auto& eb : b.col(j)) out.add(ea.row * b.rows() + eb.row, i * b.cols() + j, ea.val * eb.val);
    return out;
}

RMat random_map(std::mt19937_64& rng, const GradedComplex& a, const GradedComplex& b, int k, bool graded, double density) {
    RMat m(a.ring, b.size(), a.size());
    for (int s = 0; s < a.size(); ++s)
        for (int t = 0; t < b.size(); ++t) {
            auto ms = monos_of_degree(a.ring, b.grading[t] - a.grading[s] - k, graded);
            for (Mono x : ms)
                if (coin(rng, density)) m.add_mono(t, s, x);
        }
    return m;
}

Hyperbox direct_sum(const Hyperbox& a, const Hyperbox& b) {
    Hyperbox out(a.ring, a.size);
    for (int v = 0; v < a.num_vertices(); ++v) out.vertex[v] = hfl::direct_sum(a.vertex[v], b.vertex[v]);
    const Letters all = (Letters(1) << a.dim()) - 1;
    for (int v = 0; v < a.num_vertices(); ++v)
        for (Letters eps = 1; eps <= all; ++eps) {
            int w = a.shift(v, eps);
            if (w < 0) continue;
            RMat m(a.ring, out.vertex[w].size(), out.vertex[v].size());
            m.place(a.map(v, eps), 0, 0);
            m.place(b.map(v, eps), a.vertex[w].size(), a.vertex[v].size());
            out.set_map(v, eps, m);
        }
    return out;
}

Hyperbox tensor_of_strings(std::mt19937_64& rng, const RandomBoxSpec& spec, const std::vector<int>& sz) {
    const TruncatedRing r = spec.ring;
    const int n = int(sz.size());
    // strings[i][j]: complex at slot j of axis i; maps[i][j]: slot j -> j+1
    std::vector<std::vector<GradedComplex>> cx(n);
    std::vector<std::vector<RMat>> f(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= sz[i]; ++j) cx[i].push_back(random_complex(rng, r, spec.max_gens, spec.graded, spec.min_gens));
        for (int j = 0; j < sz[i]; ++j) f[i].push_back(random_chain_map(rng, cx[i][j], cx[i][j + 1], 0));
    }
    Hyperbox h(r, sz);
    for (int v = 0; v < h.num_vertices(); ++v) {
        auto e = h.coords(v);
        GradedComplex c(r, 1);  // unit for the tensor product
        for (int i = 0; i < n; ++i) c = tensor(c, cx[i][e[i]]);
        h.vertex[v] = c;
    }
    for (int v = 0; v < h.num_vertices(); ++v) {
        auto e = h.coords(v);
        for (int i = 0; i < n; ++i) {
            if (h.shift(v, Letters(1) << i) < 0) continue;
            RMat m = RMat::identity(r, 1);
            for (int a = 0; a < n; ++a) m = kron(m, a == i ? f[a][e[a]] : RMat::identity(r, cx[a][e[a]].size()));
            h.set_map(v, Letters(1) << i, m);
        }
    }
    return h;
}

// D -> (1 + h) D (1 + h), keeping only components that are unit steps.
void conjugate_by_homotopy(Hyperbox& H, int v, Letters eh, const RMat& h) {
    const int w = H.shift(v, eh);
    const Letters all = (Letters(1) << H.dim()) - 1;
    std::vector<std::tuple<int, Letters, RMat>> add;
    for (int u = 0; u < H.num_vertices(); ++u)
        for (Letters e1 = 0; e1 <= all; ++e1) {
            if (e1 & eh) continue;
            if (H.shift(u, e1) == v) add.emplace_back(u, e1 | eh, h * H.map(u, e1));
        }
    for (Letters e2 = 0; e2 <= all; ++e2) {
        if (e2 & eh) continue;
        if (H.shift(w, e2) >= 0) add.emplace_back(v, e2 | eh, H.map(w, e2) * h);
    }
    for (auto& [u, e, m] : add) H.add_map(u, e, m);
}

}  // namespace

std::pair<RMat, RMat> random_invertible(std::mt19937_64& rng, TruncatedRing r, int n, const std::vector<int>* grading) {
    RMat P = RMat::identity(r, n), Q = RMat::identity(r, n);
    for (int step = 0; step < 3 * n; ++step) {
        if (n < 2) break;
        int i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 1);
        if (i == j) continue;
        auto ms = monos_of_degree(r, grading ? (*grading)[i] - (*grading)[j] : 0, grading != nullptr);
        if (ms.empty()) continue;
        Mono m = ms[pick(rng, 0, int(ms.size()) - 1)];
        RMat E = RMat::identity(r, n);
        E.add_mono(i, j, m);  // squares to the identity
        P = E * P;
        Q = Q * E;
    }
    return {P, Q};
}

GradedComplex random_complex(std::mt19937_64& rng, TruncatedRing r, int max_gens, bool graded, int min_gens) {
    GradedComplex c(r, 0);
    int budget = pick(rng, std::max(0, min_gens), std::max(min_gens, max_gens));
    while (budget > 0) {
        GradedComplex piece(r, 1);
        if (budget >= 2 && coin(rng, 0.6)) {
            Mono m = 0;
            for (int v = 0; v < r.p; ++v) m |= TruncatedRing::unit(v, pick(rng, 0, r.delta - 1));
            piece = cone(r, RingElement::monomial(r, m));
        }
        int sh = pick(rng, -2, 2);
        for (int& g : piece.grading) g += sh;
        budget -= piece.size();
        c = hfl::direct_sum(c, piece);
    }
    c.graded = graded;
    auto [P, Q] = random_invertible(rng, r, c.size(), graded ? &c.grading : nullptr);
    c.d = P * c.d * Q;
    return c;
}

RMat random_chain_map(std::mt19937_64& rng, const GradedComplex& a, const GradedComplex& b, int k) {
    const TruncatedRing r = a.ring;
    const bool graded = a.graded && b.graded;
    const std::size_t B = r.basis_size();
    struct Unknown {
        int t, s;
        Mono m;
    };
    std::vector<Unknown> unk;
    for (int s = 0; s < a.size(); ++s)
        for (int t = 0; t < b.size(); ++t)
            for (Mono m : monos_of_degree(r, b.grading[t] - a.grading[s] - k, graded)) unk.push_back({t, s, m});
    if (unk.empty()) return RMat(r, b.size(), a.size());
    // image coordinates: (row of b, col of a, monomial)
    const std::size_t ncols = std::size_t(b.size()) * a.size() * B;
    gf2::BitMatrix M(unk.size(), ncols);
    auto key = [&](int row, int col, Mono m) { return (std::size_t(row) * a.size() + col) * B + r.basis_index(m); };
    for (std::size_t u = 0; u < unk.size(); ++u) {
        const auto& x = unk[u];
        for (const auto& e : b.d.col(x.t))
            for (Mono mv : e.val.terms())
                if (r.alive(x.m + mv)) M.flip(u, key(e.row, x.s, x.m + mv));
        for (int c = 0; c < a.size(); ++c)
            for (const auto& e : a.d.col(c))
                if (e.row == x.s)
                    for (Mono mv : e.val.terms())
                        if (r.alive(x.m + mv)) M.flip(u, key(x.t, c, x.m + mv));
    }
    auto ker = gf2::left_kernel(M);
    RMat out(r, b.size(), a.size());
    std::vector<gf2::Word> pickv(gf2::words_for(unk.size()), 0);
    for (const auto& z : ker)
        if (coin(rng))
            for (std::size_t w = 0; w < pickv.size(); ++w) pickv[w] ^= z[w];
    for (std::size_t u = 0; u < unk.size(); ++u)
        if (pickv[u >> 6] >> (u & 63) & 1) out.add_mono(unk[u].t, unk[u].s, unk[u].m);
    return out;
}

Hyperbox random_hyperbox(std::mt19937_64& rng, const RandomBoxSpec& spec) {
    const int n = int(spec.size.size());
    std::vector<int> base(n);
    for (int i = 0; i < n; ++i) base[i] = spec.size[i] == 0 ? 0 : pick(rng, 1, spec.size[i]);
    Hyperbox h = tensor_of_strings(rng, spec, base);
    if (coin(rng, 0.3)) {
        RandomBoxSpec small = spec;
        small.max_gens = 1;
        h = direct_sum(h, tensor_of_strings(rng, small, base));
    }
    for (int i = 0; i < n; ++i)
        while (h.size[i] < spec.size[i]) h = enlarge(h, i, pick(rng, 0, h.size[i]));
    // base changes at every vertex
    for (int v = 0; v < h.num_vertices(); ++v) {
        auto& c = h.vertex[v];
        auto [P, Q] = random_invertible(rng, h.ring, c.size(), spec.graded ? &c.grading : nullptr);
        const Letters all = (Letters(1) << n) - 1;
        for (Letters eps = 1; eps <= all; ++eps) {
            if (h.shift(v, eps) >= 0) h.set_map(v, eps, h.map(v, eps) * Q);
            for (int u = 0; u < h.num_vertices(); ++u)
                if (h.shift(u, eps) == v) h.set_map(u, eps, P * h.map(u, eps));
        }
        c.d = P * c.d * Q;
    }
    const Letters all = (Letters(1) << n) - 1;
    for (int k = 0; k < spec.perturbations && n > 0; ++k) {
        int v = pick(rng, 0, h.num_vertices() - 1);
        Letters eh = Letters(pick(rng, 1, int(all)));
        int w = h.shift(v, eh);
        if (w < 0) continue;
        RMat hm = random_map(rng, h.vertex[v], h.vertex[w], std::popcount(eh), spec.graded, 0.4);
        conjugate_by_homotopy(h, v, eh, hm);
    }
    if (auto bad = h.violation()) throw InvariantError("random hyperbox generator produced an invalid box");
    return h;
}

}  // namespace hfl
