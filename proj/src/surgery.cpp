// surgery.cpp - lattice bookkeeping, Phi maps, truncated surgery complexes

#include "hfl/surgery.hpp"

#include "hfl/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace hfl {

// ---- framings and lattice points ----

IMat Framing::rows() const {
    IMat r;
    for (const auto& row : c) r.emplace_back(row.begin(), row.end());
    return r;
}

long long Framing::det() const { return determinant(rows()); }

std::string Framing::str() const {
    std::ostringstream os;
    for (int i = 0; i < ell(); ++i) {
        if (i) os << "; ";
        for (int j = 0; j < ell(); ++j) os << (j ? " " : "") << c[i][j];
    }
    return os.str();
}

Framing parse_framing(const std::string& text) {
    Framing f;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::istringstream is(row);
        std::vector<int> r;
        std::string tok;
        while (is >> tok) {
            try {
                std::size_t used = 0;
                r.push_back(std::stoi(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ValidationError("framing: bad entry '" + tok + "'");
            }
        }
        if (!r.empty()) f.c.push_back(r);
    }
    if (f.c.empty()) throw ValidationError("framing: empty matrix");
    for (int i = 0; i < f.ell(); ++i) {
        if (int(f.c[i].size()) != f.ell()) throw ValidationError("framing: matrix is not square");
        for (int j = 0; j < i; ++j)
            if (f.c[i][j] != f.c[j][i]) throw ValidationError("framing: matrix is not symmetric");
    }
    return f;
}

Point psi_point(const Point& s, const std::vector<int>& orient, const std::vector<std::vector<int>>& lk) {
    Point out;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (orient[j]) continue;
        int v = s[j];
        for (std::size_t i = 0; i < s.size(); ++i) v -= orient[i] * lk[j][i];
        out.push_back(v);
    }
    return out;
}

std::vector<int> lambda_sum(const Framing& f, const std::vector<int>& orient) {
    std::vector<int> out(f.ell(), 0);
    for (int i = 0; i < f.ell(); ++i)
        if (orient[i] < 0)
            for (int j = 0; j < f.ell(); ++j) out[j] += f.c[i][j];
    return out;
}

long long d_of_u(const Framing& f, const Point& s) {
    long long g = 0;
    for (const IVec& v : integer_kernel(f.rows(), f.ell())) {
        long long dot = 0;
        for (int i = 0; i < f.ell(); ++i) dot += v[i] * s[i];
        g = std::gcd(g, std::llabs(dot));
    }
    return g;
}

IVec class_coefficients(const Framing& f, const Point& s, const Point& s0) {
    IVec diff(f.ell());
    for (int i = 0; i < f.ell(); ++i) {
        int d = s[i] - s0[i];
        if (d % 2) throw ValidationError("nu: points differ by a non-integral vector");
        diff[i] = d / 2;
    }
    auto a = solve_rows(f.rows(), diff);
    if (!a) throw ValidationError("nu: point is not in the Spin^c class of the base point");
    return *a;
}

long long nu(const Framing& f, const Point& s, const Point& s0) {
    IVec a = class_coefficients(f, s, s0);
    long long v = 0;
    for (int i = 0; i < f.ell(); ++i) {
        v += a[i] * s0[i];
        for (int j = 0; j < f.ell(); ++j) v += a[i] * a[j] * f.c[i][j];
    }
    long long d = d_of_u(f, s0);
    if (d > 0) v = ((v % d) + d) % d;
    return v;
}

IVec spinc_key(const Framing& f, const Point& s, const std::vector<int>& offset2) {
    IVec z(f.ell());
    for (int i = 0; i < f.ell(); ++i) z[i] = (s[i] - offset2[i]) / 2;
    return reduce_mod(hermite(f.rows()), z);
}

// ---- sublink complexes and Phi ----

std::vector<int> SystemModel::offset2() const {
    std::vector<int> o(ell, 0);
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) o[i] += lk[i][j];
    return o;
}

Point sublink_point(const SystemModel& m, int eps, const Point& s) {
    Point t(m.ell, 0);
    for (int j = 0; j < m.ell; ++j) {
        if (eps >> j & 1) continue;
        t[j] = s[j];
        for (int k = 0; k < m.ell; ++k)
            if (eps >> k & 1) t[j] -= m.lk[j][k];
    }
    return t;
}

int sublink_maslov(const SystemModel& m, int S, const Point& t, int x) {
    const SublinkData& d = m.sub[S];
    int mu = d.maslov[x];
    for (int j = 0; j < m.ell; ++j) {
        if (!(S >> j & 1) || t[j] >= kInf) continue;
        mu -= t[j] <= -kInf ? d.alex2[x][j] : std::max(d.alex2[x][j] - t[j], 0);
    }
    return mu;
}

GradedComplex sublink_complex(const SystemModel& m, int S, const Point& t, int delta) {
    const SublinkData& d = m.sub[S];
    TruncatedRing r{m.num_vars(), delta};
    GradedComplex c(r, d.size());
    c.names = d.names;
    for (int x = 0; x < d.size(); ++x) c.grading[x] = sublink_maslov(m, S, t, x);
    for (const ModelArrow& a : d.arrows) {
        Mono mono = 0;
        bool alive = true;
        for (int v = 0; v < m.num_vars(); ++v) {
            int e = a.o[v];
            if (v < m.ell && (S >> v & 1)) e = rect_exponent(d.alex2[a.from][v], d.alex2[a.to][v], t[v], a.o[v], a.x[v]);
            if (e < 0) throw InvariantError("model " + m.name + ": negative exponent on arrow " + d.names[a.from] + "->" + d.names[a.to]);
            if (e >= delta) alive = false;
            else mono |= TruncatedRing::unit(v, e);
        }
        if (alive) c.d.add_mono(a.to, a.from, mono);
    }
    return c;
}

namespace {

std::pair<int, int> sublink_masks(const std::vector<int>& orient) {
    int n = 0, neg = 0;
    for (std::size_t i = 0; i < orient.size(); ++i) {
        if (orient[i]) n |= 1 << i;
        if (orient[i] < 0) neg |= 1 << i;
    }
    return {n, neg};
}

RMat mono_matrix(const SystemModel& m, const MonoMatrix& mm, int rows, int cols, int delta) {
    TruncatedRing r{m.num_vars(), delta};
    RMat out(r, rows, cols);
    for (const MonoEntry& e : mm) {
        Mono mono = 0;
        bool alive = true;
        for (int v = 0; v < m.num_vars(); ++v) {
            if (e.exp[v] >= delta) alive = false;
            else mono |= TruncatedRing::unit(v, e.exp[v]);
        }
        if (alive) out.add_mono(e.to, e.from, mono);
    }
    return out;
}

const MonoMatrix* destab_data(const SystemModel& m, int S, int n, int neg) {
    auto it = m.destab.find({S, n, neg});
    if (it != m.destab.end()) return &it->second;
    if (m.sub[S].size() != m.sub[S & ~n].size())
        throw ValidationError("model " + m.name + ": missing destabilization data for S=" + std::to_string(S) +
                              " N=" + std::to_string(n));
    return nullptr;
}

}  // namespace

RMat inclusion_powers(const SystemModel& m, int S, const std::vector<int>& orient, const Point& t, int delta) {
    const SublinkData& d = m.sub[S];
    TruncatedRing r{m.num_vars(), delta};
    RMat out(r, d.size(), d.size());
    for (int x = 0; x < d.size(); ++x) {
        Mono mono = 0;
        bool alive = true;
        for (int i = 0; i < m.ell; ++i) {
            if (!orient[i]) continue;
            if (!(S >> i & 1)) throw ValidationError("inclusion: component not in the sublink");
            if ((orient[i] > 0 && t[i] <= -kInf) || (orient[i] < 0 && t[i] >= kInf))
                throw ValidationError("inclusion: infinite exponent");
            if (std::abs(t[i]) >= kInf) continue;
            int v = std::max(orient[i] * (d.alex2[x][i] - t[i]), 0);
            if (v % 2) throw InvariantError("inclusion: Alexander grading off the lattice");
            if (v / 2 >= delta) alive = false;
            else mono |= TruncatedRing::unit(i, v / 2);
        }
        if (alive) out.add_mono(x, x, mono);
    }
    return out;
}

PhiMap phi_map(const SystemModel& m, int S, const std::vector<int>& orient, const Point& t, int delta) {
    auto [n, neg] = sublink_masks(orient);
    if (n == 0 || (n & ~S)) throw ValidationError("phi: oriented sublink must be a nonempty part of the ambient sublink");
    for (int j = 0; j < m.ell; ++j)
        if ((S >> j & 1) && std::abs(t[j]) >= kInf) throw ValidationError("phi: finite coordinates required");
    const int T = S & ~n;
    PhiMap out;
    out.target_mask = T;
    out.target.assign(m.ell, 0);
    for (int j = 0; j < m.ell; ++j) {
        if (!(T >> j & 1)) continue;
        out.target[j] = t[j];
        for (int i = 0; i < m.ell; ++i) out.target[j] -= orient[i] * m.lk[j][i];
    }
    const SublinkData& src = m.sub[S];
    const SublinkData& dst = m.sub[T];
    const MonoMatrix* data = destab_data(m, S, n, neg);
    MonoMatrix id;
    if (!data) {
        for (int x = 0; x < src.size(); ++x) id.push_back({x, x, std::vector<int>(m.num_vars(), 0)});
        data = &id;
    }
    TruncatedRing r{m.num_vars(), delta};
    out.map = RMat(r, dst.size(), src.size());
    for (const MonoEntry& e : *data) {
        std::vector<int> ex = e.exp;
        for (int j = 0; j < m.ell; ++j) {
            int v = 0;
            if (T >> j & 1)
                v = std::max(src.alex2[e.from][j] - t[j], 0) - std::max(dst.alex2[e.to][j] - out.target[j], 0);
            else if (orient[j])
                v = std::max(orient[j] * (src.alex2[e.from][j] - t[j]), 0);
            if (v % 2) throw InvariantError("phi: odd exponent, Alexander data off the lattice");
            ex[j] += v / 2;
        }
        Mono mono = 0;
        bool alive = true;
        for (int v = 0; v < m.num_vars(); ++v) {
            if (ex[v] < 0)
                throw InvariantError("phi: negative exponent on " + src.names[e.from] + "->" + dst.names[e.to]);
            if (ex[v] >= delta) alive = false;
            else mono |= TruncatedRing::unit(v, ex[v]);
        }
        if (alive) out.map.add_mono(e.to, e.from, mono);
    }
    return out;
}

Truncation parse_truncation(const std::string& s) {
    if (s == "knot_b") return Truncation::KnotB;
    if (s == "combined") return Truncation::Combined;
    if (s == "folded") return Truncation::Folded;
    if (s == "vertical_only") return Truncation::VerticalOnly;
    throw ValidationError("unknown truncation mode '" + s + "'");
}

std::string truncation_name(Truncation t) {
    switch (t) {
        case Truncation::KnotB: return "knot_b";
        case Truncation::Combined: return "combined";
        case Truncation::Folded: return "folded";
        case Truncation::VerticalOnly: return "vertical_only";
    }
    return "?";
}

// ---- regions ----

namespace {

constexpr int kZetaDen[] = {7, 11, 13, 17};
constexpr int kMaxSurgeryComponents = 4;

// Lattice points (with the given parities) of the half-open parallelepiped
// corner + zeta + [0,1)^l . sides, in doubled coordinates.
struct Parallelepiped {
    int ell = 0;
    IVec corner;     // integer part of the corner
    IMat sides;      // rows
    IMat adj;        // adjugate of the matrix whose columns are the sides
    long long det = 0;
    long long zscale = 1;
    IVec zeta;       // zscale * zeta

    Parallelepiped(IVec c, IMat s) : ell(int(c.size())), corner(std::move(c)), sides(std::move(s)) {
        IMat w(ell, IVec(ell));
        for (int i = 0; i < ell; ++i)
            for (int k = 0; k < ell; ++k) w[i][k] = sides[k][i];
        det = determinant(w);
        if (det == 0) throw ValidationError("truncation region is degenerate");
        adj = adjugate(w);
        for (int i = 0; i < ell; ++i) zscale *= kZetaDen[i];
        for (int i = 0; i < ell; ++i) zeta.push_back(zscale / kZetaDen[i]);
    }

    // floor of the side coordinates of s
    IVec floors(const Point& s) const {
        IVec y(ell), f(ell);
        for (int i = 0; i < ell; ++i) y[i] = zscale * (s[i] - corner[i]) - zeta[i];
        for (int k = 0; k < ell; ++k) {
            long long w = 0;
            for (int i = 0; i < ell; ++i) w += adj[k][i] * y[i];
            f[k] = floor_div(w, det * zscale);
        }
        return f;
    }

    bool contains(const Point& s) const {
        for (long long v : floors(s))
            if (v != 0) return false;
        return true;
    }

    std::vector<Point> points(const std::vector<int>& parity) const {
        IVec lo(ell, 0), hi(ell, 0);
        for (int i = 0; i < ell; ++i) lo[i] = hi[i] = corner[i];
        for (int mask = 0; mask < (1 << ell); ++mask)
            for (int i = 0; i < ell; ++i) {
                long long v = corner[i];
                for (int k = 0; k < ell; ++k)
                    if (mask >> k & 1) v += sides[k][i];
                lo[i] = std::min(lo[i], v - 2);
                hi[i] = std::max(hi[i], v + 2);
            }
        std::vector<Point> out;
        Point s(ell);
        std::function<void(int)> rec = [&](int i) {
            if (i == ell) {
                if (contains(s)) out.push_back(s);
                return;
            }
            long long start = lo[i];
            if (((start - parity[i]) % 2 + 2) % 2) ++start;
            for (long long v = start; v <= hi[i]; v += 2) {
                s[i] = int(v);
                rec(i + 1);
            }
        };
        rec(0);
        return out;
    }
};

struct Region {
    Truncation mode;
    int ell = 0;
    std::vector<Parallelepiped> boxes;  // combined / folded, per eps
    IVec lo, hi;                        // knot_b / vertical_only, per eps for knot_b
    std::vector<std::pair<int, int>> knot;  // knot_b: doubled [lo, hi] per eps
    int b = 0;

    bool contains(int eps, const Point& s) const {
        switch (mode) {
            case Truncation::KnotB: return s[0] >= knot[eps].first && s[0] <= knot[eps].second;
            case Truncation::VerticalOnly:
                for (int i = 0; i < ell; ++i)
                    if (std::abs(s[i]) > 2 * b) return false;
                return true;
            default: return boxes[eps].contains(s);
        }
    }

    std::vector<Point> points(int eps, const std::vector<int>& parity) const {
        std::vector<Point> out;
        if (mode == Truncation::KnotB) {
            for (int v = knot[eps].first; v <= knot[eps].second; ++v)
                if (((v - parity[0]) % 2 + 2) % 2 == 0) out.push_back({v});
            return out;
        }
        if (mode == Truncation::VerticalOnly) {
            Point s(ell);
            std::function<void(int)> rec = [&](int i) {
                if (i == ell) {
                    out.push_back(s);
                    return;
                }
                for (int v = -2 * b; v <= 2 * b; ++v)
                    if (((v - parity[i]) % 2 + 2) % 2 == 0) {
                        s[i] = v;
                        rec(i + 1);
                    }
            };
            rec(0);
            return out;
        }
        out = boxes[eps].points(parity);
        std::sort(out.begin(), out.end());
        return out;
    }
};

// Degree defect of Phi^{-L_i} relative to the 2 s_i increment of nu, read off the model.
std::vector<int> nu_shift(const SystemModel& m) {
    std::vector<int> kappa(m.ell, 0);
    const int S = m.full();
    const int big = 60;
    Point t = m.offset2();
    for (int i = 0; i < m.ell; ++i) {
        std::vector<int> orient(m.ell, 0);
        orient[i] = -1;
        PhiMap pm = phi_map(m, S, orient, t, big);
        bool found = false;
        for (int x = 0; x < pm.map.cols() && !found; ++x)
            for (const auto& e : pm.map.col(x)) {
                const Mono mono = e.val.terms()[0];
                int mu_s = sublink_maslov(m, S, t, x);
                int mu_t = sublink_maslov(m, pm.target_mask, pm.target, e.row);
                kappa[i] = mu_s - mu_t + 2 * pm.map.ring().degree(mono) - t[i];
                found = true;
                break;
            }
    }
    return kappa;
}

}  // namespace

int default_b(const SystemModel& model, const Framing& f) {
    int a2 = 0, lam = 0;
    for (const SublinkData& d : model.sub)
        for (const auto& row : d.alex2)
            for (int v : row) a2 = std::max(a2, std::abs(v));
    for (int i = 0; i < f.ell(); ++i) lam = std::max(lam, std::abs(f.c[i][i]));
    return (a2 + 2 * (lam + 2) + 1) / 2;
}

std::vector<int> default_m(const SystemModel& model, const Framing& f, int b) {
    (void)model;
    long long det = std::llabs(f.det());
    std::vector<int> m(f.ell());
    for (int i = 0; i < f.ell(); ++i) {
        long long off = 0;
        for (int j = 0; j < f.ell(); ++j)
            if (j != i) off += std::abs(f.c[i][j]);
        long long v = 4 * (b + off);
        if (det > 1) v = (v + det - 1) / det * det;
        m[i] = int(v);
    }
    return m;
}

SurgeryComplex assemble(const SystemModel& model, const Framing& f, const SurgeryOptions& opt) {
    model.validate();
    const int ell = model.ell;
    if (f.ell() != ell) throw ValidationError("framing size does not match the model");
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j)
            if (i != j && f.c[i][j] != model.lk[i][j])
                throw ValidationError("framing off-diagonal entries must be the linking numbers of the model");
    if (opt.delta < 1) throw ValidationError("delta must be positive");
    const int D = opt.build_delta ? opt.build_delta : 2 * opt.delta;
    if (D < opt.delta) throw ValidationError("build truncation below delta");

    SurgeryComplex sc;
    sc.mode = opt.mode;
    sc.delta = opt.delta;
    sc.b = opt.b > 0 ? opt.b : default_b(model, f);

    Region reg;
    reg.mode = opt.mode;
    reg.ell = ell;
    reg.b = sc.b;
    const long long det = f.det();
    std::vector<std::vector<int>> lt;  // 2 (Lambda + diag m), doubled sides
    switch (opt.mode) {
        case Truncation::KnotB: {
            if (ell != 1) throw ValidationError("knot_b truncation needs a knot");
            const int lam = f.c[0][0];
            if (lam == 0) throw ValidationError("knot_b truncation needs nonzero framing; use vertical_only");
            reg.knot = {{-2 * sc.b, 2 * sc.b}, {2 * (-sc.b + lam), 2 * sc.b}};
            sc.orientation = lam > 0 ? "quotient" : "subcomplex";
            break;
        }
        case Truncation::VerticalOnly: break;
        case Truncation::Combined:
        case Truncation::Folded: {
            if (det == 0) throw ValidationError("combined and folded truncations need a nondegenerate framing; use vertical_only");
            if (ell > kMaxSurgeryComponents) throw ValidationError("too many components for parallelepiped truncation");
            sc.m = opt.m.empty() ? default_m(model, f, sc.b) : opt.m;
            if (int(sc.m.size()) != ell) throw ValidationError("need one m_i per component");
            lt.assign(ell, std::vector<int>(ell));
            for (int k = 0; k < ell; ++k)
                for (int j = 0; j < ell; ++j) lt[k][j] = 2 * (f.c[k][j] + (k == j ? sc.m[k] : 0));
            for (int eps = 0; eps < (1 << ell); ++eps) {
                IVec corner(ell, 0);
                IMat sides(ell, IVec(ell));
                for (int k = 0; k < ell; ++k)
                    for (int j = 0; j < ell; ++j) {
                        int e = eps >> k & 1;
                        corner[j] += -lt[k][j] / 2 + e * 2 * f.c[k][j];
                        sides[k][j] = lt[k][j] - e * 2 * f.c[k][j];
                    }
                reg.boxes.emplace_back(corner, sides);
            }
            break;
        }
    }

    // generators
    const std::vector<int> parity = model.offset2();
    std::map<std::pair<int, Point>, int> base;
    for (int eps = 0; eps < (1 << ell); ++eps) {
        const int S = model.full() & ~eps;
        for (const Point& s : reg.points(eps, parity)) {
            base[{eps, s}] = int(sc.index.size());
            for (int x = 0; x < model.sub[S].size(); ++x) sc.index.emplace_back(eps, s, x);
        }
    }
    const int n = int(sc.index.size());
    if (n > 2'000'000) throw ValidationError("surgery complex too large; lower m or b");
    TruncatedRing ring{model.num_vars(), D};
    sc.complex = GradedComplex(ring, n);
    sc.complex.graded = opt.mode != Truncation::Folded;

    auto add_block = [&](int src_base, int dst_base, const RMat& mp) {
        for (int x = 0; x < mp.cols(); ++x)
            for (const auto& e : mp.col(x)) sc.complex.d.add(dst_base + e.row, src_base + x, e.val);
    };

    for (const auto& [key, src_base] : base) {
        const auto& [eps, s] = key;
        const int S = model.full() & ~eps;
        const Point t = sublink_point(model, eps, s);
        add_block(src_base, src_base, sublink_complex(model, S, t, D).d);
        // nonempty oriented sublinks of S
        for (int nmask = S; nmask; nmask = (nmask - 1) & S) {
            for (int neg = nmask;; neg = (neg - 1) & nmask) {
                std::vector<int> orient(ell, 0);
                for (int i = 0; i < ell; ++i)
                    if (nmask >> i & 1) orient[i] = (neg >> i & 1) ? -1 : 1;
                PhiMap pm = phi_map(model, S, orient, t, D);
                const int eps2 = eps | nmask;
                Point s2 = s;
                for (int i = 0; i < ell; ++i)
                    if (neg >> i & 1)
                        for (int j = 0; j < ell; ++j) s2[j] += 2 * f.c[i][j];
                if (!pm.map.zero()) {
                    if (reg.contains(eps2, s2)) {
                        add_block(src_base, base.at({eps2, s2}), pm.map);
                    } else if (opt.mode == Truncation::Folded) {
                        const Parallelepiped& box = reg.boxes[eps2];
                        IVec fl = box.floors(s2);
                        Point sf = s2;
                        for (int k = 0; k < ell; ++k)
                            for (int j = 0; j < ell; ++j) sf[j] -= int(fl[k] * box.sides[k][j]);
                        const int T2 = model.full() & ~eps2;
                        RMat cur = pm.map;
                        for (int k = 0; k < ell; ++k) {
                            if ((eps2 >> k & 1) || fl[k] == 0) continue;
                            if (std::llabs(fl[k]) > 1)
                                throw InvariantError("folded truncation: region too small for the framing (raise m)");
                            if (fl[k] > 0) {
                                auto it = model.fold.find({T2, k});
                                if (it != model.fold.end())
                                    cur = mono_matrix(model, it->second, model.sub[T2].size(), model.sub[T2].size(), D) * cur;
                            } else {
                                Point tt = sublink_point(model, eps2, sf);
                                for (int j = 0; j < ell; ++j)
                                    if (T2 >> j & 1) tt[j] -= lt[k][j];
                                std::vector<int> ok(ell, 0);
                                ok[k] = -1;
                                PhiMap io = phi_map(model, T2, ok, tt, D);
                                if (io.map.rows() != cur.rows())
                                    throw ValidationError("folded truncation needs equal generator sets across the crossed face");
                                cur = io.map * cur;
                            }
                            ++sc.crossovers;
                        }
                        auto it = base.find({eps2, sf});
                        if (it == base.end()) throw InvariantError("folded point outside its region");
                        add_block(src_base, it->second, cur);
                    }
                }
                if (neg == 0) break;
            }
        }
    }

    // Spin^c classes
    std::map<IVec, int> cls;
    sc.spinc.resize(n);
    for (int g = 0; g < n; ++g) {
        const Point& s = std::get<1>(sc.index[g]);
        IVec key = spinc_key(f, s, parity);
        auto [it, fresh] = cls.emplace(key, int(cls.size()));
        if (fresh) sc.reps.push_back(s);
        sc.spinc[g] = it->second;
        if (std::get<0>(sc.index[g]) == 0 && s < sc.reps[it->second]) sc.reps[it->second] = s;
    }
    // A class first seen at eps != 0 keeps that point only if no eps = 0 member exists.
    for (auto& [key, id] : cls) {
        Point best;
        for (int g = 0; g < n; ++g)
            if (sc.spinc[g] == id && std::get<0>(sc.index[g]) == 0) {
                best = std::get<1>(sc.index[g]);
                break;
            }
        if (!best.empty()) sc.reps[id] = best;
    }
    sc.d.resize(sc.reps.size());
    for (std::size_t k = 0; k < sc.reps.size(); ++k) sc.d[k] = d_of_u(f, sc.reps[k]);

    // gradings: mu = mu^M + nu(s) - |M|, with nu normalized to nu(s + Lambda_i) = nu(s) + 2 s_i + kappa_i
    if (sc.complex.graded) {
        for (long long d : sc.d)
            if (d != 0) sc.complex.graded = false;
    }
    if (sc.complex.graded) {
        // nu is based at the class member nearest the origin, so gradings do not move with the region
        auto norm = [](const Point& s) {
            long long v = 0;
            for (int x : s) v += 1LL * x * x;
            return v;
        };
        std::vector<Point> origin = sc.reps;
        for (int g = 0; g < n; ++g) {
            const Point& s = std::get<1>(sc.index[g]);
            Point& o = origin[sc.spinc[g]];
            if (std::get<0>(sc.index[g]) == 0 && std::pair(norm(s), s) < std::pair(norm(o), o)) o = s;
        }
        std::vector<int> kappa = nu_shift(model);
        for (int g = 0; g < n; ++g) {
            const auto& [eps, s, x] = sc.index[g];
            const Point& rep = origin[sc.spinc[g]];
            IVec a = class_coefficients(f, s, rep);
            long long v = nu(f, s, rep);
            for (int i = 0; i < ell; ++i) v += a[i] * (kappa[i] - f.c[i][i]);
            const int S = model.full() & ~eps;
            sc.complex.grading[g] = sublink_maslov(model, S, sublink_point(model, eps, s), x) + int(v) - std::popcount(unsigned(eps));
        }
    }
    return sc;
}

std::vector<ClassHomology> surgery_homology(const SurgeryComplex& sc) {
    std::vector<int> kept;
    GradedComplex red = cancel_units(sc.complex, &kept);
    std::vector<std::vector<int>> members(sc.reps.size());
    for (int i = 0; i < red.size(); ++i) members[sc.spinc[kept[i]]].push_back(i);
    std::vector<ClassHomology> out;
    for (std::size_t k = 0; k < sc.reps.size(); ++k) {
        ClassHomology h;
        h.rep = sc.reps[k];
        h.d = sc.d[k];
        h.graded = red.graded;
        GradedComplex part = red.restrict_to(members[k]);
        if (part.size() > 0) {
            h.raw = homology_ranks(part.truncate(sc.delta));
            h.stable = stable_ranks(part, sc.delta);
        }
        out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(), [](const ClassHomology& a, const ClassHomology& b) { return a.rep < b.rep; });
    return out;
}

SurgeryReport check_complex(const SurgeryComplex& sc) {
    SurgeryReport rep;
    const GradedComplex& c = sc.complex;
    auto describe = [&](int g) {
        const auto& [eps, s, x] = sc.index[g];
        return "(eps=" + std::to_string(eps) + ", s=" + value_str(s) + ", x=" + std::to_string(x) + ")";
    };
    if (auto bad = c.square_defect()) {
        rep.square_zero = false;
        rep.problems.push_back("D^2 != 0 from " + describe(bad->first) + " to " + describe(bad->second));
    }
    for (int x = 0; x < c.size(); ++x)
        for (const auto& e : c.d.col(x)) {
            if (sc.spinc[e.row] != sc.spinc[x]) {
                if (rep.spinc_preserved)
                    rep.problems.push_back("Spin^c class changes from " + describe(x) + " to " + describe(e.row));
                rep.spinc_preserved = false;
            }
            if (!c.graded) continue;
            for (Mono m : e.val.terms())
                if (c.grading[x] - c.grading[e.row] + 2 * c.ring.degree(m) != 1) {
                    if (!rep.grading_defects)
                        rep.problems.push_back("grading does not drop by one from " + describe(x) + " to " + describe(e.row));
                    ++rep.grading_defects;
                }
        }
    return rep;
}

namespace {

GradedComplex mapping_cone(const GradedComplex& a, const GradedComplex& b, const RMat& f) {
    GradedComplex c(a.ring, a.size() + b.size());
    c.graded = false;
    c.d.place(a.d, 0, 0);
    c.d.place(b.d, a.size(), a.size());
    c.d.place(f, a.size(), 0);
    return c;
}

}  // namespace

std::vector<std::string> edge_witnesses(const SystemModel& model, int b, int delta) {
    std::vector<std::string> bad;
    const int ell = model.ell;
    for (int S = 1; S <= model.full(); ++S)
        for (int i = 0; i < ell; ++i) {
            if (!(S >> i & 1)) continue;
            std::vector<int> par(ell, 0);
            for (int j = 0; j < ell; ++j)
                for (int k = 0; k < ell; ++k)
                    if ((S >> k & 1) && (S >> j & 1)) par[j] += model.lk[j][k];
            // sample: s_i just outside [-b, b], other coordinates at -b-1, 0, b+1
            std::vector<Point> samples{Point(ell, 0)};
            for (int j = 0; j < ell; ++j) {
                std::vector<Point> next;
                std::vector<int> vals = j == i ? std::vector<int>{2 * b + 2, -2 * b - 2}
                                               : ((S >> j & 1) ? std::vector<int>{-2 * b - 2, 0, 2 * b + 2} : std::vector<int>{0});
                for (const Point& p : samples)
                    for (int v : vals) {
                        Point q = p;
                        q[j] = v + ((v - par[j]) % 2 ? 1 : 0);
                        next.push_back(q);
                    }
                samples = next;
            }
            for (const Point& t : samples) {
                std::vector<int> orient(ell, 0);
                orient[i] = t[i] > 0 ? 1 : -1;
                PhiMap pm = phi_map(model, S, orient, t, delta);
                GradedComplex a = sublink_complex(model, S, t, delta);
                GradedComplex c = sublink_complex(model, pm.target_mask, pm.target, delta);
                if (total(homology_ranks(mapping_cone(a, c, pm.map))) != 0)
                    bad.push_back(std::string(orient[i] > 0 ? "+" : "-") + "L" + std::to_string(i + 1) + " on sublink mask " +
                                  std::to_string(S) + " at " + value_str(t));
            }
        }
    return bad;
}

Hyperbox positive_cube(const SystemModel& model, const Point& s, int delta) {
    const int ell = model.ell;
    Hyperbox h(TruncatedRing{model.num_vars(), delta}, std::vector<int>(ell, 1));
    for (int eps = 0; eps < (1 << ell); ++eps)
        h.vertex[eps] = sublink_complex(model, model.full() & ~eps, sublink_point(model, eps, s), delta);
    for (int eps = 0; eps < (1 << ell); ++eps) {
        const int S = model.full() & ~eps;
        const Point t = sublink_point(model, eps, s);
        for (int nmask = S; nmask; nmask = (nmask - 1) & S) {
            std::vector<int> orient(ell, 0);
            for (int i = 0; i < ell; ++i)
                if (nmask >> i & 1) orient[i] = 1;
            h.set_map(eps, Letters(nmask), phi_map(model, S, orient, t, delta).map);
        }
    }
    return h;
}

}  // namespace hfl
