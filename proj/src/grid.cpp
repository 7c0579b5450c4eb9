// grid.cpp

#include "hfl/grid.hpp"
#include "hfl/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hfl {

std::string half_str(int v) {
    if (v >= kInf) return "inf";
    if (v <= -kInf) return "-inf";
    if (v % 2 == 0) return std::to_string(v / 2);
    return std::to_string(v) + "/2";
}

std::string value_str(const ExtendedValue& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + half_str(s[i]);
    return out + ")";
}

ExtendedValue parse_value(const std::string& text) {
    ExtendedValue out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return c == ' ' || c == '\t'; }), tok.end());
        if (tok.empty()) throw ValidationError("empty entry in value list '" + text + "'");
        if (tok == "inf" || tok == "+inf") {
            out.push_back(kInf);
            continue;
        }
        if (tok == "-inf") {
            out.push_back(-kInf);
            continue;
        }
        try {
            std::size_t pos = 0;
            int a = std::stoi(tok, &pos);
            if (pos == tok.size()) {
                out.push_back(2 * a);
            } else if (tok.substr(pos) == "/2") {
                out.push_back(a);
            } else {
                throw ValidationError("");
            }
        } catch (const std::exception&) {
            throw ValidationError("cannot read '" + tok + "' as a half-integer or +-inf");
        }
        if (std::abs(out.back()) >= kInf) throw ValidationError("value '" + tok + "' is too large");
    }
    return out;
}

// ---------------------------------------------------------------- diagrams

GridDiagram make_grid(int n, std::vector<int> O, std::vector<int> X) {
    if (n < 1 || n > 12) throw ValidationError("grid: n must lie in 1..12");
    if (int(O.size()) != n || int(X.size()) != n) throw ValidationError("grid: expected " + std::to_string(n) + " entries per marking line");
    std::vector<int> orow(n, -1), xrow(n, -1);
    for (int c = 0; c < n; ++c) {
        if (O[c] < 0 || O[c] >= n) throw ValidationError("grid: O row out of range in column " + std::to_string(c));
        if (orow[O[c]] >= 0) throw ValidationError("grid: two O markings in row " + std::to_string(O[c]));
        orow[O[c]] = c;
        if (X[c] == -1) continue;
        if (X[c] < 0 || X[c] >= n) throw ValidationError("grid: X row out of range in column " + std::to_string(c));
        if (xrow[X[c]] >= 0) throw ValidationError("grid: two X markings in row " + std::to_string(X[c]));
        xrow[X[c]] = c;
        if (X[c] == O[c]) throw ValidationError("grid: X and O share the cell in column " + std::to_string(c));
    }
    // a free O has neither an X in its row nor in its column
    for (int c = 0; c < n; ++c) {
        const bool row_has_x = xrow[O[c]] >= 0, col_has_x = X[c] >= 0;
        if (row_has_x != col_has_x)
            throw ValidationError("grid: the O in column " + std::to_string(c) + (row_has_x ? " has an X in its row but not in its column" : " has an X in its column but not in its row"));
    }

    GridDiagram g;
    g.n = n;
    g.O = std::move(O);
    g.X = std::move(X);
    g.o_var.assign(n, -1);
    g.x_comp.assign(n, -1);
    // O at column c -> X in the same row -> O in that X's column
    for (int c = 0; c < n; ++c) {
        if (g.X[c] < 0 || g.o_var[c] >= 0) continue;
        int id = g.ell++, size = 0;
        for (int cur = c; g.o_var[cur] < 0;) {
            g.o_var[cur] = id;
            ++size;
            int xc = xrow[g.O[cur]];
            g.x_comp[xc] = id;
            cur = xc;
        }
        g.comp_size.push_back(size);
    }
    for (int c = 0; c < n; ++c)
        if (g.X[c] < 0) g.o_var[c] = g.ell + g.q++;
    if (g.num_vars() > kMaxVars) throw ValidationError("grid: more than " + std::to_string(kMaxVars) + " U variables");

    // vertical arcs pass over horizontal ones
    g.lk.assign(g.ell, std::vector<int>(g.ell, 0));
    std::vector<std::vector<int>> twice(g.ell, std::vector<int>(g.ell, 0));
    for (int vc = 0; vc < n; ++vc) {
        if (g.X[vc] < 0) continue;
        const int vlo = std::min(g.X[vc], g.O[vc]), vhi = std::max(g.X[vc], g.O[vc]);
        const int vy = g.O[vc] > g.X[vc] ? 1 : -1;
        for (int r = vlo + 1; r < vhi; ++r) {
            const int co = orow[r], cx = xrow[r];
            if (cx < 0) continue;
            if (vc <= std::min(co, cx) || vc >= std::max(co, cx)) continue;
            const int hx = cx > co ? 1 : -1;
            const int sign = -vy * hx;
            const int a = g.x_comp[vc], b = g.o_var[co];
            if (a == b) continue;
            twice[a][b] += sign;
            twice[b][a] += sign;
        }
    }
    for (int a = 0; a < g.ell; ++a)
        for (int b = 0; b < g.ell; ++b) {
            if (twice[a][b] % 2) throw InvariantError("grid: odd crossing count between two components");
            g.lk[a][b] = twice[a][b] / 2;
        }
    g.offset2.assign(g.ell, 0);
    for (int a = 0; a < g.ell; ++a) g.offset2[a] = std::accumulate(g.lk[a].begin(), g.lk[a].end(), 0);
    return g;
}

GridDiagram parse_grid(const std::string& text) {
    int n = -1;
    std::vector<int> O, X;
    bool haveO = false, haveX = false;
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), '/', '\n');
    std::stringstream ss(norm);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::stringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        auto fail = [&](const std::string& why) { throw ValidationError("grid line " + std::to_string(lineno) + ": " + why); };
        if (head.rfind("n=", 0) == 0 || head == "n") {
            std::string rest = head.size() > 2 ? head.substr(2) : "";
            std::string more;
            while (ls >> more) rest += more;
            if (!rest.empty() && rest[0] == '=') rest.erase(0, 1);
            try {
                std::size_t pos = 0;
                n = std::stoi(rest, &pos);
                if (pos != rest.size()) fail("bad grid number");
            } catch (const std::invalid_argument&) {
                fail("bad grid number");
            }
        } else if (head == "O:" || head == "X:") {
            auto& dst = head == "O:" ? O : X;
            (head == "O:" ? haveO : haveX) = true;
            std::string tok;
            while (ls >> tok) {
                if (tok == "-" && head == "X:") {
                    dst.push_back(-1);
                    continue;
                }
                try {
                    std::size_t pos = 0;
                    int v = std::stoi(tok, &pos);
                    if (pos != tok.size() || v < 0) fail("bad entry '" + tok + "'");
                    dst.push_back(v);
                } catch (const std::invalid_argument&) {
                    fail("bad entry '" + tok + "'");
                }
            }
        } else {
            fail("expected n=, O: or X:");
        }
    }
    if (n < 0 || !haveO || !haveX) throw ValidationError("grid: need the lines n=, O: and X:");
    return make_grid(n, O, X);
}

std::string grid_text(const GridDiagram& g) {
    std::ostringstream os;
    os << "n=" << g.n << "\nO:";
    for (int r : g.O) os << ' ' << r;
    os << "\nX:";
    for (int r : g.X) {
        if (r < 0) os << " -";
        else os << ' ' << r;
    }
    os << "\n";
    return os.str();
}

GridDiagram translate(const GridDiagram& g, int dc, int dr) {
    const int n = g.n;
    std::vector<int> O(n), X(n);
    for (int c = 0; c < n; ++c) {
        int nc = ((c + dc) % n + n) % n;
        O[nc] = (g.O[c] + dr % n + n) % n;
        X[nc] = g.X[c] < 0 ? -1 : (g.X[c] + dr % n + n) % n;
    }
    return make_grid(n, O, X);
}

// ---------------------------------------------------------------- gradings

namespace {

struct Pt {
    int x, y;  // doubled coordinates
};

int I(const std::vector<Pt>& P, const std::vector<Pt>& Q) {
    int c = 0;
    for (const Pt& p : P)
        for (const Pt& q : Q)
            if (p.x < q.x && p.y < q.y) ++c;
    return c;
}

// 2 J(P, Q)
int J2(const std::vector<Pt>& P, const std::vector<Pt>& Q) { return I(P, Q) + I(Q, P); }

}  // namespace

GridGenerators grid_generators(const GridDiagram& g) {
    const int n = g.n;
    if (n > 9) throw ValidationError("grid: generator enumeration is limited to n <= 9");
    std::vector<Pt> Os, Xs, XO;
    std::vector<std::vector<Pt>> Oi(g.ell), Xi(g.ell);
    for (int c = 0; c < n; ++c) {
        Pt o{2 * c + 1, 2 * g.O[c] + 1};
        Os.push_back(o);
        XO.push_back(o);
        if (g.o_var[c] < g.ell) Oi[g.o_var[c]].push_back(o);
        if (g.X[c] >= 0) {
            Pt x{2 * c + 1, 2 * g.X[c] + 1};
            Xs.push_back(x);
            XO.push_back(x);
            Xi[g.x_comp[c]].push_back(x);
        }
    }
    const int joo = J2(Os, Os);
    std::vector<int> const_a(g.ell);
    for (int i = 0; i < g.ell; ++i) const_a[i] = J2(XO, Xi[i]) - J2(XO, Oi[i]) + 2 * (g.comp_size[i] - 1);

    GridGenerators out;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        std::vector<Pt> x;
        for (int c = 0; c < n; ++c) x.push_back({2 * c, 2 * p[c]});
        const int m2 = J2(x, x) - 2 * J2(x, Os) + joo + 2;
        if (m2 % 2) throw InvariantError("grid: half-integral Maslov grading");
        std::vector<int> a2(g.ell);
        for (int i = 0; i < g.ell; ++i) {
            // 4 A_i = 2 (2J(x, X_i) - 2J(x, O_i)) - (2J(X+O, X_i - O_i)) - 2(n_i - 1)
            const int a4 = 2 * (J2(x, Xi[i]) - J2(x, Oi[i])) - const_a[i];
            if (a4 % 2) throw InvariantError("grid: Alexander grading off the half-integer lattice");
            a2[i] = a4 / 2;
        }
        out.perm.push_back(p);
        out.maslov.push_back(m2 / 2);
        out.alex2.push_back(std::move(a2));
    } while (std::next_permutation(p.begin(), p.end()));
    // land in lk(L_i, L - L_i)/2 + Z; the additive constant is a convention
    for (int i = 0; i < g.ell; ++i)
        if (!out.alex2.empty() && ((out.alex2[0][i] - g.offset2[i]) % 2 != 0))
            for (auto& a : out.alex2) a[i] -= 1;
    return out;
}

std::vector<Rectangle> empty_rectangles(const GridDiagram& g, const GridGenerators& gens) {
    const int n = g.n;
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < gens.perm.size(); ++i) index[gens.perm[i]] = int(i);
    auto inside = [n](int v, int lo, int len) { return ((v - lo) % n + n) % n < len; };
    std::vector<Rectangle> out;
    for (std::size_t xi = 0; xi < gens.perm.size(); ++xi) {
        const auto& x = gens.perm[xi];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                const int w = ((b - a) % n + n) % n, h = ((x[b] - x[a]) % n + n) % n;
                bool empty = true;
                for (int c = 0; c < n && empty; ++c)
                    if (c != a && inside(c, a, w) && x[c] != x[a] && inside(x[c], x[a], h)) empty = false;
                if (!empty) continue;
                Rectangle r;
                r.from = int(xi);
                auto y = x;
                std::swap(y[a], y[b]);
                r.to = index.at(y);
                r.left = a;
                r.bottom = x[a];
                r.width = w;
                r.height = h;
                r.o.assign(g.num_vars(), 0);
                r.x.assign(g.ell, 0);
                for (int c = 0; c < n; ++c) {
                    if (!inside(c, a, w)) continue;
                    if (inside(g.O[c], x[a], h)) ++r.o[g.o_var[c]];
                    if (g.X[c] >= 0 && inside(g.X[c], x[a], h)) ++r.x[g.x_comp[c]];
                }
                out.push_back(std::move(r));
            }
    }
    return out;
}

int rect_exponent(int a2_from, int a2_to, int s2, int o, int x) {
    if (s2 >= kInf) return o;
    if (s2 <= -kInf) return x;
    const int d = std::max(s2 - a2_from, 0) - std::max(s2 - a2_to, 0);
    if (d % 2) throw InvariantError("rectangle exponent is not an integer");
    return d / 2 + x;
}

int grid_grading(const GridGenerators& gens, int x, const ExtendedValue& s) {
    int mu = gens.maslov[x];
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int a = gens.alex2[x][i];
        if (s[i] >= kInf) continue;
        mu -= s[i] <= -kInf ? a : std::max(a - s[i], 0);
    }
    return mu;
}

void check_value(const GridDiagram& g, const ExtendedValue& s) {
    if (int(s.size()) != g.ell)
        throw ValidationError("expected " + std::to_string(g.ell) + " values of s, got " + std::to_string(s.size()));
    for (int i = 0; i < g.ell; ++i) {
        if (std::abs(s[i]) >= kInf) continue;
        if ((s[i] - g.offset2[i]) % 2)
            throw ValidationError("s_" + std::to_string(i + 1) + " = " + half_str(s[i]) + " is not in lk(L_i, L - L_i)/2 + Z");
    }
}

GradedComplex grid_complex(const GridDiagram& g, const GridGenerators& gens, const std::vector<Rectangle>& rects,
                           const ExtendedValue& s, int delta) {
    check_value(g, s);
    const TruncatedRing R = g.ring(delta);
    R.check();
    GradedComplex c(R, int(gens.perm.size()));
    for (int x = 0; x < c.size(); ++x) {
        c.grading[x] = grid_grading(gens, x, s);
        std::string name;
        for (int r : gens.perm[x]) name += char('0' + r);
        c.names.push_back(name);
    }
    for (const Rectangle& r : rects) {
        Mono m = 0;
        bool alive = true;
        for (int v = 0; v < g.num_vars(); ++v) {
            int e = v < g.ell ? rect_exponent(gens.alex2[r.from][v], gens.alex2[r.to][v], s[v], r.o[v], r.x[v]) : r.o[v];
            if (e < 0) throw InvariantError("negative U exponent on a rectangle");
            if (e >= delta) alive = false;
            else m |= TruncatedRing::unit(v, e);
        }
        if (alive) c.d.add_mono(r.to, r.from, m);
    }
    return c;
}

GradedComplex build_complex(const GridDiagram& g, const ExtendedValue& s, int delta) {
    GridGenerators gens = grid_generators(g);
    return grid_complex(g, gens, empty_rectangles(g, gens), s, delta);
}

ExtendedValue p_map(const ExtendedValue& s, const std::vector<int>& orient) {
    ExtendedValue out = s;
    for (std::size_t i = 0; i < s.size() && i < orient.size(); ++i) {
        if (orient[i] > 0) out[i] = kInf;
        if (orient[i] < 0) out[i] = -kInf;
    }
    return out;
}

RMat inclusion_map(const GridDiagram& g, const GridGenerators& gens, const ExtendedValue& s,
                   const std::vector<int>& orient, int delta) {
    check_value(g, s);
    if (int(orient.size()) != g.ell) throw ValidationError("inclusion: orientation vector has the wrong length");
    const TruncatedRing R = g.ring(delta);
    for (int i = 0; i < g.ell; ++i) {
        if (orient[i] > 0 && s[i] <= -kInf) throw ValidationError("inclusion: s_" + std::to_string(i + 1) + " = -inf on a positively oriented component");
        if (orient[i] < 0 && s[i] >= kInf) throw ValidationError("inclusion: s_" + std::to_string(i + 1) + " = +inf on a negatively oriented component");
    }
    const int N = int(gens.perm.size());
    RMat m(R, N, N);
    for (int x = 0; x < N; ++x) {
        Mono mono = 0;
        bool alive = true;
        for (int i = 0; i < g.ell; ++i) {
            if (!orient[i] || std::abs(s[i]) >= kInf) continue;
            const int a = gens.alex2[x][i];
            const int d = orient[i] > 0 ? std::max(a - s[i], 0) : std::max(s[i] - a, 0);
            const int e = d / 2;
            if (e >= delta) alive = false;
            else mono |= TruncatedRing::unit(i, e);
        }
        if (alive) m.add_mono(x, x, mono);
    }
    return m;
}

// ---------------------------------------------------------------- sublinks

GridDiagram reduce(const GridDiagram& g, const std::vector<int>& orient) {
    if (int(orient.size()) != g.ell) throw ValidationError("reduce: orientation vector has the wrong length");
    std::vector<int> O = g.O, X = g.X;
    for (int c = 0; c < g.n; ++c) {
        if (g.X[c] >= 0 && orient[g.x_comp[c]] > 0) X[c] = -1;
        if (g.o_var[c] < g.ell && orient[g.o_var[c]] < 0) {
            // the O goes away and the component's X in this column becomes the O
            O[c] = g.X[c];
            X[c] = -1;
        }
    }
    return make_grid(g.n, O, X);
}

GridDiagram quasi_destabilize(const GridDiagram& g, const std::vector<bool>& in_m, std::vector<int>* comp_map) {
    if (int(in_m.size()) != g.ell) throw ValidationError("quasi-destabilize: sublink vector has the wrong length");
    std::vector<bool> drop_col(g.n, false), drop_row(g.n, false);
    for (int c = 0; c < g.n; ++c)
        if (g.o_var[c] < g.ell && in_m[g.o_var[c]]) {
            drop_col[c] = true;
            drop_row[g.O[c]] = true;
        }
    std::vector<int> new_row(g.n, -1);
    int k = 0;
    for (int r = 0; r < g.n; ++r)
        if (!drop_row[r]) new_row[r] = k++;
    std::vector<int> O, X;
    for (int c = 0; c < g.n; ++c) {
        if (drop_col[c]) continue;
        O.push_back(new_row[g.O[c]]);
        X.push_back(g.X[c] < 0 ? -1 : new_row[g.X[c]]);
    }
    if (O.empty()) throw ValidationError("quasi-destabilize: nothing left of the grid");
    GridDiagram out = make_grid(int(O.size()), O, X);
    if (comp_map) {
        // match components through a surviving O column
        comp_map->assign(g.ell, -1);
        int nc = 0;
        for (int c = 0; c < g.n; ++c) {
            if (drop_col[c]) continue;
            if (g.o_var[c] < g.ell) (*comp_map)[g.o_var[c]] = out.o_var[nc];
            ++nc;
        }
    }
    return out;
}

GradedComplex koszul(const GridDiagram& g, const std::vector<bool>& in_m, int delta) {
    if (int(in_m.size()) != g.ell) throw ValidationError("koszul: sublink vector has the wrong length");
    const TruncatedRing R = g.ring(delta);
    std::vector<int> col_of_row(g.n);
    for (int c = 0; c < g.n; ++c) col_of_row[g.O[c]] = c;
    GradedComplex k(R, 1);
    for (int c = 0; c < g.n; ++c) {
        const int v = g.o_var[c];
        if (v >= g.ell || !in_m[v]) continue;
        const int below = g.o_var[col_of_row[(g.O[c] + g.n - 1) % g.n]];
        RingElement a = RingElement::var(R, v) + RingElement::var(R, below);
        GradedComplex f = cone(R, a);
        if (a.zero()) f.grading = {0, -1};
        k = tensor(k, f);
    }
    return k;
}

}  // namespace hfl
