// models.cpp - built-in complete-system models and their JSON form

#include "hfl/errors.hpp"
#include "hfl/surgery.hpp"

namespace hfl {

namespace {

void need(bool ok, const std::string& what) {
    if (!ok) throw ValidationError("model: " + what);
}

MonoMatrix entries(std::initializer_list<std::tuple<int, int, std::vector<int>>> list) {
    MonoMatrix out;
    for (const auto& [from, to, exp] : list) out.push_back({from, to, exp});
    return out;
}

}  // namespace

void SystemModel::validate() const {
    need(ell >= 1 && ell <= 4, "between 1 and 4 components");
    need(q >= 0 && num_vars() <= kMaxVars, "too many variables");
    need(int(lk.size()) == ell, "linking matrix size");
    for (int i = 0; i < ell; ++i) {
        need(int(lk[i].size()) == ell, "linking matrix size");
        for (int j = 0; j < ell; ++j) need(lk[i][j] == lk[j][i], "linking matrix not symmetric");
    }
    need(int(sub.size()) == (1 << ell), "one generator table per sublink");
    for (int S = 0; S <= full(); ++S) {
        const SublinkData& d = sub[S];
        const std::string where = "sublink " + std::to_string(S);
        need(d.size() > 0, where + " has no generators");
        need(int(d.alex2.size()) == d.size() && int(d.maslov.size()) == d.size(), where + " table sizes");
        for (const auto& a : d.alex2) {
            need(int(a.size()) == ell, where + " Alexander vector size");
            for (int j = 0; j < ell; ++j) {
                if (!(S >> j & 1)) continue;
                int par = 0;
                for (int k = 0; k < ell; ++k)
                    if (S >> k & 1) par += lk[j][k];
                need(((a[j] - par) % 2 + 2) % 2 == 0, where + " Alexander grading off the lattice");
            }
        }
        for (const ModelArrow& a : d.arrows) {
            need(a.from >= 0 && a.from < d.size() && a.to >= 0 && a.to < d.size(), where + " arrow index");
            need(int(a.o.size()) == num_vars() && int(a.x.size()) == ell, where + " arrow count sizes");
            int o_total = 0;
            for (int v : a.o) {
                need(v >= 0, where + " negative O count");
                o_total += v;
            }
            need(d.maslov[a.from] - d.maslov[a.to] == 1 - 2 * o_total, where + " Maslov drop of arrow " + d.names[a.from] + "->" + d.names[a.to]);
            for (int j = 0; j < ell; ++j) {
                need(a.x[j] >= 0, where + " negative X count");
                if (S >> j & 1)
                    need(d.alex2[a.from][j] - d.alex2[a.to][j] == 2 * (a.x[j] - a.o[j]),
                         where + " Alexander drop of arrow " + d.names[a.from] + "->" + d.names[a.to]);
            }
        }
    }
    auto check_entries = [&](const MonoMatrix& mm, int src, int dst, const std::string& where) {
        for (const MonoEntry& e : mm) {
            need(e.from >= 0 && e.from < sub[src].size() && e.to >= 0 && e.to < sub[dst].size(), where + " entry index");
            need(int(e.exp.size()) == num_vars(), where + " exponent size");
            for (int v : e.exp) need(v >= 0, where + " negative exponent");
        }
    };
    for (const auto& [key, mm] : destab) {
        const auto& [S, n, neg] = key;
        need(S >= 0 && S <= full() && n && (n & ~S) == 0 && (neg & ~n) == 0, "destabilization key");
        check_entries(mm, S, S & ~n, "destabilization");
    }
    for (const auto& [key, mm] : fold) {
        const auto& [S, k] = key;
        need(S >= 0 && S <= full() && k >= 0 && k < ell && (S >> k & 1), "fold key");
        check_entries(mm, S, S, "fold");
    }
    need(default_framing.ell() == ell, "framing size");
}

SystemModel unknot_model() {
    SystemModel m;
    m.name = "unknot";
    m.ell = 1;
    m.lk = {{0}};
    for (int S = 0; S < 2; ++S) m.sub.push_back({{"a"}, {{0}}, {0}, {}});
    m.default_framing.c = {{1}};
    return m;
}

// Four generators per sublink; a -> b, c -> d swap under exchanging the components.
SystemModel hopf_model() {
    SystemModel m;
    m.name = "hopf";
    m.ell = 2;
    m.lk = {{0, 1}, {1, 0}};
    const std::vector<std::vector<int>> a2{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    for (int S = 0; S < 4; ++S) {
        SublinkData d;
        d.names = {"a", "b", "c", "d"};
        d.maslov = {1, 0, -1, 0};
        for (const auto& row : a2) {
            std::vector<int> r = row;
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    if (!(S >> k & 1)) r[j] -= m.lk[j][k];
            d.alex2.push_back(r);
        }
        d.arrows = {{1, 0, {1, 0}, {0, 0}}, {1, 2, {0, 0}, {0, 1}}, {3, 0, {0, 1}, {0, 0}}, {3, 2, {0, 0}, {1, 0}}};
        m.sub.push_back(d);
    }
    const MonoMatrix minus1 = entries({{0, 0, {0, 0}}, {2, 0, {0, 0}}, {3, 1, {0, 0}}, {3, 3, {0, 0}}});
    const MonoMatrix minus2 = entries({{0, 0, {0, 0}}, {2, 0, {0, 0}}, {1, 3, {0, 0}}, {1, 1, {0, 0}}});
    m.destab[{3, 1, 1}] = minus1;
    m.destab[{1, 1, 1}] = minus1;
    m.destab[{3, 2, 2}] = minus2;
    m.destab[{2, 2, 2}] = minus2;
    m.destab[{3, 3, 3}] = entries({{0, 1, {0, 0}}, {0, 3, {0, 0}}});
    m.destab[{3, 3, 0}] = {};
    m.destab[{3, 3, 1}] = {};
    m.destab[{3, 3, 2}] = {};
    m.fold[{1, 0}] = entries({{0, 0, {0, 0}}, {1, 3, {0, 0}}, {1, 1, {1, 0}}});
    m.fold[{2, 1}] = entries({{0, 0, {0, 0}}, {3, 1, {0, 0}}, {3, 3, {0, 1}}});
    m.default_framing.c = {{2, 1}, {1, 2}};
    return m;
}

io::json model_to_json(const SystemModel& m) {
    using io::json;
    auto mono = [](const MonoMatrix& mm) {
        json out = json::array();
        for (const MonoEntry& e : mm) out.push_back({e.from, e.to, e.exp});
        return out;
    };
    json j;
    j["name"] = m.name;
    j["components"] = m.ell;
    j["free"] = m.q;
    j["linking"] = m.lk;
    j["framing"] = m.default_framing.c;
    j["sublinks"] = json::array();
    for (int S = 0; S <= m.full(); ++S) {
        const SublinkData& d = m.sub[S];
        json s;
        s["mask"] = S;
        s["generators"] = json::array();
        for (int x = 0; x < d.size(); ++x)
            s["generators"].push_back({{"name", d.names[x]}, {"alexander2", d.alex2[x]}, {"maslov", d.maslov[x]}});
        s["arrows"] = json::array();
        for (const ModelArrow& a : d.arrows) s["arrows"].push_back({{"from", a.from}, {"to", a.to}, {"o", a.o}, {"x", a.x}});
        j["sublinks"].push_back(s);
    }
    j["destabilizations"] = json::array();
    for (const auto& [key, mm] : m.destab) {
        const auto& [S, n, neg] = key;
        j["destabilizations"].push_back({{"sublink", S}, {"oriented", n}, {"negative", neg}, {"entries", mono(mm)}});
    }
    j["folds"] = json::array();
    for (const auto& [key, mm] : m.fold)
        j["folds"].push_back({{"sublink", key.first}, {"component", key.second}, {"entries", mono(mm)}});
    return j;
}

SystemModel model_from_json(const io::json& j) {
    SystemModel m;
    try {
        m.name = j.value("name", std::string("custom"));
        m.ell = j.at("components").get<int>();
        m.q = j.value("free", 0);
        m.lk = j.at("linking").get<std::vector<std::vector<int>>>();
        m.default_framing.c = j.at("framing").get<std::vector<std::vector<int>>>();
        need(m.ell >= 1 && m.ell <= 4, "between 1 and 4 components");
        m.sub.resize(1 << m.ell);
        std::vector<bool> seen(m.sub.size(), false);
        for (const auto& s : j.at("sublinks")) {
            int S = s.at("mask").get<int>();
            need(S >= 0 && S < int(m.sub.size()) && !seen[S], "bad or repeated sublink mask");
            seen[S] = true;
            SublinkData& d = m.sub[S];
            for (const auto& g : s.at("generators")) {
                d.names.push_back(g.at("name").get<std::string>());
                d.alex2.push_back(g.at("alexander2").get<std::vector<int>>());
                d.maslov.push_back(g.at("maslov").get<int>());
            }
            for (const auto& a : s.value("arrows", io::json::array()))
                d.arrows.push_back({a.at("from").get<int>(), a.at("to").get<int>(), a.at("o").get<std::vector<int>>(),
                                    a.at("x").get<std::vector<int>>()});
        }
        auto mono = [](const io::json& list) {
            MonoMatrix out;
            for (const auto& e : list) out.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::vector<int>>()});
            return out;
        };
        for (const auto& d : j.value("destabilizations", io::json::array()))
            m.destab[{d.at("sublink").get<int>(), d.at("oriented").get<int>(), d.at("negative").get<int>()}] = mono(d.at("entries"));
        for (const auto& f : j.value("folds", io::json::array()))
            m.fold[{f.at("sublink").get<int>(), f.at("component").get<int>()}] = mono(f.at("entries"));
    } catch (const io::json::exception& e) {
        throw ValidationError(std::string("model: ") + e.what());
    }
    m.validate();
    return m;
}

}  // namespace hfl
