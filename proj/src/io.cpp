// io.cpp

#include "hfl/io.hpp"
#include "hfl/errors.hpp"

#include <fstream>
#include <sstream>

namespace hfl::io {

json ring_to_json(const TruncatedRing& r) { return {{"p", r.p}, {"delta", r.delta}}; }

TruncatedRing ring_from_json(const json& j) {
    TruncatedRing r{j.at("p").get<int>(), j.at("delta").get<int>()};
    r.check();
    return r;
}

json elem_to_json(const RingElement& e) {
    json out = json::array();
    for (Mono m : e.terms()) {
        json v = json::array();
        for (int i = 0; i < e.ring().p; ++i) v.push_back(e.ring().exp(m, i));
        out.push_back(v);
    }
    return out;
}

RingElement elem_from_json(const TruncatedRing& r, const json& j) {
    if (!j.is_array()) throw ValidationError("ring element must be a list of exponent vectors");
    RingElement out(r);
    for (const json& v : j) {
        if (!v.is_array() || int(v.size()) != r.p) throw ValidationError("exponent vector has the wrong length");
        Mono m = 0;
        bool alive = true;
        for (int i = 0; i < r.p; ++i) {
            int e = v[i].get<int>();
            if (e < 0) throw ValidationError("negative exponent");
            if (e >= r.delta) alive = false;
            else m |= TruncatedRing::unit(i, e);
        }
        if (alive) out += RingElement::monomial(r, m);
    }
    return out;
}

json mat_to_json(const RMat& m) {
    json out = json::array();
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& e : m.col(c)) out.push_back({e.row, c, elem_to_json(e.val)});
    return out;
}

RMat mat_from_json(const TruncatedRing& r, int rows, int cols, const json& j) {
    RMat m(r, rows, cols);
    if (!j.is_array()) throw ValidationError("matrix entries must be a list");
    for (const json& e : j) {
        if (!e.is_array() || e.size() != 3) throw ValidationError("matrix entry must be [row, col, element]");
        int row = e[0].get<int>(), col = e[1].get<int>();
        if (row < 0 || row >= rows || col < 0 || col >= cols) throw ValidationError("matrix entry out of range");
        m.add(row, col, elem_from_json(r, e[2]));
    }
    return m;
}

json complex_to_json(const GradedComplex& c) {
    json gens = json::array();
    for (int i = 0; i < c.size(); ++i) gens.push_back({{"name", c.name(i)}, {"grading", c.grading[i]}});
    return {{"generators", gens}, {"graded", c.graded}, {"d", mat_to_json(c.d)}};
}

GradedComplex complex_from_json(const TruncatedRing& r, const json& j) {
    const json& gens = j.at("generators");
    GradedComplex c(r, int(gens.size()));
    c.graded = j.value("graded", true);
    for (int i = 0; i < c.size(); ++i) {
        c.names.push_back(gens[i].value("name", "g" + std::to_string(i)));
        c.grading[i] = gens[i].value("grading", 0);
    }
    if (j.contains("d")) c.d = mat_from_json(r, c.size(), c.size(), j.at("d"));
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

}  // namespace hfl::io
