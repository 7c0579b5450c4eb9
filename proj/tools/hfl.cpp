// hfl - command line front end

#include "hfl/errors.hpp"
#include "hfl/grid.hpp"
#include "hfl/hyperbox.hpp"
#include "hfl/io.hpp"
#include "hfl/songs.hpp"
#include "hfl/spectral.hpp"
#include "hfl/surgery.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace hfl;
using io::json;

namespace {

struct Args {
    // shared
    std::string file;
    int delta = 1;
    bool as_json = false;
    // songs
    int n = 3;
    bool count = false;
    std::string songs;
    std::string reg;
    // grid
    std::string s = "inf";
    std::string orient;
    // surgery
    std::string model = "unknot";
    std::string framing;
    std::string mode = "folded";
    std::string mtilde;
    int b = 0, p1 = 0, p2 = 0;
};

std::vector<int> int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ValidationError(what + ": bad entry '" + tok + "'");
        }
    }
    return out;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- songs ----

void songs_symphony(const Args& a) {
    if (a.n < 1 || a.n > 6) throw ValidationError("--n must be between 1 and 6");
    const SongSum& alpha = symphony(a.n);
    if (a.count) {
        std::cout << alpha.size() << "\n";
        return;
    }
    for (const Song& s : alpha.songs()) std::cout << song_str(s) << "\n";
}

void songs_play(const Args& a) {
    Hyperbox h = hyperbox_from_json(io::parse_json(io::read_file(a.file), a.file));
    h.require_valid();
    Collection c = hyperbox_collection(h);
    std::vector<int> reg = a.reg.empty() ? h.size : int_list(a.reg, "--register");
    if (int(reg.size()) != h.dim()) throw ValidationError("--register needs one entry per axis");
    for (int r : reg)
        if (r < 1) throw ValidationError("--register entries must be positive");
    const Letters all = (Letters(1) << h.dim()) - 1;
    SongSum s = a.songs.empty() ? symphony(all) : parse_songs(a.songs, all);
    print(io::mat_to_json(play(s, c, reg)));
}

// ---- hyperboxes ----

void hyperbox_validate(const Args& a) {
    Hyperbox h = hyperbox_from_json(io::parse_json(io::read_file(a.file), a.file));
    h.require_valid();
    std::cout << "valid hyperbox of size " << eps_str(h.size) << " with " << h.maps.size() << " maps\n";
}

void hyperbox_compress(const Args& a) {
    Hyperbox h = hyperbox_from_json(io::parse_json(io::read_file(a.file), a.file));
    print(hyperbox_to_json(compress(h)));
}

// ---- grids ----

GridDiagram load_grid(const Args& a) { return parse_grid(io::read_file(a.file)); }

// Entries beyond the link components belong to free markings and must be +inf.
ExtendedValue grid_value(const GridDiagram& g, const std::string& text) {
    ExtendedValue s = parse_value(text);
    if (int(s.size()) < g.ell) throw ValidationError("--s needs one entry per link component");
    for (std::size_t i = g.ell; i < s.size(); ++i)
        if (s[i] < kInf) throw ValidationError("--s entries for free markings must be inf");
    s.resize(g.ell);
    return s;
}

void grid_check(const Args& a) {
    GridDiagram g = load_grid(a);
    GridGenerators gens = grid_generators(g);
    auto rects = empty_rectangles(g, gens);
    std::vector<ExtendedValue> probes{ExtendedValue(g.ell, kInf), ExtendedValue(g.ell, -kInf), g.offset2};
    for (const ExtendedValue& s : probes) {
        GradedComplex c = grid_complex(g, gens, rects, s, a.delta);
        if (auto bad = c.square_defect())
            throw InvariantError("d^2 != 0 at s = " + value_str(s) + " from " + c.name(bad->first) + " to " + c.name(bad->second));
        if (c.grading_defect()) throw InvariantError("grading defect at s = " + value_str(s));
    }
    if (a.as_json) {
        print({{"n", g.n}, {"components", g.ell}, {"free", g.q}, {"linking", g.lk}, {"generators", gens.perm.size()},
               {"rectangles", rects.size()}, {"square_zero", true}});
        return;
    }
    std::cout << "n\t" << g.n << "\ncomponents\t" << g.ell << "\nfree\t" << g.q << "\n";
    for (int i = 0; i < g.ell; ++i) {
        std::cout << "lk\t" << i + 1;
        for (int j = 0; j < g.ell; ++j) std::cout << (j ? " " : "\t") << g.lk[i][j];
        std::cout << "\n";
    }
    std::cout << "generators\t" << gens.perm.size() << "\nrectangles\t" << rects.size() << "\nsquare_zero\tyes\n";
}

void grid_homology(const Args& a) {
    GridDiagram g = load_grid(a);
    ExtendedValue s = grid_value(g, a.s);
    GradedComplex big = build_complex(g, s, 2 * a.delta);
    auto stable = stable_ranks(big, a.delta);
    std::size_t raw = total(homology_ranks(big.truncate(a.delta)));
    if (a.as_json) {
        json r = json::object();
        for (auto [deg, n] : stable)
            if (n) r[std::to_string(deg)] = n;
        print({{"s", value_str(s)}, {"delta", a.delta}, {"ranks", r}, {"total", total(stable)}, {"raw", raw}});
        return;
    }
    std::cout << "grading\trank\n";
    for (auto [deg, n] : stable)
        if (n) std::cout << deg << "\t" << n << "\n";
    std::cout << "total\t" << total(stable) << "\nraw\t" << raw << "\n";
}

void grid_reduce(const Args& a) {
    GridDiagram g = load_grid(a);
    std::vector<int> orient = a.orient.empty() ? std::vector<int>(g.ell, 0) : int_list(a.orient, "--orient");
    if (int(orient.size()) != g.ell) throw ValidationError("--orient needs one entry per component");
    for (int o : orient)
        if (o < -1 || o > 1) throw ValidationError("--orient entries are -1, 0 or 1");
    std::cout << grid_text(reduce(g, orient));
}

// ---- surgery ----

struct Setup {
    SystemModel model;
    Framing framing;
    SurgeryOptions opt;
};

Setup surgery_setup(const Args& a) {
    Setup st;
    if (a.model == "unknot") st.model = unknot_model();
    else if (a.model == "hopf") st.model = hopf_model();
    else st.model = model_from_json(io::parse_json(io::read_file(a.model), a.model));
    st.framing = st.model.default_framing;
    if (!a.framing.empty()) st.framing = parse_framing(a.framing);
    if (a.p1 || a.p2) {
        if (st.model.ell != 2) throw ValidationError("--p1/--p2 need a two-component model");
        if (a.p1) st.framing.c[0][0] = a.p1;
        if (a.p2) st.framing.c[1][1] = a.p2;
    }
    if (a.model == "hopf")
        for (int i = 0; i < 2; ++i)
            if (st.framing.c[i][i] < 2) throw ValidationError("the Hopf model needs p1, p2 >= 2");
    st.opt.mode = parse_truncation(a.mode);
    st.opt.b = a.b;
    st.opt.delta = a.delta;
    if (a.b < 0) throw ValidationError("--b must be positive");
    if (!a.mtilde.empty()) st.opt.m = int_list(a.mtilde, "--mtilde");
    for (int m : st.opt.m)
        if (m < 1) throw ValidationError("--mtilde entries must be positive");
    return st;
}

std::string grading_str(const ClassHomology& h, int deg) { return h.graded ? std::to_string(deg) : "*"; }

void surgery_homology_cmd(const Args& a) {
    Setup st = surgery_setup(a);
    SurgeryComplex sc = assemble(st.model, st.framing, st.opt);
    SurgeryReport rep = check_complex(sc);
    if (!rep.square_zero || !rep.spinc_preserved) throw InvariantError(rep.problems.front());
    auto classes = surgery_homology(sc);
    if (a.as_json) {
        json out = {{"model", st.model.name}, {"framing", st.framing.str()}, {"mode", truncation_name(sc.mode)}, {"delta", sc.delta},
                    {"b", sc.b}, {"m", sc.m}, {"classes", json::array()}};
        if (!sc.orientation.empty()) out["orientation"] = sc.orientation;
        for (const ClassHomology& h : classes) {
            json r = json::object();
            for (auto [deg, n] : h.stable)
                if (n) r[grading_str(h, deg)] = n;
            out["classes"].push_back({{"spinc", value_str(h.rep)}, {"d", h.d}, {"ranks", r}, {"total", total(h.stable)}, {"raw", total(h.raw)}});
        }
        print(out);
        return;
    }
    std::cout << "spinc\tgrading\trank\n";
    for (const ClassHomology& h : classes) {
        bool any = false;
        for (auto [deg, n] : h.stable)
            if (n) {
                std::cout << value_str(h.rep) << "\t" << grading_str(h, deg) << "\t" << n << "\n";
                any = true;
            }
        if (!any) std::cout << value_str(h.rep) << "\t-\t0\n";
    }
}

void surgery_towers_cmd(const Args& a) {
    Setup st = surgery_setup(a);
    std::map<Point, std::vector<std::size_t>> ranks;
    for (int d = 1; d <= a.delta; ++d) {
        st.opt.delta = d;
        for (const ClassHomology& h : surgery_homology(assemble(st.model, st.framing, st.opt))) ranks[h.rep].push_back(total(h.stable));
    }
    json out = json::array();
    if (!a.as_json) std::cout << "spinc\ttowers\n";
    for (const auto& [rep, r] : ranks) {
        TowerProfile t = infer_towers(r, 1);
        if (a.as_json) out.push_back({{"spinc", value_str(rep)}, {"ranks", r}, {"towers", t.str()}});
        else std::cout << value_str(rep) << "\t" << t.str() << "\n";
    }
    if (a.as_json) print(out);
}

void surgery_check_cmd(const Args& a) {
    Setup st = surgery_setup(a);
    SurgeryComplex sc = assemble(st.model, st.framing, st.opt);
    SurgeryReport rep = check_complex(sc);
    auto witnesses = edge_witnesses(st.model, sc.b, a.delta);
    if (a.as_json) {
        print({{"generators", sc.complex.size()}, {"classes", sc.reps.size()}, {"crossovers", sc.crossovers}, {"square_zero", rep.square_zero},
               {"spinc_preserved", rep.spinc_preserved}, {"grading_defects", rep.grading_defects}, {"graded", sc.complex.graded},
               {"edge_failures", witnesses}, {"problems", rep.problems}});
    } else {
        std::cout << "generators\t" << sc.complex.size() << "\nclasses\t" << sc.reps.size() << "\ncrossovers\t" << sc.crossovers
                  << "\nsquare_zero\t" << (rep.square_zero ? "yes" : "no") << "\nspinc_preserved\t" << (rep.spinc_preserved ? "yes" : "no")
                  << "\ngraded\t" << (sc.complex.graded ? "yes" : "no") << "\ngrading_defects\t" << rep.grading_defects
                  << "\nedge_failures\t" << witnesses.size() << "\n";
        for (const auto& w : witnesses) std::cout << "warning\tedge map not a quasi-isomorphism: " << w << "\n";
        for (const auto& p : rep.problems) std::cout << "problem\t" << p << "\n";
    }
    if (!rep.square_zero || !rep.spinc_preserved || rep.grading_defects) throw InvariantError("surgery complex failed its checks");
}

// ---- coefficients ----

void coeff_ss(const Args& a) {
    json j = io::parse_json(io::read_file(a.file), a.file);
    FilteredComplex f;
    try {
        f.base = io::complex_from_json(io::ring_from_json(j.at("ring")), j.at("complex"));
        f.level = j.at("levels").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("filtered complex: ") + e.what());
    }
    if (int(f.level.size()) != f.base.size()) throw ValidationError("filtered complex: one level per generator");
    f.base.require_square_zero();
    SpectralPages sp = spectral_sequence(f);
    if (a.as_json) {
        json pages = json::array();
        auto m = [](const std::map<int, std::size_t>& r) {
            json o = json::object();
            for (auto [k, v] : r) o[std::to_string(k)] = v;
            return o;
        };
        for (const auto& p : sp.pages) pages.push_back(m(p));
        print({{"pages", pages}, {"infinity", m(sp.infinity)}, {"homology", m(sp.total_homology)}});
        return;
    }
    std::cout << "page\tdegree\trank\n";
    for (std::size_t r = 0; r < sp.pages.size(); ++r)
        for (auto [k, v] : sp.pages[r]) std::cout << "E" << r << "\t" << k << "\t" << v << "\n";
    for (auto [k, v] : sp.infinity) std::cout << "Einf\t" << k << "\t" << v << "\n";
    for (auto [k, v] : sp.total_homology) std::cout << "H\t" << k << "\t" << v << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hfl: hyperboxes, songs, grid complexes and surgery complexes over F2[U]"};
    app.require_subcommand(1);
    Args a;

    auto delta_opt = [&](CLI::App* c) { c->add_option("--delta", a.delta, "truncation U^delta = 0")->check(CLI::Range(1, 32)); };
    auto json_opt = [&](CLI::App* c) { c->add_flag("--json", a.as_json, "machine readable output"); };

    auto* songs = app.add_subcommand("songs", "songs and symphonies");
    songs->require_subcommand(1);
    auto* sym = songs->add_subcommand("symphony", "the standard symphony on n letters");
    sym->add_option("--n", a.n, "number of letters")->required();
    sym->add_flag("--count", a.count, "print the number of songs only");
    sym->callback([&] { songs_symphony(a); });
    auto* play_cmd = songs->add_subcommand("play", "play songs to the collection of a hyperbox");
    play_cmd->add_option("--file", a.file, "hyperbox json")->required();
    play_cmd->add_option("--songs", a.songs, "song sum, e.g. \"(1{1,2}2)+(21)\"; default the symphony");
    play_cmd->add_option("--register", a.reg, "comma separated register; default the box size");
    play_cmd->callback([&] { songs_play(a); });

    auto* hb = app.add_subcommand("hyperbox", "hyperbox files");
    hb->require_subcommand(1);
    auto* val = hb->add_subcommand("validate", "check the hyperbox relations");
    val->add_option("--file", a.file)->required();
    val->callback([&] { hyperbox_validate(a); });
    auto* comp = hb->add_subcommand("compress", "compress to a hypercube");
    comp->add_option("--file", a.file)->required();
    comp->callback([&] { hyperbox_compress(a); });

    auto* grid = app.add_subcommand("grid", "grid diagrams with free markings");
    grid->require_subcommand(1);
    auto* gcheck = grid->add_subcommand("check", "parse, trace and check d^2 = 0");
    gcheck->add_option("--file", a.file)->required();
    delta_opt(gcheck);
    json_opt(gcheck);
    gcheck->callback([&] { grid_check(a); });
    auto* ghom = grid->add_subcommand("homology", "homology of the generalized complex at s");
    ghom->add_option("--file", a.file)->required();
    ghom->add_option("--s", a.s, "values, e.g. \"1/2,-inf\"");
    delta_opt(ghom);
    json_opt(ghom);
    ghom->callback([&] { grid_homology(a); });
    auto* gred = grid->add_subcommand("reduce", "turn oriented components into free markings");
    gred->add_option("--file", a.file)->required();
    gred->add_option("--orient", a.orient, "per component 1, -1 or 0");
    gred->callback([&] { grid_reduce(a); });

    auto* surg = app.add_subcommand("surgery", "surgery complexes; defaults to homology");
    surg->fallthrough();
    surg->add_option("--model", a.model, "unknot, hopf or a model json file");
    surg->add_option("--framing", a.framing, "framing matrix, e.g. \"2 1; 1 2\"");
    surg->add_option("--p1", a.p1, "Hopf surgery coefficient on L1");
    surg->add_option("--p2", a.p2, "Hopf surgery coefficient on L2");
    surg->add_option("--mode", a.mode, "knot_b, combined, folded or vertical_only");
    surg->add_option("--b", a.b, "box size");
    surg->add_option("--mtilde", a.mtilde, "comma separated m_i for the region Lambda + diag(m)");
    delta_opt(surg);
    json_opt(surg);
    surg->add_subcommand("homology", "ranks per Spin^c class")->callback([&] { surgery_homology_cmd(a); });
    surg->add_subcommand("towers", "towers from the ranks at delta = 1..delta")->callback([&] { surgery_towers_cmd(a); });
    surg->add_subcommand("check", "runtime checks of the assembled complex")->callback([&] { surgery_check_cmd(a); });
    surg->callback([&] {
        if (surg->get_subcommands().empty()) surgery_homology_cmd(a);
    });

    auto* coeff = app.add_subcommand("coeff", "coefficient level tools");
    coeff->require_subcommand(1);
    auto* ss = coeff->add_subcommand("ss", "spectral sequence of a filtered complex");
    ss->add_option("--file", a.file, "{\"ring\":..,\"complex\":..,\"levels\":[..]}")->required();
    json_opt(ss);
    ss->callback([&] { coeff_ss(a); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
