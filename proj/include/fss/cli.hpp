#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fss/io.hpp"
#include "fss/verify.hpp"

namespace fss {

inline std::string lpad(const std::string& s, size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

inline std::string rpad(const std::string& s, size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

// Window flag: "auto" or "p=a..b,n=c..d".
inline Window parse_window_flag(const std::string& s) {
    long a = 0, b = 0;
    int c = 0, d = 0, used = 0;
    if (std::sscanf(s.c_str(), "p=%ld..%ld,n=%d..%d%n", &a, &b, &c, &d, &used) == 4 &&
        used == int(s.size())) {
        Window w{a, b, c, d};
        if (w.empty()) throw input_error("window: empty range \"" + s + "\"");
        return w;
    }
    throw input_error("window: expected auto or p=a..b,n=c..d, got \"" + s + "\"");
}

template <typename AutoFn>
inline Window resolve_window(const std::string& flag, AutoFn auto_window_fn) {
    if (flag == "auto") return auto_window_fn();
    return parse_window_flag(flag);
}

// Index-set flag: comma-separated integers, empty meaning {r}.
inline SSpec parse_spec_flags(int r, const std::string& s_flag) {
    SSpec spec{r, {}};
    if (s_flag.empty()) {
        spec.S = {r};
    } else {
        std::string cur;
        std::istringstream in(s_flag);
        while (std::getline(in, cur, ',')) {
            try {
                size_t pos = 0;
                int v = std::stoi(cur, &pos);
                if (pos != cur.size()) throw input_error("");
                spec.S.insert(v);
            } catch (...) {
                throw input_error("S: bad entry \"" + cur + "\" in \"" + s_flag + "\"");
            }
        }
        if (spec.S.empty()) throw input_error("S: no entries in \"" + s_flag + "\"");
    }
    validate_spec(spec);
    return spec;
}

inline Field field_of_characteristic(unsigned long c) {
    return c == 0 ? Field::rationals() : Field::prime(c);
}

// Stream selector: stdout by default, a file when --output is given.
struct OutTarget {
    std::ofstream file;
    std::ostream* os = nullptr;

    OutTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os = &fallback;
        } else {
            file.open(path);
            if (!file) throw input_error("cannot write " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

inline int emit_document(const Json& j, const std::string& output, std::ostream& fallback) {
    OutTarget t(output, fallback);
    t.stream() << j.dump(2) << "\n";
    return 0;
}

inline void render_page_text(std::ostream& os, const SpectralPage& pg) {
    const Window& w = pg.window;
    os << "E_" << pg.r << " on p=" << w.p_lo << ".." << w.p_hi << ", n=" << w.n_lo << ".."
       << w.n_hi << "\n";
    size_t rw = 3;
    for (int n = w.n_lo; n <= w.n_hi; ++n) rw = std::max(rw, std::to_string(n).size());
    size_t cw = 1;
    for (long p = w.p_lo; p <= w.p_hi; ++p) cw = std::max(cw, std::to_string(p).size());
    for (const PageEntry& e : pg.entries) cw = std::max(cw, std::to_string(e.dim).size());

    os << lpad("n\\p", rw);
    for (long p = w.p_lo; p <= w.p_hi; ++p) os << " " << lpad(std::to_string(p), cw);
    os << "\n";
    for (int n = w.n_hi; n >= w.n_lo; --n) {
        os << lpad(std::to_string(n), rw);
        for (long p = w.p_lo; p <= w.p_hi; ++p) {
            int d = pg.dim(p, n);
            os << " " << lpad(d == 0 ? "." : std::to_string(d), cw);
        }
        os << "\n";
    }
    bool any = false;
    for (const PageEntry& e : pg.entries)
        if (e.d_r_rank > 0) {
            if (!any) os << "nonzero d_" << pg.r << ":\n";
            any = true;
            os << "  " << bidegree_str(e.p, e.n) << " rank " << e.d_r_rank << "\n";
        }
}

inline int finish_check(const std::string& name, const SSpec& spec, const Verdict& v,
                        const std::string& format, const std::string& output,
                        std::ostream& fallback, const std::vector<std::string>& detail = {}) {
    OutTarget t(output, fallback);
    std::ostream& os = t.stream();
    if (format == "json") {
        os << verdict_json(name, spec, v).dump(2) << "\n";
    } else {
        os << "check: " << name << "\n";
        os << "r: " << spec.r << "\n";
        std::string s_str;
        for (int s : spec.S) s_str += (s_str.empty() ? "" : ",") + std::to_string(s);
        os << "S: " << s_str << "\n";
        for (const auto& line : detail) os << line << "\n";
        os << "result: " << (v.ok ? "true" : "false") << "\n";
        for (const auto& wtn : v.witnesses) os << "  " << wtn << "\n";
    }
    return v.ok ? 0 : 1;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact spectral-sequence and lifting calculator for based filtered complexes",
                 "fss"};
    app.require_subcommand(1);

    std::string in_a, in_b, in_f, in_g, in_tau, in_square;
    std::string window_flag = "auto", format = "text", output, s_flag, emit = "object";
    std::string suite = "all", dir = "sigma";
    int r = 0, n = 0, depth = 6;
    long p = 0;
    unsigned long characteristic = 0;

    auto* pages = app.add_subcommand("pages", "print one page of the spectral sequence");
    pages->add_option("--input", in_a, "complex file")->required();
    pages->add_option("--r", r, "page index")->required();
    pages->add_option("--window", window_flag, "auto or p=a..b,n=c..d");
    pages->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    pages->add_option("--output", output, "write here instead of stdout");

    auto* check = app.add_subcommand("check", "run a predicate; exit 0 true, 1 false");
    check->require_subcommand(1);
    auto add_check_common = [&](CLI::App* c, bool with_s) {
        c->add_option("--r", r, "filtration index")->required();
        if (with_s) c->add_option("--S", s_flag, "index set, comma separated (default: r)");
        c->add_option("--window", window_flag, "auto or p=a..b,n=c..d");
        c->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
        c->add_option("--output", output);
    };
    auto* c_weq = check->add_subcommand("weq", "r-quasi-isomorphism");
    c_weq->add_option("--f", in_f, "morphism file")->required();
    add_check_common(c_weq, false);
    auto* c_fib = check->add_subcommand("fib", "surjective on Z_s for every s in S");
    c_fib->add_option("--f", in_f, "morphism file")->required();
    add_check_common(c_fib, true);
    auto* c_acyclic = check->add_subcommand("acyclic", "vanishing (r+1)-page");
    c_acyclic->add_option("--input", in_a, "complex file")->required();
    add_check_common(c_acyclic, false);
    auto* c_supp = check->add_subcommand(
        "suppressive", "complex: d drops weight by >= r; morphism: split inclusion with twist");
    c_supp->add_option("--input", in_a, "complex file");
    c_supp->add_option("--f", in_f, "morphism file");
    add_check_common(c_supp, false);
    auto* c_cofib = check->add_subcommand("cofibrant-conditions",
                                          "necessary conditions and the probe lifting");
    c_cofib->add_option("--input", in_a, "complex file")->required();
    add_check_common(c_cofib, true);
    auto* c_rlp = check->add_subcommand("rlp", "lifting against the generating maps");
    c_rlp->add_option("--f", in_f, "morphism file")->required();
    std::string gen_set = "I";
    c_rlp->add_option("--set", gen_set, "I (all generators) or J (acyclic only)")
        ->check(CLI::IsMember({"I", "J"}));
    add_check_common(c_rlp, true);

    auto* build = app.add_subcommand("build", "construct an object and serialize it");
    build->require_subcommand(1);
    auto add_build_common = [&](CLI::App* c) { c->add_option("--output", output); };
    auto add_field_flag = [&](CLI::App* c) {
        c->add_option("--char", characteristic, "field characteristic, 0 for the rationals");
    };
    auto* b_sphere = build->add_subcommand("sphere", "one generator, zero differential");
    b_sphere->add_option("--p", p);
    b_sphere->add_option("--n", n);
    add_field_flag(b_sphere);
    add_build_common(b_sphere);
    auto* b_zr = build->add_subcommand("zr", "cycle representative Z_r(p,n)");
    b_zr->add_option("--r", r)->required();
    b_zr->add_option("--p", p);
    b_zr->add_option("--n", n);
    add_field_flag(b_zr);
    add_build_common(b_zr);
    auto* b_br = build->add_subcommand("br", "boundary representative B_r(p,n)");
    b_br->add_option("--r", r)->required();
    b_br->add_option("--p", p);
    b_br->add_option("--n", n);
    add_field_flag(b_br);
    add_build_common(b_br);
    auto* b_phi = build->add_subcommand("phi", "generating cofibration phi_r(p,n)");
    b_phi->add_option("--r", r)->required();
    b_phi->add_option("--p", p);
    b_phi->add_option("--n", n);
    add_field_flag(b_phi);
    add_build_common(b_phi);
    auto* b_tensor = build->add_subcommand("tensor", "tensor product of two complexes");
    b_tensor->add_option("a", in_a, "left factor")->required();
    b_tensor->add_option("b", in_b, "right factor")->required();
    add_build_common(b_tensor);
    auto* b_hom = build->add_subcommand("hom", "internal hom of two complexes");
    b_hom->add_option("a", in_a, "source")->required();
    b_hom->add_option("b", in_b, "target")->required();
    add_build_common(b_hom);
    auto* b_cone = build->add_subcommand("cone", "mapping cone with filtration offset r");
    b_cone->add_option("--f", in_f, "morphism file")->required();
    b_cone->add_option("--r", r)->required();
    b_cone->add_option("--emit", emit)->check(CLI::IsMember({"object", "incl", "proj"}));
    add_build_common(b_cone);
    auto* b_susp = build->add_subcommand("suspend", "suspension with filtration offset r");
    b_susp->add_option("input", in_a)->required();
    b_susp->add_option("--r", r)->required();
    b_susp->add_option("--dir", dir)->check(CLI::IsMember({"sigma", "omega"}));
    add_build_common(b_susp);
    auto* b_shift = build->add_subcommand("shift", "reindex weights by -r*n");
    b_shift->add_option("input", in_a)->required();
    b_shift->add_option("--r", r)->required();
    add_build_common(b_shift);
    auto* b_dec = build->add_subcommand("dec", "decalage of the filtration");
    b_dec->add_option("input", in_a)->required();
    b_dec->add_option("--r", r)->required();
    add_build_common(b_dec);
    auto* b_push = build->add_subcommand("pushout", "pushout of the span f, g");
    b_push->add_option("--f", in_f, "morphism A -> B")->required();
    b_push->add_option("--g", in_g, "morphism A -> C")->required();
    b_push->add_option("--emit", emit)->check(CLI::IsMember({"object", "left", "right"}));
    add_build_common(b_push);
    auto* b_coprod = build->add_subcommand("coproduct", "direct sum of two complexes");
    b_coprod->add_option("a", in_a)->required();
    b_coprod->add_option("b", in_b)->required();
    b_coprod->add_option("--emit", emit)->check(CLI::IsMember({"object", "inl", "inr"}));
    add_build_common(b_coprod);
    auto* b_pprod = build->add_subcommand("pushout-product", "induced map out of the pushout");
    b_pprod->add_option("--f", in_f)->required();
    b_pprod->add_option("--g", in_g)->required();
    add_build_common(b_pprod);
    auto* b_stair = build->add_subcommand("staircase",
                                          "projection from the depth-N staircase to the unit");
    b_stair->add_option("--r", r)->required();
    b_stair->add_option("--N", depth, "truncation depth (default 6)");
    add_field_flag(b_stair);
    add_build_common(b_stair);
    auto* b_twist = build->add_subcommand("twisted-sum", "direct sum with a twist differential");
    b_twist->add_option("--a", in_a, "first summand")->required();
    b_twist->add_option("--c", in_b, "second summand")->required();
    b_twist->add_option("--tau", in_tau, "twist file: degree -> matrix")->required();
    b_twist->add_option("--emit", emit)->check(CLI::IsMember({"object", "incl"}));
    add_build_common(b_twist);
    auto* b_muro = build->add_subcommand("muro", "factor (pi_r, id) through a twisted sum");
    b_muro->add_option("--r", r)->required();
    b_muro->add_option("--N", depth, "truncation depth (default 6)");
    add_field_flag(b_muro);
    add_build_common(b_muro);

    auto* lift = app.add_subcommand("lift", "solve one lifting square");
    lift->add_option("--square", in_square, "file with morphisms i, p, f, g")->required();
    lift->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    lift->add_option("--output", output);

    auto* verify = app.add_subcommand("verify", "run the bundled verification suites");
    verify->require_subcommand(1);
    auto* v_paper = verify->add_subcommand("paper", "the acceptance suite");
    v_paper->add_option("--suite", suite, "suite name or all");
    v_paper->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    v_paper->add_option("--output", output);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (pages->parsed()) {
            BasedFilteredComplex A = load_complex(in_a);
            if (r < 0) throw input_error("pages: r must be >= 0");
            Window w = resolve_window(window_flag, [&] { return page_window(A, r); });
            SpectralPage pg = page(A, r, w);
            if (format == "json") return emit_document(page_report_json(pg), output, out);
            OutTarget t(output, out);
            render_page_text(t.stream(), pg);
            return 0;
        }

        if (c_weq->parsed()) {
            FilteredMorphism f = load_morphism(in_f);
            SSpec spec = parse_spec_flags(r, "");
            Window w =
                resolve_window(window_flag, [&] { return joint_page_window(f, r + 1); });
            return finish_check("weq", spec, is_r_quasi_iso(f, r, w), format, output, out);
        }
        if (c_fib->parsed()) {
            FilteredMorphism f = load_morphism(in_f);
            SSpec spec = parse_spec_flags(r, s_flag);
            Window w = resolve_window(window_flag, [&] { return joint_page_window(f, r); });
            return finish_check("fib", spec, is_S_fibration(f, spec, w), format, output, out);
        }
        if (c_acyclic->parsed()) {
            BasedFilteredComplex A = load_complex(in_a);
            SSpec spec = parse_spec_flags(r, "");
            Window w = resolve_window(window_flag, [&] { return page_window(A, r + 1); });
            return finish_check("acyclic", spec, is_r_acyclic(A, r, w), format, output, out);
        }
        if (c_supp->parsed()) {
            SSpec spec = parse_spec_flags(r, "");
            if (in_a.empty() == in_f.empty())
                throw input_error("suppressive: give exactly one of --input or --f");
            if (!in_a.empty()) {
                BasedFilteredComplex A = load_complex(in_a);
                return finish_check("suppressive", spec, is_k_suppressive(A, r), format, output,
                                    out);
            }
            FilteredMorphism f = load_morphism(in_f);
            SuppressiveInclusionResult res = is_r_suppressive_inclusion(f, r);
            Verdict v = res.verdict;
            if (!res.note.empty()) v.witnesses.push_back("note: " + res.note);
            std::vector<std::string> detail;
            if (res.min_drop)
                detail.push_back("min twist drop: " + std::to_string(*res.min_drop));
            return finish_check("suppressive", spec, v, format, output, out, detail);
        }
        if (c_cofib->parsed()) {
            BasedFilteredComplex A = load_complex(in_a);
            SSpec spec = parse_spec_flags(r, s_flag);
            CofibrantConditions rep = cofibrant_conditions(A, spec);
            Verdict v;
            v.ok = rep.subclass_cofibrant;
            for (const auto& wtn : rep.suppressive.witnesses) v.witnesses.push_back(wtn);
            for (const ProbeReport& pr : rep.probes)
                for (const auto& wtn : pr.witnesses)
                    v.witnesses.push_back(pr.name + ": " + wtn);
            std::vector<std::string> detail = {
                std::string("projective: true"),
                std::string("exhaustive: true"),
                std::string("bounded below: true"),
                "suppressive: " + std::string(rep.suppressive.ok ? "true" : "false"),
                "probe lifting: " + std::string(rep.lifting ? "true" : "false") + " (" +
                    std::to_string(rep.probes_used) + " probes used)",
            };
            for (const ProbeReport& pr : rep.probes)
                detail.push_back("  " + pr.name + ": " +
                                 (pr.used ? (pr.lifts ? "lifts" : "fails") : "skipped"));
            return finish_check("cofibrant-conditions", spec, v, format, output, out, detail);
        }
        if (c_rlp->parsed()) {
            FilteredMorphism f = load_morphism(in_f);
            SSpec spec = parse_spec_flags(r, s_flag);
            Window w = resolve_window(window_flag, [&] { return rlp_window(f, spec); });
            auto shapes = gen_set == "I" ? I_shapes(spec) : J_shapes(spec);
            return finish_check("rlp", spec, has_rlp_against(f, shapes, w), format, output, out);
        }

        if (b_sphere->parsed())
            return emit_document(
                complex_to_json(make_sphere(field_of_characteristic(characteristic), p, n)),
                output, out);
        if (b_zr->parsed())
            return emit_document(
                complex_to_json(make_cycle_rep(field_of_characteristic(characteristic), r, p, n)),
                output, out);
        if (b_br->parsed())
            return emit_document(
                complex_to_json(
                    make_boundary_rep(field_of_characteristic(characteristic), r, p, n)),
                output, out);
        if (b_phi->parsed())
            return emit_document(
                morphism_to_json(make_phi(field_of_characteristic(characteristic), r, p, n)),
                output, out);
        if (b_tensor->parsed())
            return emit_document(
                complex_to_json(tensor(load_complex(in_a), load_complex(in_b))), output, out);
        if (b_hom->parsed())
            return emit_document(
                complex_to_json(internal_hom(load_complex(in_a), load_complex(in_b))), output,
                out);
        if (b_cone->parsed()) {
            ConeResult c = cone(load_morphism(in_f), r);
            if (emit == "incl") return emit_document(morphism_to_json(c.incl), output, out);
            if (emit == "proj") return emit_document(morphism_to_json(c.proj), output, out);
            return emit_document(complex_to_json(c.complex), output, out);
        }
        if (b_susp->parsed())
            return emit_document(
                complex_to_json(suspend(load_complex(in_a), r,
                                        dir == "sigma" ? Suspension::sigma : Suspension::omega)),
                output, out);
        if (b_shift->parsed())
            return emit_document(complex_to_json(shift(load_complex(in_a), r)), output, out);
        if (b_dec->parsed()) {
            if (r < 0) throw input_error("dec: r must be >= 0");
            return emit_document(complex_to_json(decalage(load_complex(in_a), r)), output, out);
        }
        if (b_push->parsed()) {
            PushoutResult pr = pushout(load_morphism(in_f), load_morphism(in_g));
            if (emit == "left") return emit_document(morphism_to_json(pr.leg_left), output, out);
            if (emit == "right")
                return emit_document(morphism_to_json(pr.leg_right), output, out);
            return emit_document(complex_to_json(pr.object), output, out);
        }
        if (b_coprod->parsed()) {
            DirectSumResult s = coproduct(load_complex(in_a), load_complex(in_b));
            if (emit == "inl") return emit_document(morphism_to_json(s.inj_left), output, out);
            if (emit == "inr") return emit_document(morphism_to_json(s.inj_right), output, out);
            return emit_document(complex_to_json(s.complex), output, out);
        }
        if (b_pprod->parsed())
            return emit_document(
                morphism_to_json(pushout_product(load_morphism(in_f), load_morphism(in_g))),
                output, out);
        if (b_stair->parsed())
            return emit_document(
                morphism_to_json(
                    staircase(field_of_characteristic(characteristic), r, depth).pi),
                output, out);
        if (b_twist->parsed()) {
            BasedFilteredComplex A = load_complex(in_a);
            BasedFilteredComplex C = load_complex(in_b);
            Json tj = load_json(in_tau);
            if (!tj.is_object()) throw input_error("tau: expected an object degree -> matrix");
            std::map<int, Matrix> tau;
            for (const auto& [key, val] : tj.items()) {
                int m = parse_degree_key(key);
                tau[m] = matrix_from_json(A.field(), val, A.rank(m + 1), C.rank(m),
                                          "tau at degree " + key);
            }
            TwistedSumResult ts = twisted_sum(A, C, tau);
            if (emit == "incl") return emit_document(morphism_to_json(ts.incl), output, out);
            return emit_document(complex_to_json(ts.complex), output, out);
        }
        if (b_muro->parsed()) {
            MuroFactorization mf =
                muro_factorization(field_of_characteristic(characteristic), r, depth);
            Json j;
            j["j"] = morphism_to_json(mf.j);
            j["q"] = morphism_to_json(mf.q);
            return emit_document(j, output, out);
        }

        if (lift->parsed()) {
            Json sq = load_json(in_square);
            if (!sq.is_object() || !sq.contains("i") || !sq.contains("p") ||
                !sq.contains("f") || !sq.contains("g"))
                throw input_error("square: expected an object with morphisms i, p, f, g");
            std::string base = std::filesystem::path(in_square).parent_path().string();
            auto side = [&](const char* key) {
                const Json& j = sq[key];
                if (j.is_string()) {
                    std::filesystem::path ref(j.get<std::string>());
                    if (ref.is_relative() && !base.empty())
                        ref = std::filesystem::path(base) / ref;
                    return load_morphism(ref.string());
                }
                return morphism_from_json(j, base);
            };
            LiftingProblem prob{side("i"), side("p"), side("f"), side("g")};
            auto h = solve_lifting(prob);
            if (h) return emit_document(morphism_to_json(*h), output, out);
            OutTarget t(output, out);
            if (format == "json")
                t.stream() << Json{{"result", false}, {"witnesses", {"no lift exists"}}}.dump(2)
                           << "\n";
            else
                t.stream() << "no lift exists\n";
            return 1;
        }

        if (v_paper->parsed()) {
            auto results = run_verification(seed_from_env(), suite == "all" ? "" : suite);
            bool all_ok = true;
            for (const auto& res : results) all_ok = all_ok && res.verdict.ok;
            OutTarget t(output, out);
            if (format == "json") {
                Json arr = Json::array();
                for (const auto& res : results) {
                    Json e;
                    e["number"] = res.number;
                    e["name"] = res.name;
                    e["title"] = res.title;
                    e["result"] = res.verdict.ok;
                    e["witnesses"] = res.verdict.witnesses;
                    arr.push_back(std::move(e));
                }
                t.stream() << arr.dump(2) << "\n";
            } else {
                print_verification_table(t.stream(), results);
            }
            return all_ok ? 0 : 1;
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace fss
