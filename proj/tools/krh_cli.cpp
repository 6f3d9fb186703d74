// Command-line driver for the knot homology engine.
#include "CLI11.hpp"
#include "krh/invariants.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#ifdef KRH_HAVE_OPENMP
#include <omp.h>
#endif

using namespace krh;

namespace {

struct Common {
    std::string braid;
    std::string name;
    int pad = 3;
    int workers = 0;
    std::string format = "table";
};

void add_common(CLI::App* cmd, Common& c, bool with_format = true) {
    cmd->add_option("--braid", c.braid, "braid word, e.g. \"b=2; w=1 1 1\"");
    cmd->add_option("--name", c.name, "corpus link name");
    cmd->add_option("--pad", c.pad, "q-window padding")->check(CLI::NonNegativeNumber);
    cmd->add_option("--workers", c.workers, "worker threads (0 = auto)");
    if (with_format)
        cmd->add_option("--format", c.format, "table | json | dots")
            ->check(CLI::IsMember({"table", "json", "dots"}));
}

BraidWord resolve_word(const Common& c) {
    if (!c.braid.empty()) return BraidWord::parse(c.braid);
    if (!c.name.empty()) {
        for (auto& [name, text] : corpus_words())
            if (name == c.name) return BraidWord::parse(text);
        throw error("unknown corpus entry '" + c.name + "'");
    }
    throw error("need --braid or --name");
}

Options make_options(const Common& c) {
    Options o;
    o.pad = c.pad;
    o.exec = Exec::parallel;
#ifdef KRH_HAVE_OPENMP
    if (c.workers > 0) omp_set_num_threads(c.workers);
#endif
    return o;
}

void print_dims_table(const TripleGradedDims& dims) {
    std::printf("%6s %6s %6s %6s %6s\n", "i", "j", "k", "delta", "dim");
    for (auto& [t, d] : dims)
        std::printf("%6d %6d %6d %6d %6ld\n", t.i, t.j, t.k, t.i + t.j + t.k, d);
}

int cmd_homfly(const Common& c) {
    BraidWord w = resolve_word(c);
    Options o = make_options(c);
    auto h = homfly_homology(w, o);
    LinkPoly p = link_homfly_moy(w);
    bool chi_ok = p.reduced.is_poly() && !h.window_truncated
                      ? euler_check(h.dims, p.reduced.num)
                      : euler_check_series(h.dims, p.reduced, h.window.q_min + 4,
                                           h.window.q_max - 4);
    if (c.format == "json") {
        ReportOptions ropt;
        ropt.base = o;
        ropt.with_sl2 = false;
        std::cout << report_json(full_report(c.name.empty() ? c.braid : c.name, w, ropt)) << "\n";
    } else if (c.format == "dots") {
        int sigma = w.link_components() == 1 ? signature(w) : 0;
        std::cout << render_dots(h.dims, sigma);
    } else {
        std::printf("link: %s   writhe %d, strands %d\n", w.format().c_str(), h.writhe,
                    h.strands);
        print_dims_table(h.dims);
        std::printf("P(a,q) = %s\n", p.reduced.str().c_str());
        std::printf("chi check: %s%s\n", chi_ok ? "ok" : "FAILED",
                    h.window_truncated ? " (window truncated)" : "");
    }
    return chi_ok ? 0 : 1;
}

int cmd_sln(const Common& c, int N, bool unreduced) {
    BraidWord w = resolve_word(c);
    Options o = make_options(c);
    auto r = sln_homology(w, N, !unreduced, o);
    Laurent1 chi = chi_of_sln(r.dims);
    LinkPoly p = link_homfly_moy(w);
    bool chi_ok = true;
    if (!unreduced && p.reduced.is_poly()) {
        chi_ok = chi == p.reduced.num.specialize_a(N);
    }
    if (c.format == "json") {
        std::cout << "{\"N\":" << N << ",\"dims\":[";
        bool first = true;
        for (auto& [k, d] : r.dims) {
            if (!first) std::cout << ",";
            first = false;
            std::cout << "[" << k.first << "," << k.second << "," << d << "]";
        }
        std::cout << "],\"euler_ok\":" << (chi_ok ? "true" : "false") << "}\n";
    } else {
        std::printf("%6s %6s %6s\n", "gr_N", "gr_v", "dim");
        for (auto& [k, d] : r.dims) std::printf("%6d %6d %6ld\n", k.first, k.second, d);
        std::printf("chi = %s\n", chi.str("q").c_str());
        std::printf("chi check: %s%s\n", chi_ok ? "ok" : "FAILED",
                    r.window_truncated ? " (window truncated)" : "");
    }
    return chi_ok ? 0 : 1;
}

int cmd_poly(const Common& c) {
    BraidWord w = resolve_word(c);
    LinkPoly moy = link_homfly_moy(w);
    Laurent2Frac skein = link_homfly_skein(w);
    bool ok = moy.reduced == skein;
    if (c.format == "json") {
        std::cout << "{\"reduced\":\"" << moy.reduced.str() << "\",\"unreduced\":\""
                  << moy.unreduced.str() << "\",\"cross_check\":" << (ok ? "true" : "false")
                  << "}\n";
    } else {
        std::printf("P = %s\n", moy.reduced.str().c_str());
        std::printf("P~ = %s\n", moy.unreduced.str().c_str());
        std::printf("moy/skein cross-check: %s\n", ok ? "ok" : "FAILED");
    }
    return ok ? 0 : 1;
}

int cmd_pages(const Common& c, const std::string& seq, int N, int max_page) {
    BraidWord w = resolve_word(c);
    Options o = make_options(c);
    TangleDiagram d = close_braid(w);
    GradedShift sh = reduced_shift(w.writhe(), w.strands);
    AssembleOptions aopt;
    aopt.variant = Variant::reduced_edge;
    aopt.marked_edge = 1;

    std::vector<PageData> pages;
    if (seq == "minus1") {
        auto ac = assemble(d, ParamPoly{}, aopt);
        int grm_shift = sh.i - sh.j;
        pages = ek_sequence_minus1(ac.complex, -grm_shift - 10, -grm_shift + 10, max_page, o.exec);
    } else {
        auto ac = assemble(d, param_x_pow(N + 1), aopt);
        LinkPoly p = link_homfly_moy(w);
        auto win = default_window(p.reduced.num, o.pad);
        int grn_shift = sh.i + N * sh.j;
        pages = ek_sequence_N(ac.complex, N, win.q_min * (N + 1) - grn_shift - 4 * N,
                              win.q_max * (N + 1) - grn_shift + 4 * N, max_page, o.exec);
    }
    for (auto& page : pages) {
        long total = 0, ranks = 0;
        for (auto& [t, dim] : page.dims) total += dim;
        for (auto& [t, r] : page.d_ranks) ranks += r;
        std::printf("page %d: total dim %ld, d-rank %ld%s\n", page.page, total, ranks,
                    page.converged ? " (converged)" : "");
        if (c.format == "table") {
            for (auto& [t, dim] : page.dims)
                std::printf("   (%d,%d,%d) -> %ld\n", t.i + sh.i, t.j + sh.j, t.k + sh.k, dim);
        }
    }
    return 0;
}

int cmd_thin(const Common& c) {
    BraidWord w = resolve_word(c);
    Options o = make_options(c);
    auto h = homfly_homology(w, o);
    int sigma = signature(w);
    auto v = delta_thinness(h.dims, sigma);
    std::printf("sigma = %d\n", sigma);
    for (auto& [delta, d] : v.delta_support)
        std::printf("delta %d: total dim %ld\n", delta, d);
    std::printf("verdict: %s\n", v.thin ? "thin" : "not-thin");
    return 0;
}

int cmd_skein(const std::string& plus, const std::string& minus, const std::string& zero, int N,
              int pad) {
    Common c;
    c.pad = pad;
    Options o = make_options(c);
    auto res = skein_triple_check(BraidWord::parse(plus), BraidWord::parse(minus),
                                  BraidWord::parse(zero), N, o);
    std::printf("skein LES bookkeeping: %s %s\n", res.closes ? "closes" : "FAILS",
                res.detail.c_str());
    return res.closes ? 0 : 1;
}

int cmd_corpus(const std::string& action, const std::string& dir, int pad) {
    Common c;
    c.pad = pad;
    Options o = make_options(c);
    if (action == "list") {
        for (auto& [name, text] : corpus_words()) std::printf("%-18s %s\n", name.c_str(), text.c_str());
        return 0;
    }
    ReportOptions ropt;
    ropt.base = o;
    bool ok = true;
    for (auto& [name, text] : corpus_words()) {
        BraidWord w = BraidWord::parse(text);
        ropt.with_sl2 = w.letters.size() <= 5 && w.link_components() == 1;
        ropt.with_stabilization = false;
        std::filesystem::path path = std::filesystem::path(dir) / (name + ".json");
        if (action == "write") {
            auto rep = full_report(name, w, ropt);
            std::ofstream out(path);
            out << report_json(rep) << "\n";
            std::printf("wrote %s\n", path.c_str());
        } else {
            std::ifstream in(path);
            if (!in) {
                std::printf("%-18s MISSING golden file\n", name.c_str());
                ok = false;
                continue;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            auto golden = report_from_json(ss.str());
            auto rep = full_report(name, w, ropt);
            bool same = reports_equal(golden, rep);
            std::printf("%-18s %s\n", name.c_str(), same ? "ok" : "MISMATCH");
            ok = ok && same && rep.euler_ok;
        }
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Khovanov-Rozansky HOMFLY / sl(N) homology calculator"};
    app.require_subcommand(1);

    Common c_homfly, c_sln, c_poly, c_pages, c_thin;
    int sln_n = 2;
    bool sln_unreduced = false;
    std::string pages_seq = "N";
    int pages_n = 2, pages_max = 6;
    std::string sk_plus, sk_minus, sk_zero;
    int sk_n = 2, sk_pad = 3;
    std::string corpus_action = "verify", corpus_dir = "corpus";
    int corpus_pad = 3;

    auto* homfly = app.add_subcommand("homfly", "triply graded HOMFLY homology");
    add_common(homfly, c_homfly);

    auto* sln = app.add_subcommand("sln", "sl(N) homology");
    add_common(sln, c_sln);
    sln->add_option("--N", sln_n, "N >= 1")->check(CLI::PositiveNumber);
    sln->add_flag("--unreduced", sln_unreduced, "unreduced variant");

    auto* poly = app.add_subcommand("poly", "HOMFLY polynomial (MOY + skein cross-check)");
    add_common(poly, c_poly);

    auto* pages = app.add_subcommand("pages", "spectral sequence pages");
    add_common(pages, c_pages);
    pages->add_option("--seq", pages_seq, "N | minus1")->check(CLI::IsMember({"N", "minus1"}));
    pages->add_option("--N", pages_n, "N for --seq N")->check(CLI::PositiveNumber);
    pages->add_option("--max-page", pages_max, "pages to compute");

    auto* thin = app.add_subcommand("thin", "delta-thinness verdict");
    add_common(thin, c_thin);

    auto* skein = app.add_subcommand("skein", "skein triple LES bookkeeping");
    skein->add_option("--plus", sk_plus)->required();
    skein->add_option("--minus", sk_minus)->required();
    skein->add_option("--zero", sk_zero)->required();
    skein->add_option("--N", sk_n);
    skein->add_option("--pad", sk_pad);

    auto* corpus = app.add_subcommand("corpus", "corpus golden-file operations");
    corpus->add_option("action", corpus_action, "verify | list | write")
        ->check(CLI::IsMember({"verify", "list", "write"}));
    corpus->add_option("--dir", corpus_dir, "corpus directory");
    corpus->add_option("--pad", corpus_pad);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (homfly->parsed()) return cmd_homfly(c_homfly);
        if (sln->parsed()) return cmd_sln(c_sln, sln_n, sln_unreduced);
        if (poly->parsed()) return cmd_poly(c_poly);
        if (pages->parsed()) return cmd_pages(c_pages, pages_seq, pages_n, pages_max);
        if (thin->parsed()) return cmd_thin(c_thin);
        if (skein->parsed()) return cmd_skein(sk_plus, sk_minus, sk_zero, sk_n, sk_pad);
        if (corpus->parsed()) return cmd_corpus(corpus_action, corpus_dir, corpus_pad);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
