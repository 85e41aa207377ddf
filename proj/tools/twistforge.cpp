// twistforge command line: word, invariants, sweep, check, catalog, rewrite, calibrate.
#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "twistforge/twistforge.hpp"

namespace fs = std::filesystem;
using namespace twistforge;

namespace {

constexpr int kOk = 0, kMismatch = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string triple_order = "lkr";
    bool no_cache = false;
};

TripleOrder order_of(const Options& o) {
    if (o.triple_order == "lkr") return TripleOrder::LKR;
    if (o.triple_order == "lrk") return TripleOrder::LRK;
    throw UsageError("--triple-order must be lkr or lrk");
}

SurfaceSpec spec_arg(const std::string& text, const Options& o) {
    try {
        return parse_spec(text, order_of(o));
    } catch (const ParseError& e) {
        throw UsageError(std::string("bad configuration: ") + e.what());
    } catch (const ValidationError& e) {
        throw UsageError(std::string("invalid configuration: ") + e.what());
    }
}

// ------------------------------------------------------------------ cache

std::optional<fs::path> cache_dir() {
    if (const char* h = std::getenv("TWISTFORGE_HOME"); h && *h) return fs::path(h);
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "twistforge";
    return std::nullopt;
}

std::optional<fs::path> catalog_cache_path(const SurfaceSpec& s, Variant v) {
    auto d = cache_dir();
    if (!d) return std::nullopt;
    std::string key = to_string(s) + "|" + to_string(v) + "|" + to_string(calibrated_flags());
    return *d / "catalogs" / (fingerprint(key) + ".cat");
}

// Content-addressed by spec, variant and convention flags; cached entries are revalidated on load.
CurveCatalog obtain_catalog(const SurfaceSpec& s, Variant v, const Options& o) {
    auto path = catalog_cache_path(s, v);
    if (path && !o.no_cache && fs::exists(*path)) {
        try {
            CurveCatalog c = load_catalog(path->string());
            if (c.status == "passed" && c.spec == s && c.variant == v) return c;
        } catch (const std::exception&) {
        }
    }
    CurveCatalog c = build_catalog(s, {v});
    if (path) {
        std::error_code ec;
        fs::create_directories(path->parent_path(), ec);
        if (!ec) {
            try {
                save_catalog(c, path->string());
            } catch (const std::exception&) {
            }
        }
    }
    return c;
}

void print_checks(const CatalogReport& r) {
    for (auto& c : r.checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
}

// --------------------------------------------------------------- commands

int cmd_word(const std::string& text, bool alternate, bool squared, bool json, const Options& o) {
    SurfaceSpec s = spec_arg(text, o);
    TwistWord w = alternate ? theta_word_alternate(s) : theta_word(s);
    if (squared) w = square(w);
    if (json) {
        nlohmann::json j;
        j["spec"] = to_string(s);
        j["variant"] = alternate ? "alternate" : "main";
        j["squared"] = squared;
        j["length"] = w.size();
        std::vector<std::string> letters;
        for (auto& l : w) letters.push_back(to_string(l));
        j["letters"] = letters;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << to_string(w) << "\n";
    }
    return kOk;
}

int cmd_invariants(const std::string& text, bool json, const Options& o) {
    SurfaceSpec s = spec_arg(text, o);
    InvariantReport r;
    try {
        r = invariant_report(s, obtain_catalog(s, Variant::Main, o));
    } catch (const InvariantError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    } catch (const SignatureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    if (json) {
        std::cout << to_json(r).dump(2) << "\n";
        return kOk;
    }
    std::cout << "spec          " << r.spec << "\n"
              << "n h k g       " << r.n << " " << r.h << " " << r.k << " " << r.g << "\n"
              << "len(theta)    " << r.theta_length << "\n"
              << "fibers        " << r.fibers << "\n"
              << "chi           " << r.chi << "\n"
              << "sigma         " << r.sigma << "\n"
              << "c1^2          " << r.c1sq << "  (closed form " << r.c1sq_closed
              << (r.c1sq_matches_closed ? ", match)" : ", differs)") << "\n"
              << "chi_h         " << r.chi_h << "  (closed form " << r.chi_h_closed
              << (r.chi_h_matches_closed ? ", match)" : ", differs)") << "\n"
              << "sigma=-4(h+1) " << (r.conjecture ? "yes" : "no") << "\n"
              << "catalog       " << r.catalog_fingerprint << "\n";
    return kOk;
}

int cmd_sweep(const SweepBounds& b, const std::string& csv, unsigned threads) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!csv.empty()) {
        file.open(csv);
        if (!file) throw UsageError("cannot write " + csv);
        out = &file;
    }
    auto rows = conjecture_scan(b, threads);
    *out << csv_header() << "\n";
    std::size_t match = 0, errors = 0;
    for (auto& r : rows) {
        *out << csv_row(r) << "\n";
        if (!r.ok) ++errors;
        else if (r.report.conjecture) ++match;
    }
    std::cerr << rows.size() << " specs, " << match << " match sigma=-4(h+1), " << rows.size() - match - errors
              << " counterexamples, " << errors << " errors\n";
    return kOk;
}

int cmd_check_golden(const Options& o) {
    int matched = 0;
    for (auto& g : golden_table) {
        SurfaceSpec s = parse_spec(std::string(g.spec));
        std::string got;
        bool ok = false;
        try {
            CurveCatalog cat = obtain_catalog(s, Variant::Main, o);
            int sigma = fibration_signature(square(theta_word(s)), cat);
            ok = sigma == g.sigma;
            got = std::to_string(sigma);
        } catch (const std::exception& e) {
            got = std::string("error: ") + e.what();
        }
        if (ok) ++matched;
        std::cout << (ok ? "ok       " : "MISMATCH ") << g.spec << "  expected " << g.sigma << "  computed " << got
                  << "\n";
    }
    std::cout << matched << "/" << golden_table.size() << " matched\n";
    return matched == int(golden_table.size()) ? kOk : kMismatch;
}

int cmd_catalog(const std::string& action, const std::string& text, const std::string& path, bool alternate,
                const Options& o) {
    Variant v = alternate ? Variant::Alternate : Variant::Main;
    if (action == "build") {
        SurfaceSpec s = spec_arg(text, o);
        Options fresh = o;
        fresh.no_cache = true;
        CurveCatalog c = path.empty() ? obtain_catalog(s, v, fresh) : build_catalog(s, {v});
        auto rep = validate_catalog(c);
        if (!path.empty()) save_catalog(c, path);
        print_checks(rep);
        std::cout << "fingerprint " << fingerprint(c) << "\n";
        return rep.ok() ? kOk : kMismatch;
    }
    CurveCatalog c;
    if (!path.empty()) {
        try {
            c = load_catalog(path);
        } catch (const CatalogFormatError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kMismatch;
        }
        if (!text.empty() && !(c.spec == spec_arg(text, o)))
            throw UsageError("catalog file is for " + to_string(c.spec) + ", not " + text);
    } else {
        if (text.empty()) throw UsageError("catalog " + action + " needs a configuration or --catalog");
        c = obtain_catalog(spec_arg(text, o), v, o);
    }
    if (action == "show") {
        std::cout << serialize_catalog(c);
        return kOk;
    }
    auto rep = validate_catalog(c);
    print_checks(rep);
    return rep.ok() ? kOk : kMismatch;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int report_replay(const RewriteScript& s, const CurveCatalog& cat) {
    auto r = replay_script(s, cat);
    if (!r.ok) {
        std::cout << "FAIL at step " << r.failed_step << ": " << r.message << "\n"
                  << "word: " << to_string(r.final_word) << "\n";
        return kMismatch;
    }
    std::cout << "ok: " << s.moves.size() << " moves\n"
              << "final: " << to_string(r.final_word) << "\n";
    return kOk;
}

int cmd_rewrite_replay(const std::string& path, const std::string& spec_text, const Options& o) {
    RewriteScript s;
    try {
        s = parse_script(read_file(path));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const WordParseError& e) {
        throw UsageError(e.what());
    }
    SurfaceSpec spec;
    if (!spec_text.empty()) {
        spec = spec_arg(spec_text, o);
    } else {
        // single copy (0 0 h) large enough for every chain letter in the script
        int top = 1;
        for (auto* w : {&s.init, &s.expect})
            for (auto& l : *w)
                if (l.id.family == Family::C) top = std::max(top, l.id.idx);
        spec = SurfaceSpec{{CopySpec{0, 0, std::max(1, top / 2)}}};
    }
    return report_replay(s, obtain_catalog(spec, Variant::Main, o));
}

int cmd_rewrite_corollary(int h, int i, const std::string& emit, const Options& o) {
    if (h < 1 || i < 0 || i > h) throw UsageError("need 0 <= i <= h and h >= 1");
    CurveCatalog cat = obtain_catalog(SurfaceSpec{{CopySpec{i, 0, h - i}}}, Variant::Main, o);
    RewriteScript s = corollary_script(h, i, cat);
    if (!emit.empty()) {
        std::ofstream f(emit);
        if (!f) throw UsageError("cannot write " + emit);
        f << to_text(s);
    }
    int rc = report_replay(s, cat);
    bool eq = sp_equivalent(s.expect, standard_hyperelliptic_word(h), cat);
    bool minus_i = word_matrix(s.expect, cat) == -Matrix::identity(cat.rank);
    std::cout << "Psi(final) = Psi(standard hyperelliptic word): " << (eq ? "yes" : "no") << "\n"
              << "Psi(final) = -I: " << (minus_i ? "yes" : "no") << "\n";
    return rc == kOk && eq && minus_i ? kOk : kMismatch;
}

int cmd_calibrate() {
    Calibration cal;
    try {
        cal = calibrate();
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    for (auto& g : cal.gates)
        std::cout << to_string(g.flags) << "  symmetric=" << g.symmetric << " trivial=" << g.trivial
                  << " cocycle=" << g.cocycle << " elliptic=" << g.elliptic << (g.passed() ? "  PASS" : "") << "\n";
    std::cout << "selected " << to_string(cal.flags) << "\n";
    if (auto d = cache_dir()) {
        std::error_code ec;
        fs::create_directories(*d, ec);
        std::ofstream f(*d / "flags");
        if (f) {
            f << to_string(cal.flags) << "\n";
            std::cout << "saved to " << (*d / "flags").string() << "\n";
        }
    }
    return cal.flags == calibrated_flags() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twistforge: Lefschetz fibrations from involution words"};
    app.require_subcommand(1, 1);
    app.fallthrough();  // global flags may follow the subcommand
    Options opt;
    app.add_option("--triple-order", opt.triple_order, "reading order of each copy triple: lkr or lrk")
        ->check(CLI::IsMember({"lkr", "lrk"}));
    app.add_flag("--no-cache", opt.no_cache, "rebuild catalogs instead of reading the cache");

    std::string spec_text;

    auto* word = app.add_subcommand("word", "print the involution word");
    bool alternate = false, squared = false, json = false;
    word->add_option("spec", spec_text, "configuration, e.g. \"(0 2 1,1 2 0)\"")->required();
    word->add_flag("--alternate", alternate, "alternate junction form");
    word->add_flag("--squared", squared, "print theta^2");
    word->add_flag("--json", json, "JSON output");

    auto* inv = app.add_subcommand("invariants", "invariants of the fibration defined by theta^2");
    inv->add_option("spec", spec_text)->required();
    inv->add_flag("--json", json);

    auto* sweep = app.add_subcommand("sweep", "conjecture table over all valid configurations within bounds");
    SweepBounds bounds;
    std::string csv_path;
    unsigned threads = 0;
    sweep->add_option("--max-h", bounds.max_h, "bound on total horizontal genus")->required();
    sweep->add_option("--max-k", bounds.max_k, "bound on total vertical genus")->required();
    sweep->add_option("--max-n", bounds.max_n, "bound on the number of copies")->required();
    sweep->add_option("--max-hk", bounds.max_hk, "optional bound on h+k");
    sweep->add_option("--csv", csv_path, "write the table here instead of stdout");
    sweep->add_option("--threads", threads, "worker threads, 0 for all cores");

    auto* check = app.add_subcommand("check", "self checks");
    bool golden = false;
    check->add_flag("--golden", golden, "compare the twelve tabulated signatures")->required();

    auto* catalog = app.add_subcommand("catalog", "curve catalogs");
    std::string action, catalog_path;
    bool cat_alternate = false;
    catalog->add_option("action", action)->required()->check(CLI::IsMember({"build", "validate", "show"}));
    catalog->add_option("spec", spec_text);
    catalog->add_option("--catalog", catalog_path, "catalog file");
    catalog->add_flag("--alternate", cat_alternate, "alternate junction model");

    auto* rewrite = app.add_subcommand("rewrite", "word rewriting");
    rewrite->require_subcommand(1, 1);
    auto* replay = rewrite->add_subcommand("replay", "replay a move script");
    std::string script_path;
    replay->add_option("script", script_path)->required();
    replay->add_option("--spec", spec_text, "configuration whose catalog resolves the letters");
    auto* corollary = rewrite->add_subcommand("corollary", "built-in reduction to the standard hyperelliptic word");
    int ch = 0, ci = 0;
    std::string emit;
    corollary->set_help_flag("--help", "print this help");  // frees -h for the genus
    corollary->add_option("--h", ch, "genus")->required();
    corollary->add_option("--i", ci, "split index")->required();
    corollary->add_option("--emit", emit, "also write the script to this file");

    auto* cal = app.add_subcommand("calibrate", "select the Meyer cocycle conventions and save them");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*word) return cmd_word(spec_text, alternate, squared, json, opt);
        if (*inv) return cmd_invariants(spec_text, json, opt);
        if (*sweep) return cmd_sweep(bounds, csv_path, threads);
        if (*check) return cmd_check_golden(opt);
        if (*catalog) return cmd_catalog(action, spec_text, catalog_path, cat_alternate, opt);
        if (*replay) return cmd_rewrite_replay(script_path, spec_text, opt);
        if (*corollary) return cmd_rewrite_corollary(ch, ci, emit, opt);
        if (*cal) return cmd_calibrate();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kUsage;
}
