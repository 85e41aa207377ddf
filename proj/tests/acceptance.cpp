// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <iostream>
#include <sstream>

#include "twistforge/twistforge.hpp"

using namespace twistforge;

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& what, const std::string& detail) {
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << "[" << n << "] " << what << " -- " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const SweepBounds kSweep{10, 10, 3, 10};  // h+k <= 10, n <= 3

void golden_table_check() {
    std::ostringstream got;
    bool ok = true;
    double worst = 0;
    for (auto& g : golden_table) {
        auto t0 = std::chrono::steady_clock::now();
        int s = 0;
        try {
            auto spec = parse_spec(std::string(g.spec));
            s = fibration_signature(square(theta_word(spec)), build_catalog(spec));
        } catch (const std::exception& e) {
            ok = false;
            got << "error(" << e.what() << ") ";
            continue;
        }
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        ok = ok && s == g.sigma && dt < 10.0;
        got << s << " ";
    }
    line(1, ok, "golden signature table", "computed " + got.str() + "slowest " + std::to_string(worst) + " s");
}

void word_length_check(const std::vector<SurfaceSpec>& specs) {
    std::size_t bad = 0;
    for (auto& s : specs)
        if (!count_report(s).consistent()) ++bad;
    auto spot = square(theta_word(parse_spec("(0 2 1,1 2 0)"))).size();
    line(2, bad == 0 && spot == 28, "word-length law",
         std::to_string(specs.size()) + " specs, " + std::to_string(bad) + " violations, (0 2 1,1 2 0) -> " +
             std::to_string(spot));
}

void involution_check(const std::vector<SurfaceSpec>& specs) {
    std::size_t bad = 0, k0 = 0;
    for (auto& s : specs) {
        try {
            auto cat = build_catalog(s);
            Matrix m = word_matrix(theta_word(s), cat);
            bool ok = !m.is_identity() && (m * m).is_identity();
            if (s.k() == 0) {
                ++k0;
                ok = ok && m == -Matrix::identity(cat.rank);
            }
            if (!ok) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
    }
    line(3, bad == 0, "involution law",
         std::to_string(specs.size()) + " specs (" + std::to_string(k0) + " with k=0), " + std::to_string(bad) +
             " violations");
}

void corollary_check() {
    bool ok = true;
    int n = 0;
    for (int h = 1; h <= 5; ++h)
        for (int i = 0; i <= h; ++i) {
            auto cat = hyperelliptic_catalog(h, i);
            ok = ok && word_matrix(hyperelliptic_word(h, i), cat) == -Matrix::identity(cat.rank);
            ++n;
        }
    // hand catalog: c1 = c3 = e1, c2 = b0 = e2
    CurveCatalog hand;
    hand.rank = 2;
    hand.classes[CycleId::C(1, 1)] = {1, 0};
    hand.classes[CycleId::C(1, 3)] = {1, 0};
    hand.classes[CycleId::C(1, 2)] = {0, 1};
    hand.classes[CycleId::B(1, 0)] = {0, 1};
    bool hand_ok = word_matrix(parse_word("c2 c3 b0 c3 c2 c1"), hand) == -Matrix::identity(2);
    line(4, ok && hand_ok, "hyperelliptic words act as -I",
         std::to_string(n) + " pairs (h,i) with 0<=i<=h<=5" + (hand_ok ? ", hand chain -> -I" : ", hand chain differs"));
}

void calibration_check() {
    try {
        auto cal = calibrate();
        int s = fibration_signature_classes(elliptic_classes(), 2, cal.flags, false);
        line(5, cal.passing == 1 && s == -8, "Meyer convention calibration",
             std::to_string(cal.passing) + " of 16 combinations pass; " + to_string(cal.flags) +
                 "; sigma((c1 c2)^6) = " + std::to_string(s));
    } catch (const std::exception& e) {
        line(5, false, "Meyer convention calibration", e.what());
    }
}

void formula_check() {
    auto t0 = std::chrono::steady_clock::now();
    auto rows = conjecture_scan(kSweep);
    std::size_t bad = 0, errors = 0, matches = 0;
    for (auto& row : rows) {
        if (!row.ok) {
            ++errors;
            continue;
        }
        auto& r = row.report;
        bool ok = r.chi == 8 + 4 * r.h - 2 * r.k && r.c1sq == 3 * r.sigma + 2 * r.chi &&
                  (r.sigma + r.chi) % 4 == 0 && 4 * r.chi_h == r.sigma + r.chi;
        if (r.conjecture) {
            ++matches;
            ok = ok && r.c1sq == -4 * (r.g - 1) && r.chi_h == 1 - r.k / 2;
        }
        if (!ok) ++bad;
    }
    line(6, bad == 0 && errors == 0 && !rows.empty(), "formula consistency over the sweep",
         std::to_string(rows.size()) + " specs, " + std::to_string(bad) + " violations, " + std::to_string(errors) +
             " errors, " + std::to_string(matches) + " rows with sigma=-4(h+1), " +
             std::to_string(seconds_since(t0)) + " s");
}

void property_check() {
    std::mt19937_64 rng(20240611);
    int fails = 0;
    // transvection symplecticity
    for (int t = 0; t < 100; ++t) {
        Vec v = detail::random_class(rng, 6);
        if (!is_symplectic(transvection_matrix(v))) ++fails;
    }
    // braid and commutation on matrices
    for (int t = 0; t < 100; ++t) {
        Matrix g = detail::random_symplectic(rng, 6);
        Vec e1(6, 0), e2(6, 0), e3(6, 0);
        e1[0] = e2[1] = e3[2] = 1;
        Matrix A = transvection_matrix(g.apply(e1)), B = transvection_matrix(g.apply(e2)),
               C = transvection_matrix(g.apply(e3));
        if (!(A * B * A == B * A * B) || !(A * C == C * A)) ++fails;
    }
    // rotation and Hurwitz invariance of sigma on theta^2
    auto specs = enumerate_specs({4, 4, 2, 5});
    std::uniform_int_distribution<std::size_t> pick(0, specs.size() - 1);
    for (int t = 0; t < 100; ++t) {
        auto& s = specs[pick(rng)];
        auto cat = build_catalog(s);
        std::vector<Vec> cls;
        for (auto& l : square(theta_word(s))) cls.push_back(cat.at(l.id));
        int ref = fibration_signature_classes(cls, cat.rank);
        auto rot = cls;
        std::rotate(rot.begin(), rot.begin() + long(std::uniform_int_distribution<std::size_t>(1, cls.size() - 1)(rng)),
                    rot.end());
        if (fibration_signature_classes(rot, cat.rank) != ref) ++fails;
        auto hw = cls;
        std::size_t a = std::uniform_int_distribution<std::size_t>(0, cls.size() - 2)(rng);
        Vec tb = transvection_matrix(hw[a]).apply(hw[a + 1]);
        hw[a + 1] = hw[a];
        hw[a] = tb;
        if (fibration_signature_classes(hw, cat.rank) != ref) ++fails;
    }
    // cocycle identity and conjugation invariance
    for (int t = 0; t < 100; ++t) {
        Matrix a = detail::random_symplectic(rng, 4), b = detail::random_symplectic(rng, 4),
               c = detail::random_symplectic(rng, 4);
        if (meyer_tau(a, b) + meyer_tau(a * b, c) != meyer_tau(a, b * c) + meyer_tau(b, c)) ++fails;
        if (meyer_tau(c * a * symplectic_inverse(c), c * b * symplectic_inverse(c)) != meyer_tau(a, b)) ++fails;
    }
    // rewrite moves preserve Psi
    auto cat = hyperelliptic_catalog(3, 1);
    std::uniform_int_distribution<int> idx(1, 7), sgn(0, 1), len(3, 10);
    int applied = 0;
    for (int t = 0; t < 1000; ++t) {
        TwistWord w;
        int L = len(rng);
        for (int a = 0; a < L; ++a)
            w.push_back({a == 0 && sgn(rng) ? CycleId::B(1, 0) : CycleId::C(1, idx(rng)), sgn(rng) ? 1 : -1});
        std::vector<RewriteMove> ok;
        for (std::size_t p = 0; p <= w.size(); ++p)
            for (auto k : {MoveKind::Braid, MoveKind::Commute, MoveKind::Cancel, MoveKind::ConjExpand,
                           MoveKind::ConjCollapse, MoveKind::Introduce}) {
                RewriteMove m{k, p, std::nullopt};
                if (k == MoveKind::Introduce) m.letter = Letter{CycleId::C(1, idx(rng)), 1};
                try {
                    detail::rewrite_once(w, m, &cat);
                    ok.push_back(m);
                } catch (const RewriteError&) {
                }
            }
        auto m = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
        try {
            if (!sp_equivalent(w, apply_move(w, m, cat), cat)) ++fails;
            ++applied;
        } catch (const std::exception&) {
            ++fails;
        }
    }
    line(7, fails == 0 && applied == 1000, "property suites",
         std::to_string(fails) + " failures; 100 trials each, 1000 rewrite moves");
}

void exclusion_check() {
    // sigma comes from the cocycle sum, the conjecture flag from comparing with it:
    // under a wrong convention the same pipeline reports a mismatch instead of assuming a match
    auto s = parse_spec("(2 4 1,1 2 0)");
    auto rep = invariant_report(s);
    bool same = rep.sigma == fibration_signature(square(theta_word(s)), build_catalog(s)) &&
                golden_lookup(rep.spec) == nullptr;
    ConventionFlags wrong = calibrated_flags();
    wrong.negate_form = false;
    int flipped = fibration_signature_classes(elliptic_classes(), 2, wrong, false);
    bool compared = flipped != -4 * (1 + 1);
    line(8, same && compared, "excluded by design",
         "per-twist contribution sequences are not reproduced, only totals; sigma=-4(h+1) is tested per row, "
         "never assumed (untabulated (2 4 1,1 2 0): sigma=" +
             std::to_string(rep.sigma) + ")");
}

}  // namespace

int main() {
    golden_table_check();
    auto specs = enumerate_specs(kSweep);
    word_length_check(specs);
    involution_check(specs);
    corollary_check();
    calibration_check();
    formula_check();
    property_check();
    exclusion_check();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
