#pragma once

#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "word.hpp"

namespace twistforge {

// Psi-equality is necessary, not sufficient, for equality of mapping classes.
inline bool sp_equivalent(const TwistWord& a, const TwistWord& b, const CurveCatalog& cat) {
    return word_matrix(a, cat) == word_matrix(b, cat);
}

enum class MoveKind { Braid, Commute, Cancel, Introduce, ConjExpand, ConjCollapse };

inline std::string to_string(MoveKind k) {
    switch (k) {
        case MoveKind::Braid: return "braid";
        case MoveKind::Commute: return "commute";
        case MoveKind::Cancel: return "cancel";
        case MoveKind::Introduce: return "introduce";
        case MoveKind::ConjExpand: return "conj_expand";
        case MoveKind::ConjCollapse: return "conj_collapse";
    }
    return "?";
}

inline MoveKind parse_move_kind(const std::string& s) {
    if (s == "braid") return MoveKind::Braid;
    if (s == "commute") return MoveKind::Commute;
    if (s == "cancel") return MoveKind::Cancel;
    if (s == "introduce") return MoveKind::Introduce;
    if (s == "conj_expand") return MoveKind::ConjExpand;
    if (s == "conj_collapse") return MoveKind::ConjCollapse;
    throw std::invalid_argument("unknown move kind '" + s + "'");
}

// pos is 0-based. Introduce inserts (letter, letter^-1) before pos.
struct RewriteMove {
    MoveKind kind = MoveKind::Braid;
    std::size_t pos = 0;
    std::optional<Letter> letter;
    bool operator==(const RewriteMove&) const = default;
};

inline std::string to_string(const RewriteMove& m) {
    std::string s = to_string(m.kind) + " " + std::to_string(m.pos);
    if (m.letter) s += " " + to_string(*m.letter);
    return s;
}

struct RewriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool chain_letter(const Letter& l) { return l.id.family == Family::C; }

inline TwistWord conj_expansion(const CurveCatalog& cat, int j, int exp) {
    if (j < 1 || std::size_t(j) > cat.spec.n()) throw RewriteError("conj_expand: no copy " + std::to_string(j));
    int h = cat.spec.copy(std::size_t(j)).h();
    TwistWord w;
    for (int m = 1; m <= 2 * h; ++m) w.push_back({CycleId::C(j, m), 1});
    w.push_back({CycleId::C(j, 2 * h + 1), exp});
    for (int m = 2 * h; m >= 1; --m) w.push_back({CycleId::C(j, m), -1});
    return w;
}

// Side conditions only; the Psi check is done by apply_move.
inline TwistWord rewrite_once(const TwistWord& w, const RewriteMove& mv, const CurveCatalog* cat) {
    std::size_t p = mv.pos;
    auto need = [&](std::size_t len) {
        if (p + len > w.size()) throw RewriteError(to_string(mv.kind) + ": position " + std::to_string(p) + " out of range");
    };
    TwistWord r = w;
    switch (mv.kind) {
        case MoveKind::Braid: {
            need(3);
            const Letter &a = w[p], &b = w[p + 1], &c = w[p + 2];
            if (!(a == c) || !chain_letter(a) || !chain_letter(b) || a.id.j != b.id.j || a.exp != b.exp ||
                std::abs(a.id.idx - b.id.idx) != 1)
                throw RewriteError("braid: letters at " + std::to_string(p) + " are not of the form x y x with adjacent chain indices");
            r[p] = b;
            r[p + 1] = a;
            r[p + 2] = b;
            return r;
        }
        case MoveKind::Commute: {
            need(2);
            const Letter &a = w[p], &b = w[p + 1];
            if (!chain_letter(a) || !chain_letter(b) || a.id.j != b.id.j || std::abs(a.id.idx - b.id.idx) < 2)
                throw RewriteError("commute: chain indices at " + std::to_string(p) + " differ by less than 2");
            if (cat && symplectic_form(cat->at(a.id), cat->at(b.id)) != 0)
                throw RewriteError("commute: classes at " + std::to_string(p) + " intersect");
            std::swap(r[p], r[p + 1]);
            return r;
        }
        case MoveKind::Cancel: {
            need(2);
            if (!(w[p].id == w[p + 1].id) || w[p].exp != -w[p + 1].exp)
                throw RewriteError("cancel: letters at " + std::to_string(p) + " are not inverse to each other");
            r.erase(r.begin() + long(p), r.begin() + long(p) + 2);
            return r;
        }
        case MoveKind::Introduce: {
            if (p > w.size()) throw RewriteError("introduce: position out of range");
            if (!mv.letter) throw RewriteError("introduce: missing letter");
            Letter a = *mv.letter, b = a;
            b.exp = -a.exp;
            r.insert(r.begin() + long(p), {a, b});
            return r;
        }
        case MoveKind::ConjExpand: {
            need(1);
            const Letter& a = w[p];
            if (a.id.family != Family::B || a.id.idx != 0) throw RewriteError("conj_expand: letter at " + std::to_string(p) + " is not b_0");
            if (!cat) throw RewriteError("conj_expand: needs a catalog");
            auto e = conj_expansion(*cat, a.id.j, a.exp);
            r.erase(r.begin() + long(p));
            r.insert(r.begin() + long(p), e.begin(), e.end());
            return r;
        }
        case MoveKind::ConjCollapse: {
            need(1);
            if (!chain_letter(w[p])) throw RewriteError("conj_collapse: no chain letter at " + std::to_string(p));
            if (!cat) throw RewriteError("conj_collapse: needs a catalog");
            int j = w[p].id.j;
            for (int exp : {1, -1}) {
                auto e = conj_expansion(*cat, j, exp);
                if (p + e.size() <= w.size() && std::equal(e.begin(), e.end(), w.begin() + long(p))) {
                    r.erase(r.begin() + long(p), r.begin() + long(p + e.size()));
                    r.insert(r.begin() + long(p), Letter{CycleId::B(j, 0), exp});
                    return r;
                }
            }
            throw RewriteError("conj_collapse: no conjugation pattern at " + std::to_string(p));
        }
    }
    throw RewriteError("unknown move");
}

}  // namespace detail

// Applies one move, checking its side condition and that Psi is unchanged.
inline TwistWord apply_move(const TwistWord& w, const RewriteMove& mv, const CurveCatalog& cat) {
    TwistWord r = detail::rewrite_once(w, mv, &cat);
    for (auto& l : r)
        if (!cat.contains(l.id)) throw RewriteError("letter " + to_string(l.id) + " not in catalog");
    if (!sp_equivalent(w, r, cat)) throw RewriteError(to_string(mv.kind) + " at " + std::to_string(mv.pos) + " changes Psi");
    return r;
}

// ---------------------------------------------------------------- scripts

struct RewriteScript {
    TwistWord init;
    std::vector<RewriteMove> moves;
    TwistWord expect;
};

inline std::string to_text(const RewriteScript& s) {
    std::ostringstream os;
    os << "init: " << to_string(s.init) << "\n";
    for (auto& m : s.moves) os << "move: " << to_string(m) << "\n";
    os << "expect: " << to_string(s.expect) << "\n";
    return os.str();
}

inline RewriteScript parse_script(const std::string& text) {
    RewriteScript s;
    std::istringstream is(text);
    std::string line;
    bool have_init = false, have_expect = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("script line " + std::to_string(lineno) + ": missing ':'");
        std::string key = line.substr(first, colon - first), rest = line.substr(colon + 1);
        if (key == "init") {
            s.init = parse_word(rest);
            have_init = true;
        } else if (key == "expect") {
            s.expect = parse_word(rest);
            have_expect = true;
        } else if (key == "move") {
            std::istringstream ms(rest);
            std::string kind, letter;
            long pos = -1;
            if (!(ms >> kind >> pos) || pos < 0)
                throw std::invalid_argument("script line " + std::to_string(lineno) + ": malformed move");
            RewriteMove m{parse_move_kind(kind), std::size_t(pos), std::nullopt};
            if (ms >> letter) {
                auto w = parse_word(letter);
                if (w.size() != 1) throw std::invalid_argument("script line " + std::to_string(lineno) + ": bad letter");
                m.letter = w[0];
            }
            s.moves.push_back(m);
        } else {
            throw std::invalid_argument("script line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!have_init || !have_expect) throw std::invalid_argument("script needs init: and expect: lines");
    return s;
}

struct ReplayReport {
    bool ok = false;
    long failed_step = -1;  // index into moves, or moves.size() when the final word differs
    std::string message;
    TwistWord final_word;
};

inline ReplayReport replay_script(const RewriteScript& s, const CurveCatalog& cat) {
    ReplayReport rep;
    TwistWord w = s.init;
    for (std::size_t a = 0; a < s.moves.size(); ++a) {
        try {
            w = apply_move(w, s.moves[a], cat);
        } catch (const std::exception& e) {
            rep.failed_step = long(a);
            rep.message = e.what();
            rep.final_word = w;
            return rep;
        }
    }
    rep.final_word = w;
    if (!(w == s.expect)) {
        rep.failed_step = long(s.moves.size());
        rep.message = "final word differs from expected";
        return rep;
    }
    rep.ok = true;
    rep.message = "ok";
    return rep;
}

// ------------------------------------------------------- corollary script

namespace detail {

struct Planner {
    TwistWord w;
    std::vector<RewriteMove> moves;
    const CurveCatalog* cat;

    void act(RewriteMove m) {
        w = rewrite_once(w, m, cat);
        moves.push_back(m);
    }
    static bool is(const Letter& l, int m, int e) { return l.id.family == Family::C && l.id.idx == m && l.exp == e; }
    std::size_t find(int m, int e, std::size_t from = 0) const {
        for (std::size_t p = from; p < w.size(); ++p)
            if (is(w[p], m, e)) return p;
        throw std::logic_error("corollary planner: letter not found");
    }
    // swap w[p] leftwards until pred(w[p-1]) fails
    template <class Pred>
    std::size_t slide_left(std::size_t p, Pred pred) {
        while (p > 0 && pred(w[p - 1])) {
            act({MoveKind::Commute, p - 1, std::nullopt});
            --p;
        }
        return p;
    }
    template <class Pred>
    std::size_t slide_right(std::size_t p, Pred pred) {
        while (p + 1 < w.size() && pred(w[p + 1])) {
            act({MoveKind::Commute, p, std::nullopt});
            ++p;
        }
        return p;
    }
};

}  // namespace detail

// One explicit move order for the reduction of the corollary word
//   c_{2i+2}..c_{2h+1} c_{2i}..c_1 b_0 c_{2h+1}..c_{2i+2} c_1..c_{2i} c_{2i+1}
// to c_{2i}..c_1 c_1..c_{2h+1} c_{2h+1}..c_{2i+1}, a cyclic rotation of the standard
// hyperelliptic word (equal to it because that word is central).
inline RewriteScript corollary_script(int h, int i, const CurveCatalog& cat) {
    detail::Planner P{hyperelliptic_word(h, i), {}, &cat};
    RewriteScript s;
    s.init = P.w;
    const int top = 2 * h + 1;

    // expand b_0 into c_1..c_{2h} c_{2h+1} c_{2h}^-1..c_1^-1
    std::size_t b = 0;
    while (P.w[b].id.family != Family::B) ++b;
    P.act({MoveKind::ConjExpand, b, std::nullopt});

    // cancel c_1^-1..c_{2i}^-1 against c_1..c_{2i} past the block c_{2h+1}..c_{2i+2}
    for (int m = 1; m <= 2 * i; ++m) {
        std::size_t p = P.find(m, -1);
        p = P.slide_right(p, [&](const Letter& l) { return l.exp == 1 && l.id.idx >= 2 * i + 2; });
        P.act({MoveKind::Cancel, p, std::nullopt});
    }

    // c_1..c_{2h} c_{2h+1} c_{2h}^-1..c_{2i+1}^-1  ->  c_{2h+1}^-1..c_{2i+2}^-1 c_1..c_{2h+1}
    for (int m = 2 * h; m >= 2 * i + 1; --m) {
        std::size_t p = P.find(m, -1);
        p = P.slide_left(p, [&](const Letter& l) { return l.exp == 1 && l.id.idx >= m + 2; });
        // x y x^-1 at p-2 becomes y^-1 x y
        Letter y{CycleId::C(1, m + 1), -1};
        P.act({MoveKind::Introduce, p - 2, y});
        P.act({MoveKind::Braid, p - 1, std::nullopt});
        P.act({MoveKind::Cancel, p + 1, std::nullopt});
        P.slide_left(p - 2, [&](const Letter& l) { return l.exp == 1 && l.id.idx <= m - 1; });
    }

    // move the inverse block left past c_{2i}..c_1 and cancel it against c_{2i+2}..c_{2h+1}
    for (int m = top; m >= 2 * i + 2; --m) {
        std::size_t p = P.find(m, -1);
        p = P.slide_left(p, [&](const Letter& l) { return l.exp == 1 && l.id.idx <= 2 * i; });
        P.act({MoveKind::Cancel, p - 1, std::nullopt});
    }

    s.moves = P.moves;
    s.expect = P.w;
    return s;
}

inline TwistWord corollary_endpoint(int h, int i) {
    TwistWord w;
    for (int m = 2 * i; m >= 1; --m) w.push_back({CycleId::C(1, m), 1});
    for (int m = 1; m <= 2 * h + 1; ++m) w.push_back({CycleId::C(1, m), 1});
    for (int m = 2 * h + 1; m >= 2 * i + 1; --m) w.push_back({CycleId::C(1, m), 1});
    return w;
}

}  // namespace twistforge
