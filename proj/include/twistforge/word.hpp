#pragma once

#include <cctype>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"

namespace twistforge {

enum class Family { C, B, X, T };

// C(j,m): horizontal chain curve m of copy j; B(j,p): vertical curve p (p=0 is b^j_0);
// X(j), T(j): junction curves between copies j and j+1.
struct CycleId {
    Family family = Family::C;
    int j = 1;
    int idx = 0;

    static CycleId C(int j, int m) { return {Family::C, j, m}; }
    static CycleId B(int j, int p) { return {Family::B, j, p}; }
    static CycleId X(int j) { return {Family::X, j, 0}; }
    static CycleId T(int j) { return {Family::T, j, 0}; }

    auto operator<=>(const CycleId&) const = default;
};

inline std::string to_string(const CycleId& c) {
    switch (c.family) {
        case Family::C: return "C[" + std::to_string(c.j) + "," + std::to_string(c.idx) + "]";
        case Family::B: return "B[" + std::to_string(c.j) + "," + std::to_string(c.idx) + "]";
        case Family::X: return "X[" + std::to_string(c.j) + "]";
        case Family::T: return "T[" + std::to_string(c.j) + "]";
    }
    return "?";
}

struct Letter {
    CycleId id;
    int exp = 1;
    bool operator==(const Letter&) const = default;
};

// Leftmost letter acts last.
using TwistWord = std::vector<Letter>;

inline std::string to_string(const Letter& l) {
    return to_string(l.id) + (l.exp == -1 ? "^-1" : "");
}

inline std::string to_string(const TwistWord& w) {
    std::string s;
    for (std::size_t a = 0; a < w.size(); ++a) {
        if (a) s += " ";
        s += to_string(w[a]);
    }
    return s;
}

struct WordParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline int read_int(const std::string& tok, std::size_t& p) {
    std::size_t s = p;
    while (p < tok.size() && std::isdigit(static_cast<unsigned char>(tok[p]))) ++p;
    if (s == p) throw WordParseError("expected an index in '" + tok + "'");
    if (p - s > 6) throw WordParseError("index too large in '" + tok + "'");
    return std::stoi(tok.substr(s, p - s));
}

inline Letter parse_letter(const std::string& tok) {
    std::string body = tok;
    int exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
        std::string e = tok.substr(caret + 1);
        if (e == "-1") exp = -1;
        else if (e == "1" || e == "+1") exp = 1;
        else throw WordParseError("malformed exponent in '" + tok + "'");
        body = tok.substr(0, caret);
    }
    if (body.empty()) throw WordParseError("empty letter");
    std::size_t p = 1;
    char f = body[0];
    Letter l;
    l.exp = exp;
    if (f == 'C' || f == 'B') {
        if (p >= body.size() || body[p] != '[') throw WordParseError("expected '[' in '" + tok + "'");
        ++p;
        int j = read_int(body, p);
        if (p >= body.size() || body[p] != ',') throw WordParseError("expected ',' in '" + tok + "'");
        ++p;
        int m = read_int(body, p);
        if (p >= body.size() || body[p] != ']' || p + 1 != body.size())
            throw WordParseError("expected ']' in '" + tok + "'");
        l.id = f == 'C' ? CycleId::C(j, m) : CycleId::B(j, m);
    } else if (f == 'X' || f == 'T') {
        if (p >= body.size() || body[p] != '[') throw WordParseError("expected '[' in '" + tok + "'");
        ++p;
        int j = read_int(body, p);
        if (p >= body.size() || body[p] != ']' || p + 1 != body.size())
            throw WordParseError("expected ']' in '" + tok + "'");
        l.id = f == 'X' ? CycleId::X(j) : CycleId::T(j);
    } else if (f == 'c' || f == 'b' || f == 'x' || f == 't') {
        // bare simple-case names live in copy 1
        int m = read_int(body, p);
        if (p != body.size()) throw WordParseError("unknown letter '" + tok + "'");
        if (f == 'c') l.id = CycleId::C(1, m);
        else if (f == 'b') l.id = CycleId::B(1, m);
        else if (f == 'x') l.id = CycleId::X(m);
        else l.id = CycleId::T(m);
    } else {
        throw WordParseError("unknown letter '" + tok + "'");
    }
    if (l.id.j < 1) throw WordParseError("copy indices start at 1: '" + tok + "'");
    if (l.id.family == Family::C && l.id.idx < 1) throw WordParseError("chain indices start at 1: '" + tok + "'");
    return l;
}

}  // namespace detail

inline TwistWord parse_word(const std::string& text) {
    TwistWord w;
    std::size_t p = 0;
    while (p < text.size()) {
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        std::size_t s = p;
        while (p < text.size() && !std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        if (s < p) w.push_back(detail::parse_letter(text.substr(s, p - s)));
    }
    return w;
}

// ------------------------------------------------------------ generators

namespace detail {

struct ThetaBuilder {
    const SurfaceSpec& spec;
    bool alternate;

    std::size_t n() const { return spec.n(); }
    int lo(std::size_t j) const { return (alternate || j == 1) ? 1 : 2; }
    int hi(std::size_t j) const {
        int h = spec.copy(j).h();
        return (alternate || j == n()) ? 2 * h + 1 : 2 * h;
    }
    void chain(TwistWord& w, std::size_t j, int from, int to) const {
        int step = from <= to ? 1 : -1;
        if ((step == 1 && from > to) || (step == -1 && from < to)) return;
        for (int m = from;; m += step) {
            w.push_back({CycleId::C(int(j), m), 1});
            if (m == to) break;
        }
    }
    // inward: r_i then l_i
    void Yi(TwistWord& w, std::size_t j) const {
        int i = spec.copy(j).i();
        if (2 * i + 2 <= hi(j)) chain(w, j, 2 * i + 2, hi(j));
        if (2 * i >= lo(j)) chain(w, j, 2 * i, lo(j));
    }
    // outward: r_o, l_o, then m = b_1..b_k c_{2i+1}
    void Yo(TwistWord& w, std::size_t j) const {
        const auto& c = spec.copy(j);
        int i = c.i();
        if (hi(j) >= 2 * i + 2) chain(w, j, hi(j), 2 * i + 2);
        if (lo(j) <= 2 * i) chain(w, j, lo(j), 2 * i);
        for (int p = 1; p <= c.k; ++p) w.push_back({CycleId::B(int(j), p), 1});
        w.push_back({CycleId::C(int(j), 2 * i + 1), 1});
    }
    TwistWord build() const {
        TwistWord w;
        Yi(w, n());
        for (std::size_t j = n(); j >= 2; --j) {
            Yi(w, j - 1);
            w.push_back({CycleId::X(int(j - 1)), 1});
            w.push_back({CycleId::T(int(j - 1)), 1});
            w.push_back({CycleId::B(int(j), 0), 1});
            Yo(w, j);
        }
        w.push_back({CycleId::B(1, 0), 1});
        Yo(w, 1);
        return w;
    }
};

inline void require_valid(const SurfaceSpec& spec) {
    auto rep = validate_spec(spec);
    if (!rep.ok()) throw ValidationError(rep.violations.front());
}

}  // namespace detail

inline TwistWord theta_word(const SurfaceSpec& spec) {
    detail::require_valid(spec);
    return detail::ThetaBuilder{spec, false}.build();
}

// Every copy runs its chain from c_1 to c_{2h+1}; junction letters stay as in the main form.
inline TwistWord theta_word_alternate(const SurfaceSpec& spec) {
    detail::require_valid(spec);
    return detail::ThetaBuilder{spec, true}.build();
}

// c_{2i+2}..c_{2h+1} c_{2i}..c_1 b_0 c_{2h+1}..c_{2i+2} c_1..c_{2i} c_{2i+1}
inline TwistWord hyperelliptic_word(int h, int i) {
    if (h < 1) throw std::invalid_argument("hyperelliptic_word: genus must be positive");
    if (i < 0 || i > h) throw std::invalid_argument("hyperelliptic_word: split index out of range");
    SurfaceSpec s{{CopySpec{i, 0, h - i}}};
    return detail::ThetaBuilder{s, false}.build();
}

// c_1..c_{2h+1} c_{2h+1}..c_1
inline TwistWord standard_hyperelliptic_word(int h) {
    TwistWord w;
    for (int m = 1; m <= 2 * h + 1; ++m) w.push_back({CycleId::C(1, m), 1});
    for (int m = 2 * h + 1; m >= 1; --m) w.push_back({CycleId::C(1, m), 1});
    return w;
}

inline TwistWord square(const TwistWord& w) {
    TwistWord r = w;
    r.insert(r.end(), w.begin(), w.end());
    return r;
}

struct CountReport {
    std::size_t theta_length = 0;
    std::size_t fibers = 0;
    std::size_t expected_theta_length = 0;
    std::size_t expected_fibers = 0;
    bool consistent() const { return theta_length == expected_theta_length && fibers == expected_fibers; }
};

inline CountReport count_report(const SurfaceSpec& spec) {
    CountReport c;
    auto w = theta_word(spec);
    c.theta_length = w.size();
    c.fibers = square(w).size();
    c.expected_theta_length = std::size_t(4 * spec.h() + spec.k() + 2);
    c.expected_fibers = std::size_t(8 * spec.h() + 2 * spec.k() + 4);
    return c;
}

}  // namespace twistforge
