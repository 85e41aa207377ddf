#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistforge {

// Reading order of the three integers in each copy of a configuration string.
// The default reads (left, vertical, right); LRK reads (left, right, vertical).
enum class TripleOrder { LKR, LRK };

struct CopySpec {
    int l = 0;  // left genus, also the split index i_j
    int k = 0;  // vertical genus, even
    int r = 0;  // right genus

    int h() const { return l + r; }
    int i() const { return l; }
    bool operator==(const CopySpec&) const = default;
};

struct SurfaceSpec {
    std::vector<CopySpec> copies;

    std::size_t n() const { return copies.size(); }
    int h() const {
        int s = 0;
        for (auto& c : copies) s += c.h();
        return s;
    }
    int k() const {
        int s = 0;
        for (auto& c : copies) s += c.k;
        return s;
    }
    int g() const { return h() + k(); }
    // number of holes in the row before copy j (1-based)
    int offset(std::size_t j) const {
        int s = 0;
        for (std::size_t a = 0; a + 1 < j; ++a) s += copies[a].h();
        return s;
    }
    const CopySpec& copy(std::size_t j) const { return copies.at(j - 1); }
    bool operator==(const SurfaceSpec&) const = default;
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CopyGenus {
    int h, i, k;
};

struct GenusSummary {
    std::size_t n = 0;
    std::vector<CopyGenus> per_copy;
    int h = 0, k = 0, g = 0;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    bool ok() const { return violations.empty(); }
};

inline std::string to_string(const SurfaceSpec& s, TripleOrder order = TripleOrder::LKR) {
    std::string out = "(";
    for (std::size_t j = 0; j < s.copies.size(); ++j) {
        auto& c = s.copies[j];
        if (j) out += ",";
        if (order == TripleOrder::LKR)
            out += std::to_string(c.l) + " " + std::to_string(c.k) + " " + std::to_string(c.r);
        else
            out += std::to_string(c.l) + " " + std::to_string(c.r) + " " + std::to_string(c.k);
    }
    return out + ")";
}

inline ValidationReport validate_spec(const SurfaceSpec& s) {
    ValidationReport rep;
    if (s.copies.empty()) rep.violations.push_back("configuration has no copies");
    std::size_t n = s.copies.size();
    for (std::size_t j = 1; j <= n; ++j) {
        auto& c = s.copies[j - 1];
        std::string tag = "copy " + std::to_string(j);
        if (c.l < 0 || c.k < 0 || c.r < 0) rep.violations.push_back(tag + ": negative genus");
        if (c.k % 2 != 0) rep.violations.push_back(tag + ": vertical genus must be even");
        if (j > 1 && c.l < 1)
            rep.violations.push_back(tag + ": left genus must be >= 1 for every copy but the first");
        if (j < n && c.r < 1)
            rep.violations.push_back(tag + ": right genus must be >= 1 for every copy but the last");
        if (c.h() < 1) rep.violations.push_back(tag + ": horizontal genus l+r must be positive");
        if (c.k == 0) rep.notes.push_back(tag + ": k=0: corollary variant");
    }
    return rep;
}

namespace detail {

struct SpecLexer {
    const std::string& s;
    std::size_t p = 0;

    void spaces() {
        while (p < s.size() && s[p] == ' ') ++p;
    }
    bool eat(char c) {
        if (p < s.size() && s[p] == c) {
            ++p;
            return true;
        }
        return false;
    }
    int number() {
        if (p >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p])))
            throw ParseError("expected a nonnegative integer", p);
        long v = 0;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
            v = v * 10 + (s[p] - '0');
            if (v > 100000) throw ParseError("integer too large", p);
            ++p;
        }
        return static_cast<int>(v);
    }
};

}  // namespace detail

// Grammar: '(' triple (',' triple)* ')', triple = three integers separated by spaces.
// Spaces next to commas and parentheses are tolerated.
inline SurfaceSpec parse_spec_unchecked(const std::string& text, TripleOrder order = TripleOrder::LKR) {
    std::string t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    std::size_t lead = 0;
    while (lead < t.size() && std::isspace(static_cast<unsigned char>(t[lead]))) ++lead;
    t = t.substr(lead);

    detail::SpecLexer lx{t};
    SurfaceSpec spec;
    if (!lx.eat('(')) throw ParseError("expected '('", lx.p + lead);
    for (;;) {
        lx.spaces();
        int a[3];
        for (int f = 0; f < 3; ++f) {
            if (f) {
                std::size_t before = lx.p;
                lx.spaces();
                if (lx.p == before) throw ParseError("expected a space between fields", lx.p + lead);
            }
            try {
                a[f] = lx.number();
            } catch (const ParseError& e) {
                throw ParseError("expected a nonnegative integer", e.position + lead);
            }
        }
        lx.spaces();
        CopySpec c;
        if (order == TripleOrder::LKR) c = {a[0], a[1], a[2]};
        else c = {a[0], a[2], a[1]};
        spec.copies.push_back(c);
        if (lx.eat(',')) continue;
        if (lx.eat(')')) break;
        throw ParseError("expected ',' or ')'", lx.p + lead);
    }
    if (lx.p != t.size()) throw ParseError("trailing characters", lx.p + lead);
    return spec;
}

inline SurfaceSpec parse_spec(const std::string& text, TripleOrder order = TripleOrder::LKR) {
    SurfaceSpec s = parse_spec_unchecked(text, order);
    auto rep = validate_spec(s);
    if (!rep.ok()) {
        // odd vertical genus is reported first, matching the usual failure
        for (auto& v : rep.violations)
            if (v.find("even") != std::string::npos) throw ValidationError(v);
        throw ValidationError(rep.violations.front());
    }
    return s;
}

inline GenusSummary genus_summary(const SurfaceSpec& s) {
    GenusSummary gs;
    gs.n = s.n();
    for (auto& c : s.copies) gs.per_copy.push_back({c.h(), c.i(), c.k});
    gs.h = s.h();
    gs.k = s.k();
    gs.g = gs.h + gs.k;
    return gs;
}

}  // namespace twistforge
