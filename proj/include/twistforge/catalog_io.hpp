#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "catalog.hpp"
#include "golden.hpp"
#include "meyer.hpp"

namespace twistforge {

// Full oracle suite: structure checks, then the tabulated signature if the configuration has one.
inline CatalogReport validate_catalog(const CurveCatalog& cat) {
    CatalogReport r = validate_structure(cat);
    const GoldenEntry* g = cat.variant == Variant::Main ? golden_lookup(to_string(cat.spec)) : nullptr;
    if (!g) {
        r.checks.push_back({"golden", true, "not a tabulated input"});
        return r;
    }
    if (!r.ok()) {
        r.checks.push_back({"golden", false, "skipped: earlier check failed"});
        return r;
    }
    try {
        int s = fibration_signature(square(theta_for(cat)), cat);
        r.checks.push_back({"golden", s == g->sigma,
                            "sigma=" + std::to_string(s) + " expected " + std::to_string(g->sigma)});
    } catch (const std::exception& e) {
        r.checks.push_back({"golden", false, e.what()});
    }
    return r;
}

struct CatalogFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string serialize_catalog(const CurveCatalog& cat) {
    std::ostringstream os;
    os << "# twistforge curve catalog\n";
    os << "version=1\n";
    os << "spec=" << to_string(cat.spec) << "\n";
    os << "variant=" << to_string(cat.variant) << "\n";
    os << "rank=" << cat.rank << "\n";
    os << "flags=" << to_string(calibrated_flags()) << "\n";
    os << "signs=";
    for (std::size_t j = 0; j < cat.signs.size(); ++j) {
        auto& s = cat.signs[j];
        os << (j ? ";" : "") << s.bs << "," << s.be << "," << s.ka;
    }
    os << "\n";
    for (auto& [id, v] : cat.classes) {
        switch (id.family) {
            case Family::C: os << "C " << id.j << " " << id.idx; break;
            case Family::B: os << "B " << id.j << " " << id.idx; break;
            case Family::X: os << "X " << id.j; break;
            case Family::T: os << "T " << id.j; break;
        }
        os << ":";
        for (auto x : v) os << " " << x;
        os << "\n";
    }
    return os.str();
}

// FNV-1a over the serialized catalog, hex.
inline std::string fingerprint(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string fingerprint(const CurveCatalog& cat) { return fingerprint(serialize_catalog(cat)); }

inline CurveCatalog deserialize_catalog(const std::string& text) {
    CurveCatalog cat;
    std::istringstream is(text);
    std::string line;
    bool have_version = false, have_spec = false, have_rank = false;
    int lineno = 0;
    auto fail = [&](const std::string& m) { throw CatalogFormatError("line " + std::to_string(lineno) + ": " + m); };
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        auto eq = line.find('=');
        if (eq != std::string::npos && (colon == std::string::npos || eq < colon)) {
            std::string key = line.substr(0, eq), val = line.substr(eq + 1);
            if (key == "version") {
                if (val != "1") fail("unsupported catalog version " + val);
                have_version = true;
            } else if (key == "spec") {
                cat.spec = parse_spec_unchecked(val);
                have_spec = true;
            } else if (key == "variant") {
                if (val == "main") cat.variant = Variant::Main;
                else if (val == "alternate") cat.variant = Variant::Alternate;
                else fail("unknown variant " + val);
            } else if (key == "rank") {
                try {
                    long r = std::stol(val);
                    if (r <= 0 || r % 2) fail("ambient rank must be positive and even");
                    cat.rank = std::size_t(r);
                } catch (const std::logic_error&) {
                    fail("malformed rank");
                }
                have_rank = true;
            } else if (key == "flags") {
                parse_flags(val);
            } else if (key == "signs") {
                std::istringstream ss(val);
                std::string part;
                while (std::getline(ss, part, ';')) {
                    SignChoice s;
                    if (std::sscanf(part.c_str(), "%d,%d,%d", &s.bs, &s.be, &s.ka) != 3) fail("malformed signs");
                    cat.signs.push_back(s);
                }
            } else {
                fail("unknown header " + key);
            }
            continue;
        }
        if (colon == std::string::npos) fail("malformed record");
        if (!have_rank) fail("record before rank header");
        std::istringstream hs(line.substr(0, colon));
        std::string fam;
        hs >> fam;
        CycleId id;
        int a = 0, b = 0;
        if (fam == "C" || fam == "B") {
            if (!(hs >> a >> b)) fail("malformed record id");
            id = fam == "C" ? CycleId::C(a, b) : CycleId::B(a, b);
        } else if (fam == "X" || fam == "T") {
            if (!(hs >> a)) fail("malformed record id");
            id = fam == "X" ? CycleId::X(a) : CycleId::T(a);
        } else {
            fail("unknown record family " + fam);
        }
        std::string rest;
        if (hs >> rest) fail("trailing text in record id");
        std::istringstream cs(line.substr(colon + 1));
        Vec v;
        std::string tok;
        while (cs >> tok) {
            try {
                std::size_t used = 0;
                long long x = std::stoll(tok, &used);
                if (used != tok.size()) fail("malformed coordinate " + tok);
                v.push_back(x);
            } catch (const std::logic_error&) {
                fail("malformed coordinate " + tok);
            }
        }
        if (v.size() != cat.rank) fail("record has " + std::to_string(v.size()) + " coordinates, rank is " + std::to_string(cat.rank));
        if (cat.classes.count(id)) fail("duplicate record " + to_string(id));
        cat.classes[id] = v;
    }
    if (!have_version) throw CatalogFormatError("missing version header");
    if (!have_spec) throw CatalogFormatError("missing spec header");
    if (!have_rank) throw CatalogFormatError("missing rank header");
    if (cat.signs.empty()) cat.signs.assign(cat.spec.n(), SignChoice{});
    return cat;
}

inline void save_catalog(const CurveCatalog& cat, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << serialize_catalog(cat);
}

// Loads and revalidates; a failed revalidation is recorded in status, not thrown.
inline CurveCatalog load_catalog(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    CurveCatalog cat = deserialize_catalog(ss.str());
    try {
        cat.status = validate_catalog(cat).ok() ? "passed" : "failed";
    } catch (const std::exception&) {
        cat.status = "failed";
    }
    return cat;
}

}  // namespace twistforge
