#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <json.hpp>
#include <string>
#include <thread>
#include <vector>

#include "catalog_io.hpp"
#include "config.hpp"
#include "meyer.hpp"
#include "word.hpp"

namespace twistforge {

struct InvariantReport {
    std::string spec;
    std::size_t n = 0;
    int h = 0, k = 0, g = 0;
    std::size_t theta_length = 0;
    std::size_t fibers = 0;
    long chi = 0;
    long sigma = 0;
    long c1sq = 0;
    long chi_h = 0;
    bool conjecture = false;  // sigma == -4(h+1)
    long c1sq_closed = 0;     // -4(g-1)
    long chi_h_closed = 0;    // 1 - k/2
    bool c1sq_matches_closed = false;
    bool chi_h_matches_closed = false;
    std::string catalog_fingerprint;
};

struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline InvariantReport invariant_report(const SurfaceSpec& spec, const CurveCatalog& cat) {
    auto rep = validate_structure(cat);
    if (!rep.ok()) {
        for (auto& c : rep.checks)
            if (!c.passed) throw InvariantError("catalog validation failed: " + c.name + ": " + c.detail);
    }
    InvariantReport r;
    r.spec = to_string(spec);
    r.n = spec.n();
    r.h = spec.h();
    r.k = spec.k();
    r.g = spec.g();
    TwistWord th = theta_word(spec);
    TwistWord sq = square(th);
    r.theta_length = th.size();
    r.fibers = sq.size();
    if (r.fibers != std::size_t(8 * r.h + 2 * r.k + 4)) throw InvariantError("fiber count disagrees with 8h+2k+4");
    r.chi = 2 * (2 - 2 * long(r.g)) + long(r.fibers);
    r.sigma = fibration_signature(sq, cat);
    r.c1sq = 3 * r.sigma + 2 * r.chi;
    if ((r.sigma + r.chi) % 4 != 0) throw InvariantError("sigma + chi is not divisible by 4");
    r.chi_h = (r.sigma + r.chi) / 4;
    r.conjecture = r.sigma == -4 * (long(r.h) + 1);
    r.c1sq_closed = -4 * (long(r.g) - 1);
    r.chi_h_closed = 1 - r.k / 2;
    r.c1sq_matches_closed = r.c1sq == r.c1sq_closed;
    r.chi_h_matches_closed = r.chi_h == r.chi_h_closed;
    r.catalog_fingerprint = fingerprint(cat);
    return r;
}

inline InvariantReport invariant_report(const SurfaceSpec& spec) { return invariant_report(spec, build_catalog(spec)); }

inline nlohmann::json to_json(const InvariantReport& r) {
    nlohmann::json j;  // std::map backed, so keys come out sorted
    j["spec"] = r.spec;
    j["n"] = r.n;
    j["h"] = r.h;
    j["k"] = r.k;
    j["g"] = r.g;
    j["theta_length"] = r.theta_length;
    j["fibers"] = r.fibers;
    j["chi"] = r.chi;
    j["sigma"] = r.sigma;
    j["c1sq"] = r.c1sq;
    j["chi_h"] = r.chi_h;
    j["conjecture"] = r.conjecture;
    j["c1sq_closed"] = r.c1sq_closed;
    j["chi_h_closed"] = r.chi_h_closed;
    j["c1sq_matches_closed"] = r.c1sq_matches_closed;
    j["chi_h_matches_closed"] = r.chi_h_matches_closed;
    j["catalog_fingerprint"] = r.catalog_fingerprint;
    return j;
}

// ------------------------------------------------------------------ sweep

struct SweepBounds {
    int max_h = 0;
    int max_k = 0;
    int max_n = 0;
    int max_hk = -1;  // optional bound on h+k, -1 for none
};

// All valid specs within the bounds, in a fixed order.
inline std::vector<SurfaceSpec> enumerate_specs(const SweepBounds& b) {
    std::vector<SurfaceSpec> out;
    if (b.max_n < 1 || b.max_h < 1) return out;
    std::vector<CopySpec> cur;
    std::function<void(int, int)> rec = [&](int h_used, int k_used) {
        if (!cur.empty()) {
            SurfaceSpec s{cur};
            if (validate_spec(s).ok()) out.push_back(s);
        }
        if (int(cur.size()) == b.max_n) return;
        for (int l = 0; l + h_used <= b.max_h; ++l)
            for (int r = 0; l + r + h_used <= b.max_h; ++r)
                for (int k = 0; k + k_used <= b.max_k; k += 2) {
                    if (b.max_hk >= 0 && h_used + l + r + k_used + k > b.max_hk) continue;
                    if (l + r == 0) continue;
                    cur.push_back({l, k, r});
                    rec(h_used + l + r, k_used + k);
                    cur.pop_back();
                }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), [](const SurfaceSpec& a, const SurfaceSpec& b) {
        if (a.n() != b.n()) return a.n() < b.n();
        if (a.h() != b.h()) return a.h() < b.h();
        if (a.k() != b.k()) return a.k() < b.k();
        return to_string(a) < to_string(b);
    });
    return out;
}

struct SweepRow {
    SurfaceSpec spec;
    bool ok = false;
    InvariantReport report;
    std::string error;
};

// Rows come back in enumeration order regardless of the thread count.
inline std::vector<SweepRow> conjecture_scan(const SweepBounds& b, unsigned threads = 0) {
    auto specs = enumerate_specs(b);
    std::vector<SweepRow> rows(specs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t a = next++;
            if (a >= specs.size()) return;
            rows[a].spec = specs[a];
            try {
                rows[a].report = invariant_report(specs[a]);
                rows[a].ok = true;
            } catch (const std::exception& e) {
                rows[a].error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return rows;
}

inline std::string csv_header() { return "spec,n,h,k,g,fibers,chi,sigma,c1sq,chi_h,conjecture_match"; }

inline std::string csv_row(const SweepRow& row) {
    const SurfaceSpec& s = row.spec;
    std::string q = "\"" + to_string(s) + "\"";
    std::string head = q + "," + std::to_string(s.n()) + "," + std::to_string(s.h()) + "," + std::to_string(s.k()) +
                       "," + std::to_string(s.g());
    if (!row.ok) {
        std::string e = row.error;
        std::replace(e.begin(), e.end(), '"', '\'');
        return head + ",,,,,,\"error: " + e + "\"";
    }
    auto& r = row.report;
    return head + "," + std::to_string(r.fibers) + "," + std::to_string(r.chi) + "," + std::to_string(r.sigma) + "," +
           std::to_string(r.c1sq) + "," + std::to_string(r.chi_h) + "," + (r.conjecture ? "true" : "false");
}

}  // namespace twistforge
