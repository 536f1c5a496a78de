#include "mmk/mmk.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "error.hpp"
#include "hopfscan.hpp"
#include "suites.hpp"

using namespace mmk;

namespace {

mmk_status to_status(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidArgument: return MMK_ERR_INVALID_ARG;
    case ErrorCode::ChartDegenerate: return MMK_ERR_CHART_DEGENERATE;
    case ErrorCode::RankDeficient: return MMK_ERR_RANK_DEFICIENT;
    case ErrorCode::NumericalBreakdown: return MMK_ERR_NUMERICAL;
    case ErrorCode::DenominatorUnderflow: return MMK_ERR_DENOMINATOR_UNDERFLOW;
    case ErrorCode::BlowUp: return MMK_ERR_BLOWUP;
    case ErrorCode::Stiffness: return MMK_ERR_STIFFNESS;
    case ErrorCode::NoBracket: return MMK_ERR_NO_BRACKET;
    case ErrorCode::EndpointSingular: return MMK_ERR_ENDPOINT_SINGULAR;
    case ErrorCode::NotMinimal: return MMK_ERR_NOT_MINIMAL;
    case ErrorCode::PoleSwapExhausted: return MMK_ERR_POLE_SWAP;
    case ErrorCode::Io: return MMK_ERR_IO;
    }
    return MMK_ERR_UNKNOWN;
}

template <class Fn>
mmk_status guarded(Fn&& fn) {
    try {
        fn();
        return MMK_OK;
    } catch (const Error& e) {
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        return MMK_ERR_UNKNOWN;
    } catch (const std::exception&) {
        return MMK_ERR_UNKNOWN;
    }
}

double env_tol_scale() {
    const char* v = std::getenv("MMK_TOL_SCALE");
    if (!v) return 1.0;
    const double s = std::atof(v);
    return s > 0.0 ? s : 1.0;
}

RunConfig to_run_config(const mmk_run_config& c) {
    RunConfig cfg;
    cfg.suite = c.suite ? c.suite : "";
    cfg.seed = c.seed;
    cfg.samples = c.samples;
    cfg.k = c.k;
    cfg.l = c.l;
    cfg.c = c.c;
    cfg.target_radius = c.target_radius;
    cfg.tol_scale = c.tol_scale > 0.0 ? c.tol_scale : env_tol_scale();
    if (c.has_moebius) {
        MoebiusMap m;
        m.a = {c.moebius[0], c.moebius[1]};
        m.b = {c.moebius[2], c.moebius[3]};
        m.c = {c.moebius[4], c.moebius[5]};
        m.d = {c.moebius[6], c.moebius[7]};
        m.validate();
        cfg.moebius = m;
    }
    if (c.tol_overrides) {
        std::string s = c.tol_overrides;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t comma = s.find(',', pos);
            if (comma == std::string::npos) comma = s.size();
            const std::string item = s.substr(pos, comma - pos);
            const std::size_t eq = item.find('=');
            if (eq != std::string::npos)
                cfg.tol_overrides[item.substr(0, eq)] = std::atof(item.c_str() + eq + 1);
            pos = comma + 1;
        }
    }
    return cfg;
}

} // namespace

struct mmk_report {
    Report rep;
    std::string json_cache;
    std::string csv_cache;
};

struct mmk_profile {
    GeneratingProfile profile;
    int k = 1, l = 1;
    double aS0 = 0.0;
    double mismatch = 0.0;
};

extern "C" {

const char* mmk_status_str(mmk_status s) {
    switch (s) {
    case MMK_OK: return "ok";
    case MMK_ERR_INVALID_ARG: return "invalid argument";
    case MMK_ERR_CHART_DEGENERATE: return "chart degenerate";
    case MMK_ERR_RANK_DEFICIENT: return "rank deficient";
    case MMK_ERR_NUMERICAL: return "numerical breakdown";
    case MMK_ERR_DENOMINATOR_UNDERFLOW: return "denominator underflow";
    case MMK_ERR_BLOWUP: return "solution blow-up";
    case MMK_ERR_STIFFNESS: return "integrator stiffness";
    case MMK_ERR_NO_BRACKET: return "no bracket";
    case MMK_ERR_ENDPOINT_SINGULAR: return "endpoint singular";
    case MMK_ERR_NOT_MINIMAL: return "map not minimal";
    case MMK_ERR_POLE_SWAP: return "pole swap exhausted";
    case MMK_ERR_IO: return "i/o error";
    case MMK_ERR_UNKNOWN: return "unknown error";
    }
    return "unknown error";
}

const char* mmk_version(void) { return "0.1.0"; }

void mmk_run_config_init(mmk_run_config* cfg) {
    if (!cfg) return;
    std::memset(cfg, 0, sizeof(*cfg));
    cfg->seed = 20240915u;
    cfg->k = 1;
    cfg->l = 1;
    cfg->c = 1.0;
    cfg->target_radius = -1.0;
    cfg->tol_scale = env_tol_scale();
}

mmk_status mmk_run_suite(const mmk_run_config* cfg, mmk_report** out) {
    if (!cfg || !out || !cfg->suite) return MMK_ERR_INVALID_ARG;
    if (!suite_known(cfg->suite)) return MMK_ERR_INVALID_ARG;
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<mmk_report>();
        r->rep = run_suite(to_run_config(*cfg));
        *out = r.release();
    });
}

int mmk_report_check_count(const mmk_report* r) {
    return r ? static_cast<int>(r->rep.checks.size()) : 0;
}

mmk_status mmk_report_check(const mmk_report* r, int index, mmk_check* out) {
    if (!r || !out || index < 0 || index >= static_cast<int>(r->rep.checks.size()))
        return MMK_ERR_INVALID_ARG;
    const Check& c = r->rep.checks[index];
    out->name = c.name.c_str();
    out->anchor = c.anchor.c_str();
    out->measured = c.measured;
    out->expected = c.expected;
    out->tol = c.tol;
    out->pass = c.pass ? 1 : 0;
    return MMK_OK;
}

int mmk_report_passed(const mmk_report* r) { return r ? r->rep.passed() : 0; }
int mmk_report_failed(const mmk_report* r) { return r ? r->rep.failed() : 0; }

const char* mmk_report_json(mmk_report* r) {
    if (!r) return nullptr;
    if (r->json_cache.empty()) r->json_cache = r->rep.to_json();
    return r->json_cache.c_str();
}

const char* mmk_report_csv(mmk_report* r) {
    if (!r) return nullptr;
    if (r->csv_cache.empty()) r->csv_cache = r->rep.to_csv();
    return r->csv_cache.c_str();
}

mmk_status mmk_report_write(mmk_report* r, const char* path, const char* format) {
    if (!r || !path) return MMK_ERR_INVALID_ARG;
    return guarded([&] { r->rep.write_file(path, format ? format : "json"); });
}

void mmk_report_free(mmk_report* r) { delete r; }

void mmk_bvp_options_init(mmk_bvp_options* opt) {
    if (!opt) return;
    opt->start_offset = 1e-6;
    opt->rel_tol = 1e-10;
    opt->match_point = M_PI / 4;
    opt->secant_tol = 1e-10;
}

mmk_status mmk_solve_bvp(int k, int l, const mmk_bvp_options* opt, mmk_profile** out,
                         double* nonexistence_coefficient) {
    if (!out) return MMK_ERR_INVALID_ARG;
    *out = nullptr;
    ShootingConfig cfg;
    if (opt) {
        cfg.start_offset = opt->start_offset;
        cfg.rel_tol = opt->rel_tol;
        cfg.match_point = opt->match_point;
        cfg.secant_tol = opt->secant_tol;
    }
    mmk_status inner = MMK_OK;
    const mmk_status st = guarded([&] {
        const BvpResult r = solve_bvp(k, l, cfg);
        if (r.nonexistence) {
            if (nonexistence_coefficient) *nonexistence_coefficient = r.nonexistence->coefficient;
            inner = MMK_ERR_ENDPOINT_SINGULAR;
            return;
        }
        auto p = std::make_unique<mmk_profile>();
        p->profile = *r.profile;
        p->k = std::abs(k);
        p->l = std::abs(l);
        p->aS0 = r.aS0;
        p->mismatch = r.mismatch;
        *out = p.release();
    });
    return st != MMK_OK ? st : inner;
}

int mmk_profile_size(const mmk_profile* p) {
    return p ? static_cast<int>(p->profile.grid().size()) : 0;
}

double mmk_profile_initial_slope(const mmk_profile* p) { return p ? p->aS0 : 0.0; }
double mmk_profile_mismatch(const mmk_profile* p) { return p ? p->mismatch : 0.0; }

mmk_status mmk_profile_row(const mmk_profile* p, int index, double* s, double* a, double* a_s,
                           double* residual) {
    if (!p || index < 0 || index >= mmk_profile_size(p)) return MMK_ERR_INVALID_ARG;
    const double sv = p->profile.grid()[index];
    if (s) *s = sv;
    if (a) *a = p->profile.values()[index];
    if (a_s) *a_s = p->profile.derivs()[index];
    if (residual) {
        *residual = 0.0;
        if (sv > 1e-9 && sv < M_PI / 2 - 1e-9) {
            return guarded([&] {
                *residual = minimality_residual(p->k, p->l, p->profile.values()[index],
                                                p->profile.derivs()[index],
                                                profile_node_ass(p->profile, index), sv);
            });
        }
    }
    return MMK_OK;
}

mmk_status mmk_profile_write_csv(const mmk_profile* p, const char* path) {
    if (!p || !path) return MMK_ERR_INVALID_ARG;
    return guarded([&] {
        std::ofstream f(path, std::ios::binary);
        if (!f) fail(ErrorCode::Io, "cannot open output file");
        f << profile_csv(p->k, p->l, p->profile);
        if (!f) fail(ErrorCode::Io, "write failed");
    });
}

void mmk_profile_free(mmk_profile* p) { delete p; }

mmk_status mmk_hopf_invariants(mmk_hopf_variant variant, double target_radius, uint64_t seed,
                               int samples, double* mean_normA2, double* max_dev, double* max_H) {
    if (samples < 1) return MMK_ERR_INVALID_ARG;
    return guarded([&] {
        MapUnderTest f = MapUnderTest::hopf_complex(target_radius > 0 ? target_radius : 0.5);
        if (variant == MMK_HOPF_QUATERNIONIC) f = MapUnderTest::hopf_quaternionic();
        if (variant == MMK_HOPF_OCTONIONIC) f = MapUnderTest::hopf_octonionic();
        const ScanResult r = invariant_scan(f, samples, seed);
        if (mean_normA2) *mean_normA2 = r.mean_normA2;
        if (max_dev) *max_dev = r.max_dev_normA2;
        if (max_H) *max_H = r.max_H;
    });
}

} // extern "C"
