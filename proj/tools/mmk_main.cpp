// mmk command line front end. Talks to the core exclusively through the
// C API of the shared library.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmk/mmk.h"

namespace {

// parse one complex entry in re+imi form: "1", "-2.5", "0.3i", "1+2i", "1-0.5i"
bool parse_complex(const std::string& text, double& re, double& im) {
    re = 0.0;
    im = 0.0;
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) return false;
    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        // split into real part and imaginary coefficient
        std::size_t split = std::string::npos;
        for (std::size_t i = s.size(); i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        std::string imtext = (split == std::string::npos) ? s : s.substr(split);
        if (imtext.empty() || imtext == "+") imtext = "1";
        if (imtext == "-") imtext = "-1";
        try {
            im = std::stod(imtext);
            re = (split == std::string::npos) ? 0.0 : std::stod(s.substr(0, split));
        } catch (...) {
            return false;
        }
        return true;
    }
    try {
        re = std::stod(s);
    } catch (...) {
        return false;
    }
    return true;
}

bool parse_moebius(const std::string& text, double out[8]) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        parts.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
    if (parts.size() != 4) return false;
    for (int i = 0; i < 4; ++i)
        if (!parse_complex(parts[i], out[2 * i], out[2 * i + 1])) return false;
    return true;
}

int emit_report(mmk_report* rep, const std::string& out_path, const std::string& format) {
    const int rows = mmk_report_check_count(rep);
    for (int i = 0; i < rows; ++i) {
        mmk_check c;
        mmk_report_check(rep, i, &c);
        std::fprintf(stderr, "[%s] %-32s %-44s measured=%.12g expected=%.12g tol=%.3g\n",
                     c.pass ? "PASS" : "FAIL", c.name, c.anchor, c.measured, c.expected, c.tol);
    }
    std::fprintf(stderr, "summary: %d passed, %d failed\n", mmk_report_passed(rep),
                 mmk_report_failed(rep));
    if (!out_path.empty()) {
        const mmk_status st = mmk_report_write(rep, out_path.c_str(), format.c_str());
        if (st != MMK_OK) {
            std::fprintf(stderr, "error writing %s: %s\n", out_path.c_str(), mmk_status_str(st));
            return 2;
        }
    } else {
        std::fputs(format == "csv" ? mmk_report_csv(rep) : mmk_report_json(rep), stdout);
    }
    return mmk_report_failed(rep) == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mmk - numerical verification of minimal sphere-map graphs"};
    app.require_subcommand(1);

    mmk_run_config cfg;
    mmk_run_config_init(&cfg);

    std::string out_path;
    std::string format = "json";
    std::string moebius_text;
    std::string tol_overrides;
    int samples = 0;
    std::uint64_t seed = cfg.seed;
    int k = 1, l = 1;
    double cparam = 1.0;
    double target_radius = -1.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--samples", samples, "number of sample points");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tol", tol_overrides, "tolerance overrides name=value,name=value");
    };

    CLI::App* hopf = app.add_subcommand("hopf-invariants",
                                        "constant |A|^2 and minimality of the bundle maps");
    add_common(hopf);
    hopf->add_option("--moebius", moebius_text, "2x2 complex matrix a,b,c,d (entries re+imi)");
    hopf->add_option("--target-radius", target_radius, "target sphere radius");

    CLI::App* structure = app.add_subcommand("verify-structure",
                                             "frame dictionaries and connection tables");
    add_common(structure);
    structure->add_option("--k", k, "first equivariant index");
    structure->add_option("--l", l, "second equivariant index");

    CLI::App* bochner = app.add_subcommand("verify-bochner",
                                           "gradient and Laplacian formulas of the angle functions");
    add_common(bochner);
    bochner->add_option("--moebius", moebius_text, "2x2 complex matrix a,b,c,d (entries re+imi)");

    CLI::App* conformal = app.add_subcommand("scan-conformal",
                                             "closed-form weakly conformal profiles");
    add_common(conformal);
    conformal->add_option("--c", cparam, "profile family constant");

    CLI::App* codazzi = app.add_subcommand("codazzi-check",
                                           "Gauss and Codazzi equation residuals");
    add_common(codazzi);
    codazzi->add_option("--k", k, "first equivariant index");
    codazzi->add_option("--l", l, "second equivariant index");

    CLI::App* ode = app.add_subcommand("solve-ode", "equivariant minimality boundary value problem");
    add_common(ode);
    ode->add_option("--k", k, "first equivariant index");
    ode->add_option("--l", l, "second equivariant index");

    CLI11_PARSE(app, argc, argv);

    cfg.samples = samples;
    cfg.seed = seed;
    cfg.k = k;
    cfg.l = l;
    cfg.c = cparam;
    cfg.target_radius = target_radius;
    if (!tol_overrides.empty()) cfg.tol_overrides = tol_overrides.c_str();
    if (!moebius_text.empty()) {
        if (!parse_moebius(moebius_text, cfg.moebius)) {
            std::fprintf(stderr, "error: cannot parse --moebius '%s'\n", moebius_text.c_str());
            return 2;
        }
        cfg.has_moebius = 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.suite = sub->get_name().c_str();

    if (sub == ode && format == "csv") {
        // CSV output of solve-ode is the profile itself
        mmk_bvp_options opt;
        mmk_bvp_options_init(&opt);
        mmk_profile* prof = nullptr;
        double coeff = 0.0;
        const mmk_status st = mmk_solve_bvp(k, l, &opt, &prof, &coeff);
        if (st == MMK_ERR_ENDPOINT_SINGULAR) {
            std::fprintf(stderr,
                         "no solution: endpoint obstruction coefficient %.12g (k=%d, l=%d)\n",
                         coeff, k, l);
            return 1;
        }
        if (st != MMK_OK) {
            std::fprintf(stderr, "solve failed: %s\n", mmk_status_str(st));
            return 2;
        }
        std::fprintf(stderr, "initial slope %.12g, boundary mismatch %.3g\n",
                     mmk_profile_initial_slope(prof), mmk_profile_mismatch(prof));
        int rc = 0;
        if (!out_path.empty()) {
            const mmk_status wst = mmk_profile_write_csv(prof, out_path.c_str());
            if (wst != MMK_OK) {
                std::fprintf(stderr, "error writing %s: %s\n", out_path.c_str(),
                             mmk_status_str(wst));
                rc = 2;
            }
        } else {
            const int n = mmk_profile_size(prof);
            std::printf("s,a,a_s,residual\n");
            for (int i = 0; i < n; ++i) {
                double s, a, as, res;
                mmk_profile_row(prof, i, &s, &a, &as, &res);
                std::printf("%.17g,%.17g,%.17g,%.17g\n", s, a, as, res);
            }
        }
        mmk_profile_free(prof);
        return rc;
    }

    mmk_report* rep = nullptr;
    const mmk_status st = mmk_run_suite(&cfg, &rep);
    if (st != MMK_OK) {
        std::fprintf(stderr, "suite failed to run: %s\n", mmk_status_str(st));
        return 2;
    }
    const int rc = emit_report(rep, out_path, format);
    mmk_report_free(rep);
    return rc;
}
