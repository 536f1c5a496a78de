#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "error.hpp"

namespace mmk {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Report::add(std::string name, std::string anchor, double measured, double expected,
                 double tol) {
    Check c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.measured = measured;
    c.expected = expected;
    c.tol = tol;
    c.pass = std::isfinite(measured) && std::fabs(measured - expected) <= tol;
    checks.push_back(std::move(c));
}

void Report::add_bound(std::string name, std::string anchor, double measured, double tol) {
    add(std::move(name), std::move(anchor), measured, 0.0, tol);
}

int Report::passed() const {
    int n = 0;
    for (const Check& c : checks) n += c.pass ? 1 : 0;
    return n;
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : checks) {
        nlohmann::ordered_json row;
        row["name"] = c.name;
        row["anchor"] = c.anchor;
        row["measured"] = c.measured;
        row["expected"] = c.expected;
        row["tol"] = c.tol;
        row["pass"] = c.pass;
        j["checks"].push_back(std::move(row));
    }
    j["summary"] = {{"passed", passed()}, {"failed", failed()}};
    return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::string out = "name,anchor,measured,expected,tol,pass\n";
    for (const Check& c : checks) {
        out += c.name + "," + c.anchor + "," + format_double(c.measured) + "," +
               format_double(c.expected) + "," + format_double(c.tol) + "," +
               (c.pass ? "true" : "false") + "\n";
    }
    return out;
}

void Report::write_file(const std::string& path, const std::string& format) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::Io, "cannot open output file: " + path);
    f << (format == "csv" ? to_csv() : to_json());
    if (!f) fail(ErrorCode::Io, "write failed: " + path);
}

} // namespace mmk
