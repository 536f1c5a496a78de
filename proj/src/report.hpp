#ifndef MMK_REPORT_HPP
#define MMK_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mmk {

// One verification row: pass iff |measured - expected| <= tol.
struct Check {
    std::string name;
    std::string anchor; // the claim being checked, e.g. "|A|^2=6n"
    double measured = 0.0;
    double expected = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Check> checks;

    void add(std::string name, std::string anchor, double measured, double expected, double tol);
    // bound-style row: measured >= 0 must stay below tol
    void add_bound(std::string name, std::string anchor, double measured, double tol);

    int passed() const;
    int failed() const;
    bool all_pass() const { return failed() == 0; }

    std::string to_json() const;
    std::string to_csv() const;
    void write_file(const std::string& path, const std::string& format) const;
};

std::string format_double(double v); // 17 significant digits

} // namespace mmk

#endif
