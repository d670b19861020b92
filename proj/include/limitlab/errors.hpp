#pragma once

#include <stdexcept>
#include <string>

namespace limitlab {

// Base class for every failure this library reports.
struct lab_error : std::runtime_error {
    explicit lab_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition violations (odd n where even is required, |z| > sqrt(n), ...).
struct domain_violation : lab_error {
    explicit domain_violation(const std::string& msg) : lab_error("domain violation: " + msg) {}
};

// LogReal -> Real when the magnitude does not fit the floating range.
struct out_of_range_conversion : lab_error {
    explicit out_of_range_conversion(const std::string& msg)
        : lab_error("OUT_OF_RANGE: " + msg) {}
};

struct no_convergence : lab_error {
    explicit no_convergence(const std::string& msg) : lab_error("NO_CONVERGENCE: " + msg) {}
};

struct negative_curvature : lab_error {
    explicit negative_curvature(const std::string& msg)
        : lab_error("NEGATIVE_CURVATURE: " + msg) {}
};

struct max_depth_exceeded : lab_error {
    explicit max_depth_exceeded(const std::string& msg)
        : lab_error("MAX_DEPTH_EXCEEDED: " + msg) {}
};

struct empty_grid : lab_error {
    explicit empty_grid(const std::string& msg) : lab_error("EMPTY_GRID: " + msg) {}
};

struct insufficient_rows : lab_error {
    explicit insufficient_rows(const std::string& msg)
        : lab_error("INSUFFICIENT_ROWS: " + msg) {}
};

struct degenerate_differences : lab_error {
    explicit degenerate_differences(const std::string& msg)
        : lab_error("DEGENERATE_DIFFERENCES: " + msg) {}
};

}  // namespace limitlab
