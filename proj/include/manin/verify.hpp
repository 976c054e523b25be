#pragma once

// Identity suites run by `manin verify`.

#include <string>
#include <vector>

#include "manin/arith.hpp"
#include "manin/records.hpp"

namespace manin {

/// The values of a used throughout the checks.
const std::vector<i64>& testbed();

struct VerifyOptions {
    bool quick = false;
    bool inject_eta_fault = false;  // corrupts eta_closed(5, 1; -1) to exercise the failure path
};

struct VerifyFailure {
    std::string suite;
    std::string id;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    i64 checks = 0;
    std::vector<VerifyFailure> failures;
    double elapsed = 0;
    bool ok() const { return failures.empty(); }
};

struct VerifyReport {
    std::vector<SuiteReport> suites;
    bool ok() const;
    json to_json() const;
};

/// eta, densities, theta, moebius, torsor.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument for other names.
VerifyReport verify(const std::string& suite, const VerifyOptions& opt = {});

}  // namespace manin
