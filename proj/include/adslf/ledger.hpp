#pragma once

#include <optional>
#include <string>
#include <vector>

namespace adslf {

// Verification ledger: every identity the library relies on is checked
// against an independent numerical oracle, and every printed value of the
// source examples is compared with the computed one.  Property entries gate
// the run; printed-value regressions are recorded with their status and never
// fail it (several printed values are internally inconsistent, and the ledger
// is where that is documented).
enum class LedgerStatus { match, mismatch, property_pass, property_fail };

const char* to_string(LedgerStatus s);

struct LedgerEntry {
    std::string id;
    std::string source;  // which example/identity the check pins down
    LedgerStatus status;
    double measured = 0;
    double expected = 0;
    double tol = 0;
};

struct Ledger {
    std::vector<LedgerEntry> entries;

    void property(const std::string& id, const std::string& source, double measured, double tol,
                  double expected = 0.0);
    void regression(const std::string& id, const std::string& source, double measured,
                    double expected, double tol);
    // regression whose measured value is a deviation from the printed claim
    void regression_dev(const std::string& id, const std::string& source, double deviation,
                        double tol);

    bool all_properties_pass() const;
    int count(LedgerStatus s) const;
    void write_csv(const std::string& path) const;
    std::string to_text() const;
};

struct VerifyOptions {
    std::vector<std::string> modules;  // empty = all
    std::optional<double> tol_override;
    bool parallel = true;
};

// Executes the registered checks.  Deterministic: fixed seeds, no clocks.
Ledger run_verification_ledger(const VerifyOptions& opt = {});

std::vector<std::string> verification_modules();

}  // namespace adslf
