#pragma once

#include <string>
#include <vector>

namespace egamma::cli {

enum class Status { pass, fail, uncertified };

const char* to_string(Status s);

struct Check {
    std::string id;
    std::string anchor;  // which identity or bound the check exercises
    Status status = Status::pass;
    std::string measured;
    std::string bound;
    std::string radius;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;

    /// Uncertified checks are listed but do not fail the suite.
    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t count(Status s) const;
};

struct VerifyOptions {
    double residual_bound = 1e-12;
};

/// identity, lemma1, lemma2, bounds, pade, sondow, all.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
VerifyReport run_suite(const std::string& suite, const VerifyOptions& opts = {});

}  // namespace egamma::cli
