#pragma once

#include <optional>
#include <string>

namespace egamma::cli {

/// Published value of 0.7^n / {d_n L_{n,m}} for 1 <= n <= 20, 0 <= m <= 3,
/// as the printed decimal string; empty when the entry does not exist.
std::optional<std::string> reference_ratio(long n, long m);

/// Entries known not to reproduce; reported, never asserted.
bool reference_known_mismatch(long n, long m);

/// The printed values are truncated, not rounded, so a computed value
/// matches when it is within 5e-4 relative or one unit in the last printed
/// place.
bool reference_matches(double computed, const std::string& printed);

}  // namespace egamma::cli
