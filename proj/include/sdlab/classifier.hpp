#pragma once

// Literal encoding of the local (A-D) and global (E-G) well-posedness statements
// for H^s x H^s data.

#include <string>

namespace sdlab {

enum class VerdictKind { LocalWP, GlobalWP, NotCovered };

struct Verdict {
  VerdictKind kind = VerdictKind::NotCovered;
  /// Theorems that fired, e.g. "A+E"; "-" when none did.
  std::string theorem_tag;
  /// One line per evaluated condition.
  std::string constraint_trace;
};

/// n >= 4 is treated as one bucket. Pure and deterministic.
Verdict classify_wellposedness(int n, double alpha, double s);

std::string to_string(VerdictKind kind);

}  // namespace sdlab
