#pragma once

#include <iosfwd>

#include "acm/field.hpp"

namespace acm::selftest {

struct Options {
  FieldKind field = FieldKind::Prime;
  u64 seed = 1;
};

/// Runs the full acceptance suite, printing one PASS/FAIL line per criterion
/// (plus indented notes for skipped resource-guarded instances).  Returns the
/// number of failed criteria.
int run(const Options& opt, std::ostream& out);

}  // namespace acm::selftest
