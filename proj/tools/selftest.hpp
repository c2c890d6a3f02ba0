#pragma once

#include <ostream>

/// Small oracle-agreement suites; prints one line per suite.
bool run_selftest(std::ostream& out);
