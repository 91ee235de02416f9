#pragma once

// Suite registry and the CSV form of SweepReport rows.
//
// Columns, in this order: suite, inequality_id, sample_count,
// empirical_constant, lower_constant, bound, refinement_ratio, pass,
// worst_t, worst_x, worst_y, note. Point coordinates are joined with ';'.
// Numbers carry 17 significant digits; NaN is written "nan".

#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gkl/verify.hpp"

namespace gkl {

// 17 significant digits, "nan", "inf", "-inf".
std::string format_number(double v);
// Quotes the field (RFC 4180) if it holds a comma, quote or newline.
std::string csv_field(const std::string& s);

extern const char* const kSweepCsvHeader;
void write_sweep_csv(std::ostream& os, const std::vector<SweepReport>& rows,
                     const std::string& timestamp_line = "");

// normalization, semigroup, symmetry, upper-bound, derivative-bounds,
// sharpness, domination, mass, l1, lemma22, glip-forward, glip-converse
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

struct SuiteResult {
  std::string suite;
  std::vector<SweepReport> rows;
  bool pass = false;
};

// Runs the named suites in the order given; "all" expands to every suite.
// The upper-bound and derivative-bounds suites share one sweep when both run.
// `on_done` sees each suite as soon as it finishes, so callers can write
// partial results before a later suite throws.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const VerifyConfig& cfg,
                                    const std::function<void(const SuiteResult&)>& on_done = {});

}  // namespace gkl
