#pragma once

// The acceptance suite: one entry per criterion, each runnable on its own.
// The CLI's selftest subcommand and the acceptance test binary both drive
// this list; quick level skips the slowest criteria.

#include <string>
#include <vector>

namespace mrt {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  bool ran = true;
};

enum class SelftestLevel { quick, full };

std::vector<CriterionResult> run_selftest(SelftestLevel level);

// individual criteria (1-based ids matching the suite)
CriterionResult criterion_marking_count();            // 1
CriterionResult criterion_round_trips();              // 2
CriterionResult criterion_tits_kernel();              // 3
CriterionResult criterion_rho_equals_tau();           // 4
CriterionResult criterion_presentation();             // 5
CriterionResult criterion_rank_level_verdicts();      // 6
CriterionResult criterion_word_lemmas();              // 7
CriterionResult criterion_double_coset_formula();     // 8
CriterionResult criterion_centralizer_compat();       // 9
CriterionResult criterion_two_adic_classification();  // 10
CriterionResult criterion_di4_integrity();            // 11

}  // namespace mrt
