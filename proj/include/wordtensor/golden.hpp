#pragma once

#include <string>
#include <vector>

#include "wordtensor/analysis.hpp"
#include "wordtensor/strassen.hpp"

namespace wt {

// One comparison against a shipped reference table. `flagged_better` marks a
// computed value strictly better than the published one (reported loudly,
// never silently substituted).
struct GoldenCheck {
  std::string name;
  bool pass = false;
  bool flagged_better = false;
  std::string detail;
};

struct GoldenTables {
  std::string dir;  // data directory holding golden/*.json
};

// Loads data/golden with checksum verification.
GoldenTables load_golden(const std::string& data_dir);

std::vector<GoldenCheck> verify_fusion(const GoldenTables& g);
std::vector<GoldenCheck> verify_supports(const GoldenTables& g);
std::vector<GoldenCheck> verify_boxranks(const GoldenTables& g,
                                         std::uint64_t seed = 7,
                                         int threads = 0);
// Construction widths and losses against the theoretical column of the
// minimal-width table.
std::vector<GoldenCheck> verify_constructions(const GoldenTables& g);

// Named candidate covers for a (group, word) pair of the box-rank table.
std::vector<CandidateCover> golden_covers(const GoldenTables& g,
                                          const std::string& group,
                                          const std::string& word);

}  // namespace wt
