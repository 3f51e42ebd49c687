#pragma once

#include <string>
#include <vector>

#include "wordtensor/analysis.hpp"
#include "wordtensor/chartable.hpp"
#include "wordtensor/fusion.hpp"
#include "wordtensor/training.hpp"

namespace wt {

std::string sha256_hex(const std::string& data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

// Weight files: {"group": name, "width": m, "a": [...], "b": [...],
// "c": [...]} with row-major arrays, 17 significant digits.
std::string weights_to_json(const Weights& w);
Weights weights_from_json(const std::string& text, const FiniteGroup& g);

std::string character_table_csv(const CharacterTable& t);
std::string bscs_csv(const BscSystem& sys);
std::string fusion_csv(const FusionTable& f);
std::string support_csv(const SupportSet& s, bool with_norms);
std::string heatmap_csv(const HeatmapData& h);
std::string metrics_csv(const RunRecord& run, int num_bscs);

// Writes metrics.csv, weights.json, config.json, summary.json and a
// manifest.json listing every file with its content hash.
struct RunArtifacts {
  std::string outdir;
  std::vector<std::pair<std::string, std::string>> files_and_hashes;
};
RunArtifacts persist_run(const RunRecord& run, const std::string& config_json,
                         const std::string& outdir);

}  // namespace wt
