// Dataset ingestion and the two split protocols: stratified random
// 80/10/10 and cross-project.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vultriage {

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FunctionRecord {
  int id = 0;           // ordinal position in the input file
  std::string project;
  std::string commit;
  int label = 0;        // 1 = vulnerable
  std::string source;   // raw function text, sanitized to valid UTF-8
};

enum class DatasetFormat { JsonArray, JsonLines };

// Replaces invalid UTF-8 byte sequences with U+FFFD. Real C corpora
// contain stray bytes and the lexer must not fail on them.
std::string sanitize_utf8(const std::string& bytes);

// Each entry needs `func` and `target`; `project` and `commit_id` default
// to empty. Records come back in file order with ids 0..n-1.
std::vector<FunctionRecord> load_dataset(const std::string& path, DatasetFormat format);

enum class SplitKind { RandomStratified, CrossProject };

struct SplitResult {
  std::vector<int> train_ids;
  std::vector<int> val_ids;
  std::vector<int> test_ids;
  std::uint64_t seed = 0;
  SplitKind kind = SplitKind::RandomStratified;
};

// Deterministic stratified three-way split. Per-class allocation uses
// proportional counts with largest-remainder rounding (ties broken toward
// the globally most under-allocated partition); membership within a class
// comes from a seeded uniform shuffle.
SplitResult stratified_split(const std::vector<FunctionRecord>& records,
                             std::array<double, 3> fractions,
                             std::uint64_t seed);

// train = all records of train_project, test = all of test_project,
// empty validation; other projects are dropped.
SplitResult cross_project_split(const std::vector<FunctionRecord>& records,
                                const std::string& train_project,
                                const std::string& test_project);

}  // namespace vultriage
