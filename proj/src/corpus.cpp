#include "vultriage/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vultriage {

namespace {

using nlohmann::json;

FunctionRecord record_from_entry(const json& entry, int id) {
  if (!entry.is_object()) {
    throw CorpusError("entry " + std::to_string(id) + " is not an object");
  }
  if (!entry.contains("func")) {
    throw CorpusError("entry " + std::to_string(id) + " missing field 'func'");
  }
  if (!entry.contains("target")) {
    throw CorpusError("entry " + std::to_string(id) + " missing field 'target'");
  }
  FunctionRecord rec;
  rec.id = id;
  const auto& func = entry["func"];
  if (!func.is_string()) {
    throw CorpusError("entry " + std::to_string(id) + " field 'func' is not a string");
  }
  rec.source = func.get<std::string>();
  const auto& target = entry["target"];
  if (target.is_boolean()) {
    rec.label = target.get<bool>() ? 1 : 0;
  } else if (target.is_number_integer() || target.is_number_unsigned()) {
    const auto v = target.get<long long>();
    if (v != 0 && v != 1) {
      throw CorpusError("entry " + std::to_string(id) + " field 'target' not in {0,1}");
    }
    rec.label = static_cast<int>(v);
  } else {
    throw CorpusError("entry " + std::to_string(id) + " field 'target' not 0/1 or boolean");
  }
  if (entry.contains("project") && entry["project"].is_string()) {
    rec.project = entry["project"].get<std::string>();
  }
  if (entry.contains("commit_id") && entry["commit_id"].is_string()) {
    rec.commit = entry["commit_id"].get<std::string>();
  }
  return rec;
}

}  // namespace

std::string sanitize_utf8(const std::string& bytes) {
  static const char kReplacement[] = "\xEF\xBF\xBD";  // U+FFFD
  std::string out;
  out.reserve(bytes.size());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = p[i];
    std::size_t len;
    unsigned int cp;
    if (c < 0x80) {
      out += static_cast<char>(c);
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      out += kReplacement;
      ++i;
      continue;
    }
    bool ok = i + len <= n;
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((p[i + k] & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (p[i + k] & 0x3F);
      }
    }
    if (ok) {
      // reject overlong encodings, surrogates, and out-of-range points
      if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
          (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
          cp > 0x10FFFF) {
        ok = false;
      }
    }
    if (ok) {
      out.append(bytes, i, len);
      i += len;
    } else {
      out += kReplacement;
      ++i;
    }
  }
  return out;
}

std::vector<FunctionRecord> load_dataset(const std::string& path, DatasetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open dataset file: " + path);
  // Sanitize the raw bytes up front so stray non-UTF-8 bytes in real C
  // corpora become replacement characters instead of parse failures.
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string contents = sanitize_utf8(buffer.str());

  std::vector<FunctionRecord> records;
  if (format == DatasetFormat::JsonArray) {
    json doc;
    try {
      doc = json::parse(contents);
    } catch (const json::exception& e) {
      throw CorpusError("format error in " + path + ": " + e.what());
    }
    if (!doc.is_array()) throw CorpusError("format error: expected a JSON array");
    records.reserve(doc.size());
    int id = 0;
    for (const auto& entry : doc) {
      records.push_back(record_from_entry(entry, id++));
    }
  } else {
    std::istringstream stream(contents);
    std::string line;
    int id = 0;
    while (std::getline(stream, line)) {
      // skip blank lines so trailing newlines are harmless
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json entry;
      try {
        entry = json::parse(line);
      } catch (const json::exception& e) {
        throw CorpusError("format error at line " + std::to_string(id + 1) + ": " + e.what());
      }
      records.push_back(record_from_entry(entry, id++));
    }
  }
  return records;
}

SplitResult stratified_split(const std::vector<FunctionRecord>& records,
                             std::array<double, 3> fractions, std::uint64_t seed) {
  const double fsum = fractions[0] + fractions[1] + fractions[2];
  if (std::abs(fsum - 1.0) > 1e-9) throw CorpusError("split fractions must sum to 1");

  std::array<std::vector<int>, 2> by_class;
  for (const auto& r : records) by_class[r.label].push_back(r.id);
  if (by_class[0].empty() || by_class[1].empty()) {
    throw CorpusError("stratified split needs at least one record of each class");
  }
  std::size_t parts_needed = 0;
  for (double f : fractions) {
    if (f > 0) ++parts_needed;
  }
  for (const auto& cls : by_class) {
    if (cls.size() < parts_needed) {
      throw CorpusError("class with " + std::to_string(cls.size()) +
                        " records cannot fill " + std::to_string(parts_needed) + " partitions");
    }
  }

  SplitResult result;
  result.seed = seed;
  result.kind = SplitKind::RandomStratified;
  std::vector<int>* parts[3] = {&result.train_ids, &result.val_ids, &result.test_ids};

  std::mt19937_64 rng(seed);
  // Running totals: ties in the largest-remainder rounding go to the
  // partition that is most under-allocated so far.
  std::array<double, 3> allocated{0, 0, 0};
  double total_allocated = 0;
  for (auto& cls : by_class) {
    std::shuffle(cls.begin(), cls.end(), rng);
    const double nc = static_cast<double>(cls.size());
    std::array<std::size_t, 3> take{};
    std::array<double, 3> remainder{};
    std::size_t assigned = 0;
    for (int p = 0; p < 3; ++p) {
      const double quota = fractions[p] * nc;
      take[p] = static_cast<std::size_t>(std::floor(quota + 1e-12));
      remainder[p] = quota - static_cast<double>(take[p]);
      assigned += take[p];
    }
    std::size_t leftover = cls.size() - assigned;
    std::array<int, 3> order{0, 1, 2};
    const double new_total = total_allocated + nc;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
      const double deficit_a = fractions[a] * new_total - allocated[a];
      const double deficit_b = fractions[b] * new_total - allocated[b];
      if (deficit_a != deficit_b) return deficit_a > deficit_b;
      return a < b;
    });
    for (std::size_t k = 0; k < leftover; ++k) ++take[order[k % 3]];

    std::size_t pos = 0;
    for (int p = 0; p < 3; ++p) {
      for (std::size_t k = 0; k < take[p]; ++k) parts[p]->push_back(cls[pos++]);
      allocated[p] += static_cast<double>(take[p]);
    }
    total_allocated = new_total;
  }
  for (auto* part : parts) std::sort(part->begin(), part->end());
  return result;
}

SplitResult cross_project_split(const std::vector<FunctionRecord>& records,
                                const std::string& train_project,
                                const std::string& test_project) {
  if (train_project == test_project) {
    throw CorpusError("train and test project must differ: " + train_project);
  }
  std::set<std::string> projects;
  SplitResult result;
  result.kind = SplitKind::CrossProject;
  for (const auto& r : records) {
    projects.insert(r.project);
    if (r.project == train_project) {
      result.train_ids.push_back(r.id);
    } else if (r.project == test_project) {
      result.test_ids.push_back(r.id);
    }
  }
  for (const auto& name : {train_project, test_project}) {
    if (!projects.count(name)) {
      std::ostringstream msg;
      msg << "unknown project '" << name << "'; available:";
      for (const auto& p : projects) msg << " '" << p << "'";
      throw CorpusError(msg.str());
    }
  }
  return result;
}

}  // namespace vultriage
