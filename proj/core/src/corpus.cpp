#include "ndproof/corpus.hpp"

#include <fstream>
#include <sstream>

#include "ndproof/serialize.hpp"

namespace ndproof {
namespace {

std::set<DiagCode> codes_from(const Json& j, const std::string& where) {
  std::set<DiagCode> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw std::runtime_error(where + ": codes must be an array");
  for (const auto& c : j) {
    auto code = c.is_string() ? parse_diag_code(c.get<std::string>()) : std::nullopt;
    if (!code) throw std::runtime_error(where + ": unknown diagnostic code " + c.dump());
    out.insert(*code);
  }
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Corpus Corpus::load(const std::filesystem::path& dir) {
  Corpus c;
  c.dir_ = dir;
  const auto index_path = dir / "index.json";
  Json index;
  try {
    index = Json::parse(read_file(index_path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(index_path.string() + ": " + e.what());
  }
  if (!index.contains("examples") || !index["examples"].is_array())
    throw std::runtime_error(index_path.string() + ": missing 'examples' array");
  for (const auto& e : index["examples"]) {
    CorpusEntry entry;
    entry.id = e.value("id", "");
    entry.title = e.value("title", entry.id);
    entry.file = e.value("file", entry.id + ".ndp");
    entry.description = e.value("description", "");
    entry.accepted = e.value("accepted", true);
    const std::string where = index_path.string() + " [" + entry.id + "]";
    if (entry.id.empty()) throw std::runtime_error(index_path.string() + ": entry without id");
    entry.codes = codes_from(e.value("codes", Json()), where);
    entry.strict_codes = codes_from(e.value("strict_codes", Json()), where);
    c.entries_.push_back(std::move(entry));
  }
  return c;
}

const CorpusEntry* Corpus::find(std::string_view id) const {
  for (const auto& e : entries_)
    if (e.id == id) return &e;
  return nullptr;
}

std::string Corpus::text(const CorpusEntry& e) const { return read_file(dir_ / e.file); }

}  // namespace ndproof
