#include "rsm/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "rsm/constructors.hpp"

namespace rsm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& field, const std::string& msg) {
  throw InputError(origin + ": " + field + ": " + msg);
}

const json& need(const json& obj, const char* key, const std::string& origin, const std::string& path) {
  if (!obj.is_object()) fail(origin, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(origin, path + "." + key, "missing");
  return *it;
}

long as_long(const json& v, const std::string& origin, const std::string& path) {
  if (!v.is_number_integer()) fail(origin, path, "expected an integer");
  return v.get<long>();
}

std::size_t as_count(const json& v, const std::string& origin, const std::string& path) {
  const long x = as_long(v, origin, path);
  if (x < 0) fail(origin, path, "expected a nonnegative integer");
  return static_cast<std::size_t>(x);
}

Rational as_rational(const json& v, const std::string& origin, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InputError& e) {
      fail(origin, path, e.what());
    }
  }
  fail(origin, path, "expected an integer or a \"num/den\" string");
}

std::vector<long> long_list(const json& v, const std::string& origin, const std::string& path) {
  if (!v.is_array()) fail(origin, path, "expected an array");
  std::vector<long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_long(v[i], origin, path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<long>> long_rows(const json& v, const std::string& origin, const std::string& path) {
  if (!v.is_array()) fail(origin, path, "expected an array");
  std::vector<std::vector<long>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(long_list(v[i], origin, path + "[" + std::to_string(i) + "]"));
  return out;
}

// A total subset table: one entry per subset of {0..n-1}.
template <class T, class Conv>
std::vector<T> subset_table(const json& v, std::size_t n, const std::string& origin, const std::string& path, Conv conv) {
  if (!v.is_object()) fail(origin, path, "expected an object keyed by subsets");
  if (n > kMaxMaterialize) fail(origin, path, "explicit tables are limited to 20 elements");
  std::vector<std::optional<T>> seen(std::size_t{1} << n);
  for (const auto& [key, value] : v.items()) {
    SubsetMask a;
    try {
      a = parse_subset_key(key, n);
    } catch (const InputError& e) {
      fail(origin, path + "[\"" + key + "\"]", e.what());
    }
    if (seen[a]) fail(origin, path + "[\"" + key + "\"]", "duplicate subset");
    seen[a] = conv(value, path + "[\"" + key + "\"]");
  }
  std::vector<T> out;
  for (std::size_t a = 0; a < seen.size(); ++a) {
    if (!seen[a]) fail(origin, path, "missing subset \"" + subset_key(static_cast<SubsetMask>(a), n) + "\"");
    out.push_back(*seen[a]);
  }
  return out;
}

MultiplicitySpec parse_multiplicity(const json& v, std::size_t n, const std::string& origin) {
  const std::string kind = need(v, "kind", origin, "multiplicity").get<std::string>();
  MultiplicitySpec spec;
  if (kind == "trivial") {
    spec.kind = MultiplicityKind::trivial;
  } else if (kind == "arithmetic") {
    spec.kind = MultiplicityKind::arithmetic;
  } else if (kind == "lie_group") {
    spec.kind = MultiplicityKind::lie_group;
    auto get_count = [&](const char* key) -> unsigned {
      auto it = v.find(key);
      return it == v.end() ? 0u : static_cast<unsigned>(as_count(*it, origin, std::string("multiplicity.") + key));
    };
    spec.lie_group.a = get_count("a");
    spec.lie_group.b = get_count("b");
    if (auto it = v.find("finite"); it != v.end()) spec.lie_group.finite = long_list(*it, origin, "multiplicity.finite");
    for (long f : spec.lie_group.finite)
      if (f < 2) fail(origin, "multiplicity.finite", "factors must be > 1");
  } else if (kind == "explicit") {
    spec.kind = MultiplicityKind::explicit_table;
    spec.table = subset_table<Rational>(need(v, "table", origin, "multiplicity"), n, origin, "multiplicity.table",
                                        [&](const json& x, const std::string& p) { return as_rational(x, origin, p); });
  } else {
    fail(origin, "multiplicity.kind", "unknown kind '" + kind + "'");
  }
  return spec;
}

std::size_t element_count(const json& rep, const std::string& kind, const std::string& origin) {
  if (kind == "graph") return need(rep, "edges", origin, "representation").size();
  if (kind == "vectors") return need(rep, "vectors", origin, "representation").size();
  if (kind == "abelian") return need(rep, "elements", origin, "representation").size();
  if (kind == "explicit") return as_count(need(rep, "size", origin, "representation"), origin, "representation.size");
  fail(origin, "representation.kind", "unknown kind '" + kind + "'");
}

}  // namespace

std::string subset_key(SubsetMask a, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(a, i)) continue;
    if (!out.empty()) out += ",";
    out += std::to_string(i);
  }
  return out;
}

SubsetMask parse_subset_key(std::string_view key, std::size_t n) {
  if (key.empty()) return 0;
  SubsetMask out = 0;
  long prev = -1;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = std::min(key.find(',', pos), key.size());
    const std::string_view item = key.substr(pos, comma - pos);
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InputError("bad subset key '" + std::string(key) + "'");
    const long e = std::stol(std::string(item));
    if (e <= prev) throw InputError("subset key '" + std::string(key) + "' is not strictly increasing");
    if (static_cast<std::size_t>(e) >= n) throw InputError("element " + std::to_string(e) + " out of range");
    out |= SubsetMask{1} << e;
    prev = e;
    pos = comma + 1;
  }
  return out;
}

Instance parse_instance_text(std::string_view text, std::string_view origin_view) {
  const std::string origin(origin_view);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Report the line of the offending byte.
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
    throw InputError(origin + ":" + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) fail(origin, "<root>", "expected an object");

  try {
    const json& rep = need(doc, "representation", origin, "<root>");
    const std::string kind = need(rep, "kind", origin, "representation").get<std::string>();
    const std::size_t n = element_count(rep, kind, origin);
    if (n > kMaxGround) fail(origin, "representation", "too many elements");
    MultiplicitySpec mult;
    if (auto it = doc.find("multiplicity"); it != doc.end()) {
      mult = parse_multiplicity(*it, n, origin);
    }

    std::optional<Rsm> built;
    if (kind == "graph") {
      GraphSpec g;
      g.vertices = as_count(need(rep, "vertices", origin, "representation"), origin, "representation.vertices");
      const auto rows = long_rows(rep["edges"], origin, "representation.edges");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string p = "representation.edges[" + std::to_string(i) + "]";
        if (rows[i].size() != 2) fail(origin, p, "an edge has two endpoints");
        if (rows[i][0] < 0 || rows[i][1] < 0) fail(origin, p, "negative vertex");
        g.edges.emplace_back(rows[i][0], rows[i][1]);
      }
      built = rsm_from_graph(g, mult);
    } else if (kind == "vectors") {
      VectorListSpec v;
      v.dimension = as_count(need(rep, "dimension", origin, "representation"), origin, "representation.dimension");
      v.vectors = long_rows(rep["vectors"], origin, "representation.vectors");
      built = rsm_from_vectors(v, mult);
    } else if (kind == "abelian") {
      AbelianGroupSpec g;
      g.free_rank = as_count(need(rep, "free_rank", origin, "representation"), origin, "representation.free_rank");
      if (auto it = rep.find("torsion"); it != rep.end()) g.torsion = long_list(*it, origin, "representation.torsion");
      g.elements = long_rows(rep["elements"], origin, "representation.elements");
      built = rsm_from_abelian(g, mult);
    } else {
      const auto rank = subset_table<long>(need(rep, "rank", origin, "representation"), n, origin, "representation.rank",
                                           [&](const json& x, const std::string& p) { return as_long(x, origin, p); });
      std::optional<long> ambient;
      if (auto it = rep.find("ambient_rank"); it != rep.end()) ambient = as_long(*it, origin, "representation.ambient_rank");
      if (mult.kind == MultiplicityKind::trivial) {
        mult.table.assign(std::size_t{1} << n, Rational(1));
      } else if (mult.kind != MultiplicityKind::explicit_table) {
        fail(origin, "multiplicity.kind", "explicit representations take a trivial or explicit multiplicity");
      }
      built = rsm_from_explicit(rank, mult.table, ambient);
    }

    std::optional<ProbabilityAssignment> probs;
    if (auto it = doc.find("probabilities"); it != doc.end()) {
      if (!it->is_array() || it->size() != n) fail(origin, "probabilities", "expected one entry per element");
      ProbabilityAssignment p;
      for (std::size_t i = 0; i < n; ++i) {
        const std::string path = "probabilities[" + std::to_string(i) + "]";
        Rational q = as_rational((*it)[i], origin, path);
        if (q < 0 || q > 1) fail(origin, path, "must lie in [0, 1]");
        p.push_back(q);
      }
      probs = std::move(p);
    }

    std::string name = origin;
    if (auto it = doc.find("name"); it != doc.end() && it->is_string()) name = it->get<std::string>();
    return Instance{name, *built, probs};
  } catch (const json::exception& e) {
    throw InputError(origin + ": " + e.what());
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(origin, 0) == 0) throw;
    throw InputError(origin + ": " + what);
  }
}

Instance parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Instance inst = parse_instance_text(buf.str(), path.string());
  if (inst.name == path.string()) inst.name = path.stem().string();
  return inst;
}

std::vector<Instance> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw InputError("corpus directory " + dir.string() + " not found");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Instance> out;
  for (const auto& f : files) out.push_back(parse_instance(f));
  return out;
}

}  // namespace rsm
