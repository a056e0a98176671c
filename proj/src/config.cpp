#include "nfcount/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nfcount/error.hpp"

namespace nfc {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError("expected an integer or a string, got " + v.dump());
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  if (!obj.is_object()) throw InputError(std::string(where) + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return it.key() == a; }))
      throw InputError(std::string("unknown key '") + it.key() + "' in " + where);
}

RatMatrix basis_from_json(const json& v, std::size_t d) {
  if (v.is_string()) return parse_basis(v.get<std::string>(), d);
  if (!v.is_array() || v.size() != d) throw InputError("basis needs one column per degree");
  RatMatrix b(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!v[j].is_array() || v[j].size() != d) throw InputError("basis column has wrong length");
    for (std::size_t i = 0; i < d; ++i) b(i, j) = parse_rational(scalar_text(v[j][i]));
  }
  return b;
}

FieldSpec field_from_json(const json& f) {
  check_keys(f, {"label", "poly", "coefficients", "basis", "galois", "quadratic", "cyclotomic", "pure"},
             "field");
  FieldSpec s;
  if (f.contains("quadratic")) {
    s = quadratic_spec(f["quadratic"].get<long>());
  } else if (f.contains("cyclotomic")) {
    s = cyclotomic_spec(f["cyclotomic"].get<unsigned>());
  } else if (f.contains("pure")) {
    const auto& p = f["pure"];
    if (!p.is_array() || p.size() != 2) throw InputError("pure expects [d, m]");
    s = pure_spec(p[0].get<unsigned>(), Integer(scalar_text(p[1])));
  } else if (f.contains("poly")) {
    s.poly = parse_polynomial(f["poly"].get<std::string>());
    s.label = to_string(s.poly);
  } else if (f.contains("coefficients")) {
    IntVector c;
    for (const auto& v : f["coefficients"]) c.emplace_back(scalar_text(v));
    s.poly = IntPolynomial(c);
    s.label = to_string(s.poly);
  } else {
    throw InputError("field needs poly, coefficients, quadratic, cyclotomic or pure");
  }
  if (f.contains("label")) s.label = f["label"].get<std::string>();
  if (f.contains("basis")) s.basis = basis_from_json(f["basis"], s.poly.degree());
  if (f.contains("galois")) {
    s.galois = f["galois"].get<std::string>();
    parse_galois_source(*s.galois);  // syntax check
  }
  return s;
}

std::string basis_text(const std::optional<RatMatrix>& b) {
  if (!b) return "power";
  std::string s;
  for (std::size_t j = 0; j < b->cols(); ++j) {
    if (j) s += ";";
    for (std::size_t i = 0; i < b->rows(); ++i) s += (i ? "," : "") + to_string((*b)(i, j));
  }
  return s;
}

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

RatMatrix parse_basis(const std::string& text, std::size_t degree) {
  auto cols = split(text, ';');
  if (cols.size() != degree) throw InputError("basis needs " + std::to_string(degree) + " columns");
  RatMatrix b(degree, degree);
  for (std::size_t j = 0; j < degree; ++j) {
    auto entries = split(cols[j], ',');
    if (entries.size() != degree) throw InputError("basis column has wrong length");
    for (std::size_t i = 0; i < degree; ++i) b(i, j) = parse_rational(trim(entries[i]));
  }
  return b;
}

std::vector<IntVector> parse_vectors(const std::string& text, std::size_t degree) {
  std::vector<IntVector> out;
  for (const auto& part : split(text, ';')) {
    auto entries = split(part, ',');
    if (entries.size() != degree)
      throw InputError("vector '" + part + "' needs " + std::to_string(degree) + " coordinates");
    IntVector v;
    for (const auto& e : entries) {
      Rational q = parse_rational(trim(e));
      if (q.get_den() != 1) throw InputError("coordinates must be integers");
      v.push_back(q.get_num());
    }
    out.push_back(std::move(v));
  }
  if (out.empty()) throw InputError("no vectors given");
  return out;
}

CorpusConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw InputError(std::string("config is not valid JSON: ") + ex.what());
  }
  CorpusConfig cfg;
  try {
    check_keys(root, {"fields", "suite", "output", "precision_ceiling"}, "config");
    if (root.contains("precision_ceiling"))
      cfg.precision_ceiling = root["precision_ceiling"].get<long>();
    if (root.contains("fields"))
      for (const auto& f : root["fields"]) cfg.fields.push_back(field_from_json(f));
    if (root.contains("suite")) {
      const auto& s = root["suite"];
      check_keys(s,
                 {"ideal_index_cap", "minima_index_cap", "box_index_cap", "x_trials", "box_trials",
                  "mahler_trials", "mahler_cap", "dependent_rate", "seed", "workers"},
                 "suite");
      SuiteParams& p = cfg.suite;
      p.ideal_index_cap = s.value("ideal_index_cap", p.ideal_index_cap);
      p.minima_index_cap = s.value("minima_index_cap", p.minima_index_cap);
      p.box_index_cap = s.value("box_index_cap", p.box_index_cap);
      p.x_trials = s.value("x_trials", p.x_trials);
      p.box_trials = s.value("box_trials", p.box_trials);
      p.mahler_trials = s.value("mahler_trials", p.mahler_trials);
      p.mahler_cap = s.value("mahler_cap", p.mahler_cap);
      p.dependent_rate = s.value("dependent_rate", p.dependent_rate);
      p.seed = s.value("seed", p.seed);
      p.workers = s.value("workers", p.workers);
    }
    if (root.contains("output")) {
      const auto& o = root["output"];
      check_keys(o, {"dir", "cache"}, "output");
      cfg.out_dir = o.value("dir", cfg.out_dir);
      cfg.cache_dir = o.value("cache", cfg.cache_dir);
    }
  } catch (const json::exception& ex) {
    throw InputError(std::string("config: ") + ex.what());
  }
  if (cfg.fields.empty()) throw InputError("config defines no fields");
  if (cfg.precision_ceiling < 128) throw InputError("precision ceiling must be >= 128");
  std::set<std::string> labels;
  for (const auto& f : cfg.fields)
    if (!labels.insert(f.label).second) throw InputError("duplicate field label: " + f.label);
  return cfg;
}

CorpusConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string cache_key(const FieldSpec& spec, mpfr_prec_t ceiling) {
  return to_string(spec.poly) + "|" + basis_text(spec.basis) + "|" + std::to_string(ceiling);
}

std::string FieldCache::path(const std::string& key) const {
  return (std::filesystem::path(dir_) / (digest(key) + ".json")).string();
}

bool FieldCache::restore(FieldEntry& e, mpfr_prec_t ceiling) const {
  if (e.error) return false;
  const std::string key = cache_key(e.spec, ceiling);
  json doc;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    std::ifstream in(path(key));
    if (!in) return false;
    try {
      in >> doc;
    } catch (const json::exception&) {
      return false;
    }
  }
  if (!doc.is_object() || doc.value("key", std::string()) != key) return false;
  try {
    for (const auto& pd : doc.at("primes")) {
      const Integer p(pd.at("p").get<std::string>());
      std::vector<std::tuple<unsigned, unsigned, IntMatrix>> data;
      for (const auto& f : pd.at("factors")) {
        const auto& rows = f.at("hnf");
        const std::size_t d = rows.size();
        IntMatrix h(d, d);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) h(i, j) = Integer(rows[i][j].get<std::string>());
        data.emplace_back(f.at("e").get<unsigned>(), f.at("f").get<unsigned>(), h);
      }
      PrimeData v = validate_prime_data(e.field, p, data);
      v.method = pd.at("method").get<std::string>();
      e.primes->register_data(std::move(v));
    }
  } catch (const json::exception& ex) {
    throw InputError("corrupt cache entry " + path(key) + ": " + ex.what());
  }
  return true;
}

void FieldCache::store(const FieldEntry& e, mpfr_prec_t ceiling) const {
  if (e.error) return;
  const std::string key = cache_key(e.spec, ceiling);
  ojson doc;
  doc["key"] = key;
  doc["primes"] = ojson::array();
  for (const auto& pd : e.primes->entries()) {
    ojson p;
    p["p"] = pd->p.get_str();
    p["method"] = pd->method;
    p["factors"] = ojson::array();
    for (const auto& f : pd->factors) {
      ojson fj;
      fj["e"] = f.e;
      fj["f"] = f.f;
      ojson rows = ojson::array();
      for (std::size_t i = 0; i < f.ideal.degree(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < f.ideal.degree(); ++j) row.push_back(f.ideal.hnf()(i, j).get_str());
        rows.push_back(row);
      }
      fj["hnf"] = rows;
      p["factors"].push_back(fj);
    }
    doc["primes"].push_back(p);
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  std::filesystem::create_directories(dir_);
  const std::string target = path(key), tmp = target + ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, target);
}

std::string record_json(const Record& r) {
  ojson j;
  j["key"] = r.key;
  j["theorem"] = r.theorem;
  j["digest"] = r.digest;
  j["product"] = r.product;
  j["divisor"] = r.divisor;
  j["pass"] = r.pass;
  j["flags"] = ojson::array();
  if (r.zero_flag) j["flags"].push_back("zero");
  if (r.tainted) j["flags"].push_back("uncertified-group");
  if (r.skipped) j["flags"].push_back("skipped");
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j.dump();
}

}  // namespace nfc
