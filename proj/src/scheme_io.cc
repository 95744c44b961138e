#include "seccache/scheme_io.h"

#include <fstream>
#include <map>
#include <memory>

#include "seccache/constructions.h"

namespace seccache {

using nlohmann::json;

namespace {

json matrix_json(const FieldMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<Element>(row.begin(), row.end()));
  }
  return rows;
}

FieldMatrix matrix_from_json(const json& j, const PrimeField& field, std::size_t cols,
                             const std::string& what) {
  if (!j.is_array()) throw DocumentError(what + ": expected an array of rows");
  std::vector<std::vector<Element>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) {
      throw DocumentError(what + ": every row must have " + std::to_string(cols) + " entries");
    }
    std::vector<Element> values;
    for (const auto& v : row) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
          v.get<std::int64_t>() >= static_cast<std::int64_t>(field.q())) {
        throw DocumentError(what + ": entries must be integers in [0," +
                            std::to_string(field.q() - 1) + "]");
      }
      values.push_back(v.get<Element>());
    }
    rows.push_back(std::move(values));
  }
  return FieldMatrix::from_rows(field, cols, rows);
}

json point_json(const TradeoffPoint& p) {
  json j{{"M", rational_json(p.M)},
         {"R", rational_json(p.R)},
         {"label", p.label},
         {"source", to_string(p.source)}};
  if (p.t) j["t"] = *p.t;
  return j;
}

json envelope_json(const Envelope& e) {
  json v = json::array(), d = json::array();
  for (const auto& p : e.vertices()) v.push_back(point_json(p));
  for (const auto& p : e.dominated()) d.push_back(point_json(p));
  return {{"vertices", v}, {"dominated", d}};
}

template <typename T>
T field_of(const json& doc, const char* key) {
  if (!doc.contains(key)) throw DocumentError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw DocumentError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

json rational_json(const Rational& r) { return json::array({r.numerator(), r.denominator()}); }

Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer() ||
      j[1].get<std::int64_t>() == 0) {
    throw DocumentError("expected a rational [num, den]");
  }
  return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
}

json scheme_to_json(const LinearScheme& s) {
  const auto& p = s.params();
  json doc;
  doc["format_version"] = kSchemeFormatVersion;
  doc["scheme"] = to_string(p.kind);
  doc["label"] = s.label();
  doc["q"] = s.field().q();
  doc["N"] = s.files();
  doc["K"] = s.users();
  doc["t"] = p.t ? json(*p.t) : json(nullptr);
  doc["B"] = s.units_per_file();
  doc["key_names"] = s.layout().key_names();
  json caches = json::array();
  for (const auto& z : s.caches()) caches.push_back(matrix_json(z));
  doc["cache"] = caches;
  doc["metadata"] = {{"M", rational_json(memory_of(s))},
                     {"R", rational_json(worst_case_rate(s))},
                     {"L", rational_json(randomness_of(s))}};
  if (demand_count(s.files(), s.users()) <= kExplicitDeliveryLimit) {
    json list = json::array();
    for (const auto& d : demands_iter(s.files(), s.users())) {
      list.push_back({{"demand", d.files()}, {"matrix", matrix_json(s.delivery(d))}});
    }
    doc["delivery"] = list;
  } else {
    doc["delivery"] = "generated";
  }
  return doc;
}

LinearScheme scheme_from_json(const json& doc) {
  if (!doc.is_object()) throw DocumentError("scheme document must be a JSON object");
  const int version = field_of<int>(doc, "format_version");
  if (version != kSchemeFormatVersion) {
    throw DocumentError("unsupported format_version " + std::to_string(version));
  }
  const auto kind_name = field_of<std::string>(doc, "scheme");
  const auto kind = parse_scheme_kind(kind_name);
  if (!kind) throw DocumentError("unknown scheme kind '" + kind_name + "'");

  SchemeParams params{*kind, field_of<int>(doc, "N"), field_of<int>(doc, "K"), std::nullopt};
  if (doc.contains("t") && !doc.at("t").is_null()) params.t = field_of<int>(doc, "t");
  if (params.N < 1 || params.K < 1) throw DocumentError("N and K must be positive");

  const auto q = field_of<std::uint32_t>(doc, "q");
  if (!is_prime(q)) throw DocumentError("q=" + std::to_string(q) + " is not prime");
  const PrimeField field(q);
  const int B = field_of<int>(doc, "B");
  if (B < 1) throw DocumentError("B must be positive");
  VariableLayout layout = [&] {
    try {
      return VariableLayout(params.N, B, field_of<std::vector<std::string>>(doc, "key_names"));
    } catch (const std::invalid_argument& e) {
      throw DocumentError(e.what());
    }
  }();

  const auto& cache_json = doc.contains("cache") ? doc.at("cache") : json();
  if (!cache_json.is_array() || cache_json.size() != static_cast<std::size_t>(params.K)) {
    throw DocumentError("'cache' must hold one matrix per user");
  }
  std::vector<FieldMatrix> caches;
  for (std::size_t k = 0; k < cache_json.size(); ++k) {
    caches.push_back(
        matrix_from_json(cache_json[k], field, layout.total(), "cache " + std::to_string(k + 1)));
  }

  const std::string label = doc.contains("label") ? field_of<std::string>(doc, "label") : kind_name;
  const json delivery = doc.contains("delivery") ? doc.at("delivery") : json("generated");

  std::optional<ShareRows> shares;
  LinearScheme::DeliveryFn fn;
  if (*kind != SchemeKind::custom) {
    std::shared_ptr<const LinearScheme> built;
    try {
      built = std::make_shared<const LinearScheme>(build_scheme(params));
    } catch (const std::invalid_argument& e) {
      throw DocumentError(e.what());
    }
    if (!(built->field() == field) || !(built->layout() == layout)) {
      throw DocumentError("q, B or key_names do not match the " + kind_name + " parameters");
    }
    shares = built->shares();
    fn = [built](const DemandVector& d) { return built->delivery(d); };
  }

  if (delivery.is_array()) {
    auto table = std::make_shared<std::map<DemandVector, FieldMatrix>>();
    for (const auto& entry : delivery) {
      if (!entry.is_object()) throw DocumentError("delivery entries must be objects");
      DemandVector d(field_of<std::vector<int>>(entry, "demand"));
      if (d.users() != static_cast<std::size_t>(params.K)) {
        throw DocumentError("delivery demand " + d.to_string() + " has the wrong length");
      }
      for (int f : d.files())
        if (f < 1 || f > params.N) throw DocumentError("delivery demand " + d.to_string() + " is out of range");
      auto m = matrix_from_json(field_of<json>(entry, "matrix"), field, layout.total(),
                                "delivery " + d.to_string());
      table->insert_or_assign(d, std::move(m));
    }
    if (table->size() != demand_count(params.N, params.K)) {
      throw DocumentError("explicit delivery must list every demand");
    }
    fn = [table](const DemandVector& d) { return table->at(d); };
  } else if (!(delivery.is_string() && delivery.get<std::string>() == "generated")) {
    throw DocumentError("'delivery' must be \"generated\" or a list of matrices");
  } else if (!fn) {
    throw DocumentError("custom schemes need explicit delivery matrices");
  }
  return LinearScheme(params, field, std::move(layout), std::move(caches), std::move(fn), label,
                      std::move(shares));
}

void save_scheme(const LinearScheme& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DocumentError("cannot write " + path.string());
  out << scheme_to_json(s).dump(2) << '\n';
}

LinearScheme load_scheme(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DocumentError(path.string() + ": " + e.what());
  }
  return scheme_from_json(doc);
}

json report_to_json(const VerificationReport& report) {
  json pairs = json::array();
  json failures = json::array();
  for (const auto& p : report.pairs) {
    json j{{"demand", p.demand.files()},
           {"user", p.user + 1},
           {"correct", p.correctness.pass},
           {"secure", p.security.pass},
           {"rank_full", p.correctness.rank_full},
           {"rank_masked_requested", p.correctness.rank_masked_requested},
           {"rank_masked_others", p.security.rank_masked_others}};
    if (!p.correctness.pass || !p.security.pass) failures.push_back(j);
    pairs.push_back(std::move(j));
  }
  const bool sampled = report.policy.kind == DemandPolicy::Kind::sample;
  json policy{{"kind", sampled ? "sample" : "all"}};
  if (sampled) {
    policy["count"] = report.policy.count;
    policy["seed"] = report.policy.seed;
  }
  return {{"label", report.label}, {"policy", policy},
          {"demands_checked", report.demands_checked},
          {"pass", report.pass},
          {"failures", failures},
          {"pairs", pairs}};
}

json curves_to_json(const CurveData& data, bool include_prior) {
  json converse = json::array();
  for (const auto& c : data.converse) {
    converse.push_back({{"kind", to_string(c.kind)},
                        {"alpha", rational_json(c.alpha)},
                        {"beta", rational_json(c.beta)},
                        {"gamma", rational_json(c.gamma)},
                        {"m_lo", rational_json(c.m_lo)},
                        {"m_hi", c.m_hi ? rational_json(*c.m_hi) : json(nullptr)},
                        {"label", c.label}});
  }
  json doc{{"N", data.N}, {"K", data.K}, {"achievable", envelope_json(data.achievable)},
           {"converse", converse}};
  if (include_prior) doc["prior"] = envelope_json(data.prior);
  return doc;
}

}  // namespace seccache
