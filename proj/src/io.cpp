#include "ghpath/io.hpp"

#include "ghpath/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ghpath {

using json = nlohmann::ordered_json;

const std::string& tool_version() {
  static const std::string v = "0.1.0";
  return v;
}

// --- plumbing ---------------------------------------------------------------

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_validation("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail_validation("cannot read file: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail_validation("cannot open file for writing: " + path);
  out << text;
  out.flush();
  if (!out) fail_validation("cannot write file: " + path);
}

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail_validation("invalid JSON");
  return j;
}

Rat scalar_from(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const error& e) {
      fail_validation(where + ": " + e.what());
    }
  }
  if (v.is_number_unsigned()) return Rat(BigInt(v.get<unsigned long long>()));
  if (v.is_number_integer()) return Rat(BigInt(v.get<long long>()));
  if (v.is_number_float())
    fail_validation(where + ": floating-point JSON numbers are not exact; "
                            "write the value as an integer, decimal string, or \"p/q\"");
  fail_validation(where + ": expected a scalar (integer or fraction string)");
}

std::string scalar_str(const Rat& q) { return to_string(q); }

std::size_t index_from(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail_validation(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v.get<unsigned long long>());
}

const json& field(const json& o, const char* key, const std::string& where) {
  auto it = o.find(key);
  if (it == o.end()) fail_validation(where + ": missing \"" + key + "\"");
  return *it;
}

// --- spaces -----------------------------------------------------------------

json space_to_obj(const FiniteMetricSpace& X, const std::string& name, const Recipe& recipe) {
  json o = json::object();
  o["format"] = "ghpath-space";
  if (!name.empty()) o["name"] = name;
  o["labels"] = X.labels();
  json rows = json::array();
  const std::size_t n = X.size();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(scalar_str(X.d(i, j)));
    rows.push_back(std::move(row));
  }
  o["distances"] = std::move(rows);
  if (!recipe.empty()) {
    json r = json::object();
    for (const auto& [k, v] : recipe) r[k] = v;
    o["recipe"] = std::move(r);
  }
  return o;
}

FiniteMetricSpace space_from_obj(const json& o, const std::string& where, bool full_check) {
  if (!o.is_object()) fail_validation(where + ": expected a space object");
  if (auto it = o.find("format"); it != o.end() && *it != "ghpath-space")
    fail_validation(where + ": \"format\" is not \"ghpath-space\"");

  const json& jl = field(o, "labels", where);
  if (!jl.is_array() || jl.empty()) fail_validation(where + ": \"labels\" must be a non-empty array");
  std::vector<std::string> labels;
  labels.reserve(jl.size());
  for (const auto& l : jl) {
    if (!l.is_string()) fail_validation(where + ": labels must be strings");
    labels.push_back(l.get<std::string>());
  }

  const json& jd = field(o, "distances", where);
  const std::size_t n = labels.size();
  if (!jd.is_array() || jd.size() != n)
    fail_validation(where + ": \"distances\" must be an array of " + std::to_string(n) + " rows");
  std::vector<Rat> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = jd[i];
    if (!row.is_array() || row.size() != n)
      fail_validation(where + ": distance row " + std::to_string(i) + " must have " +
                      std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j)
      flat.push_back(scalar_from(row[j], where + ": distances[" + std::to_string(i) + "][" +
                                             std::to_string(j) + "]"));
  }
  return full_check ? FiniteMetricSpace::validated(std::move(labels), std::move(flat))
                    : FiniteMetricSpace::trusted(std::move(labels), std::move(flat));
}

// --- certificates -----------------------------------------------------------

std::string kind_to_string(CertKind k) {
  switch (k) {
    case CertKind::exact: return "exact";
    case CertKind::rigidity: return "rigidity";
    case CertKind::bracket: return "bracket";
  }
  fail_validation("unknown certificate kind");
}

CertKind kind_from_string(const std::string& s, const std::string& where) {
  if (s == "exact") return CertKind::exact;
  if (s == "rigidity") return CertKind::rigidity;
  if (s == "bracket") return CertKind::bracket;
  fail_validation(where + ": unknown certificate kind \"" + s +
                  "\" (expected \"exact\", \"rigidity\", or \"bracket\")");
}

json witness_to_obj(const Relation& w) {
  json o = json::object();
  o["m"] = w.m;
  o["n"] = w.n;
  json pairs = json::array();
  for (const auto& [i, j] : w.pairs) pairs.push_back(json::array({i, j}));
  o["pairs"] = std::move(pairs);
  return o;
}

Relation witness_from_obj(const json& o, const std::string& where) {
  if (!o.is_object()) fail_validation(where + ": expected a witness object");
  Relation w;
  w.m = index_from(field(o, "m", where), where + ".m");
  w.n = index_from(field(o, "n", where), where + ".n");
  const json& jp = field(o, "pairs", where);
  if (!jp.is_array()) fail_validation(where + ".pairs: expected an array");
  for (const auto& p : jp) {
    if (!p.is_array() || p.size() != 2)
      fail_validation(where + ".pairs: each entry must be a two-element array");
    std::size_t i = index_from(p[0], where + ".pairs");
    std::size_t j = index_from(p[1], where + ".pairs");
    if (i >= w.m || j >= w.n) fail_validation(where + ".pairs: index out of range");
    w.pairs.emplace_back(i, j);
  }
  return w;
}

json certificate_to_obj(const MembershipCertificate& c) {
  json o = json::object();
  o["kind"] = kind_to_string(c.kind);
  o["radius"] = scalar_str(c.radius);
  if (c.witness.m > 0 && c.witness.n > 0) o["witness"] = witness_to_obj(c.witness);
  if (c.kind == CertKind::bracket) {
    o["tolerance"] = scalar_str(c.tolerance);
    o["bracket"] = json::array({scalar_str(c.bracket_lo), scalar_str(c.bracket_hi)});
  }
  if (c.flagged) o["flagged"] = true;
  if (!c.note.empty()) o["note"] = c.note;
  return o;
}

MembershipCertificate certificate_from_obj(const json& o, const std::string& where) {
  if (!o.is_object()) fail_validation(where + ": expected a certificate object");
  MembershipCertificate c;
  const json& jk = field(o, "kind", where);
  if (!jk.is_string()) fail_validation(where + ": \"kind\" must be a string");
  c.kind = kind_from_string(jk.get<std::string>(), where);
  c.radius = scalar_from(field(o, "radius", where), where + ".radius");
  if (auto it = o.find("witness"); it != o.end()) c.witness = witness_from_obj(*it, where + ".witness");
  if (c.kind == CertKind::bracket) {
    c.tolerance = scalar_from(field(o, "tolerance", where), where + ".tolerance");
    const json& jb = field(o, "bracket", where);
    if (!jb.is_array() || jb.size() != 2)
      fail_validation(where + ".bracket: expected [lo, hi]");
    c.bracket_lo = scalar_from(jb[0], where + ".bracket[0]");
    c.bracket_hi = scalar_from(jb[1], where + ".bracket[1]");
  }
  if (auto it = o.find("flagged"); it != o.end()) {
    if (!it->is_boolean()) fail_validation(where + ".flagged: expected a boolean");
    c.flagged = it->get<bool>();
  }
  if (auto it = o.find("note"); it != o.end()) {
    if (!it->is_string()) fail_validation(where + ".note: expected a string");
    c.note = it->get<std::string>();
  }
  return c;
}

}  // namespace

// --- public space API ---------------------------------------------------------

std::string space_to_json(const FiniteMetricSpace& X, const std::string& name,
                          const Recipe& recipe) {
  return space_to_obj(X, name, recipe).dump(2) + "\n";
}

FiniteMetricSpace space_from_json(const std::string& text) {
  return space_from_obj(parse_json(text), "space", /*full_check=*/true);
}

FiniteMetricSpace load_space(const std::string& path) {
  try {
    return space_from_json(read_text_file(path));
  } catch (const error& e) {
    throw error(e.kind(), path + ": " + e.what());
  }
}

void save_space(const std::string& path, const FiniteMetricSpace& X, const std::string& name,
                const Recipe& recipe) {
  write_text_file(path, space_to_json(X, name, recipe));
}

// --- public curve API ---------------------------------------------------------

std::string curve_to_json(const SampledCurve& curve) {
  json o = json::object();
  o["format"] = "ghpath-curve";
  o["version"] = tool_version();
  o["construction"] = curve.construction;
  if (curve.sphere) {
    json s = json::object();
    s["center"] = space_to_obj(curve.sphere->center, "", {});
    s["radius"] = scalar_str(curve.sphere->radius);
    o["sphere"] = std::move(s);
  }
  o["lipschitz"] = scalar_str(curve.lipschitz);
  json samples = json::array();
  for (const auto& s : curve.samples) {
    json js = json::object();
    js["t"] = scalar_str(s.t);
    js["space"] = space_to_obj(s.space, "", {});
    if (s.certificate) js["certificate"] = certificate_to_obj(*s.certificate);
    samples.push_back(std::move(js));
  }
  o["samples"] = std::move(samples);
  return o.dump(2) + "\n";
}

SampledCurve curve_from_json(const std::string& text, const std::string& base_dir) {
  json o = parse_json(text);
  if (!o.is_object()) fail_validation("curve: expected a JSON object");
  if (auto it = o.find("format"); it != o.end() && *it != "ghpath-curve")
    fail_validation("curve: \"format\" is not \"ghpath-curve\"");

  SampledCurve curve;
  const json& jc = field(o, "construction", "curve");
  if (!jc.is_string()) fail_validation("curve: \"construction\" must be a string");
  curve.construction = jc.get<std::string>();

  if (auto it = o.find("sphere"); it != o.end()) {
    const json& s = *it;
    if (!s.is_object()) fail_validation("curve.sphere: expected an object");
    Rat radius = scalar_from(field(s, "radius", "curve.sphere"), "curve.sphere.radius");
    if (auto c = s.find("center"); c != s.end()) {
      curve.sphere = SphereSpec{space_from_obj(*c, "curve.sphere.center", /*full_check=*/true),
                                radius};
    } else if (auto f = s.find("center_file"); f != s.end()) {
      if (!f->is_string()) fail_validation("curve.sphere.center_file: expected a path string");
      std::filesystem::path p(f->get<std::string>());
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      curve.sphere = SphereSpec{load_space(p.string()), radius};
    } else {
      fail_validation("curve.sphere: needs \"center\" or \"center_file\"");
    }
  }

  curve.lipschitz = scalar_from(field(o, "lipschitz", "curve"), "curve.lipschitz");

  const json& js = field(o, "samples", "curve");
  if (!js.is_array()) fail_validation("curve: \"samples\" must be an array");
  for (std::size_t k = 0; k < js.size(); ++k) {
    const std::string where = "curve.samples[" + std::to_string(k) + "]";
    const json& s = js[k];
    if (!s.is_object()) fail_validation(where + ": expected an object");
    CurveSample sample{
        scalar_from(field(s, "t", where), where + ".t"),
        // Shape-checked only: the verifier re-runs the full metric check per
        // sample so that a tampered table surfaces as a findable issue.
        space_from_obj(field(s, "space", where), where + ".space", /*full_check=*/false),
        std::nullopt};
    if (auto it = s.find("certificate"); it != s.end())
      sample.certificate = certificate_from_obj(*it, where + ".certificate");
    curve.samples.push_back(std::move(sample));
  }
  return curve;
}

SampledCurve load_curve(const std::string& path) {
  try {
    std::filesystem::path p(path);
    return curve_from_json(read_text_file(path), p.parent_path().string());
  } catch (const error& e) {
    throw error(e.kind(), path + ": " + e.what());
  }
}

void save_curve(const std::string& path, const SampledCurve& curve) {
  write_text_file(path, curve_to_json(curve));
}

}  // namespace ghpath
