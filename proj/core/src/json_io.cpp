#include "reslab/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "reslab/error.hpp"

namespace reslab {

namespace {

const char* role_name(PointRole r) {
  switch (r) {
    case PointRole::Vertex:
      return "vertex";
    case PointRole::OnBoundary:
      return "on_boundary";
    case PointRole::Above:
      return "above";
  }
  return "?";
}

double number_field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw Error(Errc::Parse, where + ": missing \"" + key + "\"");
  if (!it->is_number()) throw Error(Errc::Parse, where + ": \"" + key + "\" must be a number");
  return it->get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(Errc::Parse, where + ": unknown field \"" + key + "\"");
  }
}

json point_json(const ExponentPoint& p, std::size_t n_lengths) {
  return {{"nu", p.nu}, {"lambda", p.lambda}, {"alpha", alpha_bits(p.alpha, n_lengths)}};
}

json edge_json(const PolygonEdge& e, std::size_t n_lengths) {
  json j = {{"from", point_json(e.from, n_lengths)},
            {"to", point_json(e.to, n_lengths)},
            {"slope", e.slope},
            {"gamma", e.gamma}};
  if (e.exact_gamma) j["gamma_exact"] = e.exact_gamma->str();
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

PotentialConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(Errc::Parse, "config must be a JSON object");
  reject_unknown(doc, {"h", "deltas"}, "config");
  const double h = number_field(doc, "h", "config");
  const auto deltas = doc.find("deltas");
  if (deltas == doc.end() || !deltas->is_array()) {
    throw Error(Errc::Parse, "config: \"deltas\" must be an array");
  }
  std::vector<Pole> poles;
  for (std::size_t i = 0; i < deltas->size(); ++i) {
    const json& d = (*deltas)[i];
    const std::string where = "deltas[" + std::to_string(i) + "]";
    if (!d.is_object()) throw Error(Errc::Parse, where + " must be an object", i);
    reject_unknown(d, {"x", "C", "beta"}, where);
    Pole p;
    p.x = number_field(d, "x", where);
    p.beta = number_field(d, "beta", where);
    p.coupling = d.contains("C") ? number_field(d, "C", where) : 1.0;
    poles.push_back(p);
  }
  return PotentialConfig::validate(h, std::move(poles));
}

PotentialConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Parse, path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

json to_json(const PotentialConfig& config) {
  json deltas = json::array();
  for (const Pole& p : config.poles()) {
    deltas.push_back({{"x", p.x}, {"C", p.coupling}, {"beta", p.beta}});
  }
  return {{"h", config.h()}, {"deltas", deltas}};
}

std::string alpha_bits(std::uint32_t alpha, std::size_t n_lengths) {
  std::string s(n_lengths, '0');
  for (std::size_t j = 0; j < n_lengths; ++j) {
    if (alpha & (std::uint32_t{1} << j)) s[j] = '1';
  }
  return s;
}

json to_json(const SecularExpansion& expansion) {
  json out = json::array();
  const std::size_t n_len = expansion.n_poles == 0 ? 0 : expansion.n_poles - 1;
  for (const auto& [alpha, poly] : expansion.terms) {
    json monos = json::array();
    for (const auto& [key, coeff] : poly) {
      monos.push_back({{"m", decode_monomial(key, expansion.n_poles)}, {"coeff", coeff}});
    }
    out.push_back({{"alpha", alpha_bits(alpha, n_len)}, {"monomials", monos}});
  }
  return out;
}

json to_json(const NewtonPolygon& polygon, std::size_t n_lengths) {
  json points = json::array();
  for (std::size_t i = 0; i < polygon.points.size(); ++i) {
    json p = point_json(polygon.points[i], n_lengths);
    p["role"] = role_name(polygon.roles[i]);
    points.push_back(p);
  }
  json hull = json::array();
  for (const auto& v : polygon.hull_vertices) hull.push_back(point_json(v, n_lengths));
  json edges = json::array();
  json gammas = json::array();
  for (const auto& c : gamma_candidates(polygon)) gammas.push_back(c.gamma);
  for (const auto& e : polygon.edges) edges.push_back(edge_json(e, n_lengths));
  return {{"points", points}, {"hull_vertices", hull}, {"edges", edges}, {"gammas", gammas}};
}

std::string polygon_edges_csv(const NewtonPolygon& polygon) {
  std::ostringstream out;
  out << "from_nu,from_lambda,to_nu,to_lambda,slope,gamma\n";
  for (const auto& e : polygon.edges) {
    out << format_double(e.from.nu) << ',' << format_double(e.from.lambda) << ','
        << format_double(e.to.nu) << ',' << format_double(e.to.lambda) << ','
        << format_double(e.slope) << ',' << format_double(e.gamma) << '\n';
  }
  return out.str();
}

json to_json(const GammaCandidate& candidate, std::size_t n_lengths) {
  json j = {{"gamma", candidate.gamma}, {"provenance", to_string(candidate.provenance)}};
  if (candidate.provenance == Provenance::Polygon) j["edge"] = edge_json(candidate.edge, n_lengths);
  return j;
}

json to_json(const StringPrediction& prediction) {
  json per_k = json::array();
  for (const auto& k : prediction.per_k) {
    per_k.push_back({{"k", k.k}, {"re", k.z_pred.real()}, {"im", k.z_pred.imag()}});
  }
  json j = {{"gamma", prediction.gamma},
            {"branch", to_string(prediction.branch)},
            {"case_id", prediction.case_id ? json(*prediction.case_id) : json(nullptr)},
            {"provenance", to_string(prediction.provenance)},
            {"per_k", per_k}};
  if (!prediction.failures.empty()) {
    json f = json::array();
    for (const auto& e : prediction.failures) {
      f.push_back({{"k", e.k}, {"error", "NoConvergence"}, {"detail", e.reason}});
    }
    j["failures"] = f;
  }
  return j;
}

std::string resonances_csv(const ResonanceSet& set, std::optional<double> spacing) {
  std::ostringstream out;
  out << "k_index,re,im,residual,gamma_est,cluster_id\n";
  for (const auto& r : set.roots) {
    if (spacing) out << std::llround(r.z.real() / *spacing);
    out << ',' << format_double(r.z.real()) << ',' << format_double(r.z.imag()) << ','
        << format_double(r.residual) << ',' << format_double(r.gamma_est) << ','
        << r.cluster_id << '\n';
  }
  return out.str();
}

json to_json(const Window& w) {
  return {{"re_min", w.re_min}, {"re_max", w.re_max}, {"im_min", w.im_min}, {"im_max", w.im_max}};
}

json to_json(const ResonanceSet& set, std::optional<double> spacing) {
  json roots = json::array();
  for (const auto& r : set.roots) {
    json j = {{"re", r.z.real()},
              {"im", r.z.imag()},
              {"residual", r.residual},
              {"gamma_est", r.gamma_est},
              {"winding_cert", r.winding_cert},
              {"cluster_id", r.cluster_id},
              {"box", to_json(r.box)}};
    if (spacing) j["k_index"] = std::llround(r.z.real() / *spacing);
    roots.push_back(j);
  }
  json unc = json::array();
  for (const auto& u : set.uncertified) {
    unc.push_back({{"box", to_json(u.box)},
                   {"winding", u.winding},
                   {"depth", u.depth},
                   {"error", std::string(to_string(u.reason))},
                   {"detail", u.detail}});
  }
  return {{"window", to_json(set.window)},
          {"total_winding", set.total_winding},
          {"roots", roots},
          {"uncertified", unc}};
}

json to_json(const StringReport& report) {
  json clusters = json::array();
  for (std::size_t c = 0; c < report.clusters.size(); ++c) {
    const auto& cl = report.clusters[c];
    clusters.push_back({{"cluster_id", c},
                        {"gamma", cl.gamma},
                        {"count", cl.count},
                        {"mean_gamma_est", cl.mean_gamma_est},
                        {"mean_im", cl.mean_im},
                        {"im_spread", cl.im_spread},
                        {"flagged", cl.flagged}});
  }
  json levels = json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"count", l.members.size()},
                      {"mean_im", l.mean_im},
                      {"im_spread", l.im_spread},
                      {"mean_gamma_est", l.mean_gamma_est}});
  }
  return {{"gamma_tol", report.gamma_tol}, {"clusters", clusters}, {"levels", levels}};
}

}  // namespace reslab
