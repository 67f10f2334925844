#ifndef ORBITQUAD_JSON_IO_HPP
#define ORBITQUAD_JSON_IO_HPP

// JSON encoding. Rationals are strings "p/q" (or "p"), so documents re-parse exactly.

#include <json.hpp>

#include "orbitquad/applications.hpp"
#include "orbitquad/certify.hpp"

namespace orbitquad {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline Json to_json(const Scalar& x) { return to_string(x); }

inline Json to_json(std::span<const Scalar> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const Mat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline Json to_json(const Subspace& s) {
  return {{"ambient", s.ambient_dim()}, {"dim", s.dim()}, {"basis", to_json(s.basis())}};
}

inline Json to_json(const MultiVector& v) { return {{"N", v.box.bounds()}, {"data", to_json(v.data)}}; }

inline Json to_json(const Catalecticant& c) { return {{"b", to_json(c.b)}}; }

inline Json to_json(const QuadraticIdeal& q) {
  Json basis = Json::array();
  for (const auto& m : q.basis) basis.push_back(to_json(m));
  return {{"ambient", q.ambient}, {"dim", q.dim()}, {"basis", basis}};
}

inline Scalar scalar_from_json(const Json& j) {
  if (!j.is_string()) throw Error("json: rational must be a string");
  return parse_scalar(j.get<std::string>());
}

inline Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw Error("json: vector must be an array");
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

inline MultiVector multivector_from_json(const Json& j) {
  return MultiVector(Box(j.at("N").get<std::vector<int>>()), vec_from_json(j.at("data")));
}

inline Catalecticant catalecticant_from_json(const Json& j) {
  return catalecticant_from_b(multivector_from_json(j.at("b")));
}

inline Json to_json(const IsotypicDecomposition& d) {
  Json comps = Json::array();
  for (const auto& c : d.components)
    comps.push_back({{"highest_weight", to_json(c.highest_weight.coords)},
                     {"multiplicity", c.multiplicity},
                     {"dim", c.space.dim()}});
  return {{"dims", d.dims()}, {"multiplicity_free", d.multiplicity_free}, {"components", comps}};
}

inline Json to_json(const CertReport& r) {
  Json records = Json::array();
  for (const auto& t : r.records) {
    Json w = Json::array();
    for (const auto& v : t.witness) w.push_back(to_json(v));
    records.push_back({{"stage", t.stage}, {"index", t.index}, {"pass", t.pass}, {"detail", t.detail}, {"witness", w}});
  }
  return {
      {"verdict", to_string(r.verdict)},
      {"seed", r.seed},
      {"trials", r.trials},
      {"dims",
       {{"V", r.dim_v}, {"S2", r.dim_s2}, {"orbit_module", r.dim_orbit}, {"ideal", r.dim_ideal},
        {"rank_A", r.rank_A}, {"im_At", r.dim_im_At}, {"mu_span", r.dim_mu_span}}},
      {"N", r.box},
      {"D", r.sequence},
      {"leibniz", {{"checked", r.leibniz_checked}, {"passes", r.leibniz_passes}}},
      {"decompose", {{"trials", r.decompose_trials}, {"passes", r.decompose_passes}}},
      {"hyperplane",
       {{"trials", r.hyperplane_trials}, {"hyperplane", r.hyperplane_good}, {"full", r.hyperplane_bad},
        {"smaller", r.hyperplane_smaller}}},
      {"forward",
       {{"trials", r.forward_trials}, {"passes", r.forward_passes}, {"skipped", r.forward_skipped},
        {"rank_zero", r.rank_zero_events}}},
      {"reverse", {{"trials", r.reverse_trials}, {"passes", r.reverse_passes}}},
      {"notes", r.notes},
      {"records", records},
  };
}

/// matched_tail is p' with ideal = ⊕_{i >= p'} Θ_{2i}; tail_components lists those Θ.
inline Json to_json(const ChordalResult& r) {
  Json comps = Json::array();
  for (std::size_t c = 0; c < r.theta.size(); ++c)
    comps.push_back({{"theta", "Theta_" + std::to_string(2 * r.theta[c])}, {"dim", r.theta_dims[c]}});
  Json tail = Json::array();
  if (r.matched_tail)
    for (std::size_t c = 0; c < r.theta.size(); ++c)
      if (r.theta[c] >= *r.matched_tail) tail.push_back("Theta_" + std::to_string(2 * r.theta[c]));
  return {
      {"n", r.spec.n},
      {"k", r.spec.k},
      {"p", r.spec.p},
      {"dims", {{"V", r.dim_v}, {"S2", r.dim_s2}, {"span", r.span_dim}, {"ideal", r.ideal.dim()}}},
      {"isotypic", comps},
      {"samples_used", r.samples_used},
      {"budget", r.budget},
      {"stabilized", r.stabilized},
      {"matched_tail", r.matched_tail ? Json(*r.matched_tail) : Json(nullptr)},
      {"tail_components", tail},
      {"ideal", to_json(r.ideal)},
  };
}

inline Json to_json(const ComponentReport& r) {
  return {{"S", r.s_sets},
          {"contained", r.contained},
          {"maximal", r.maximal},
          {"s", r.free_indices},
          {"sperner_bound", r.bound},
          {"within_bound", r.within_bound}};
}

}  // namespace orbitquad

#endif  // ORBITQUAD_JSON_IO_HPP
