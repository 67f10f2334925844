#include <gtest/gtest.h>

#include "orbitquad/json_io.hpp"
#include "support.hpp"

using namespace orbitquad;
using support::rep;
using support::vec;

TEST(Json, RationalsAreStrings) {
  EXPECT_EQ(to_json(Scalar(-6, 4)).dump(), "\"-3/2\"");
  EXPECT_EQ(to_json(Scalar(7)).dump(), "\"7\"");
  EXPECT_EQ(scalar_from_json(Json("5/10")), Scalar(1, 2));
  EXPECT_THROW(scalar_from_json(Json(3)), Error);
}

TEST(Json, VectorRoundTrip) {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    Vec v = rng.integer_vector(6, 9);
    v[0] /= Scalar(7);
    EXPECT_EQ(vec_from_json(Json::parse(to_json(v).dump())), v);
  }
  EXPECT_THROW(vec_from_json(Json::parse("{\"a\":1}")), Error);
}

TEST(Json, MultiVectorRoundTrip) {
  Box b({2, 1});
  MultiVector m(b, vec("1,-1/2,0,3,2/3,4"));
  Json j = to_json(m);
  EXPECT_EQ(j["N"], Json::parse("[2,1]"));
  EXPECT_EQ(multivector_from_json(Json::parse(j.dump())), m);
}

TEST(Json, CatalecticantRoundTrip) {
  MultiVector b(Box({4}), vec("1,2,3,4,5"));
  Catalecticant c = catalecticant_from_b(b);
  Catalecticant back = catalecticant_from_json(Json::parse(to_json(c).dump()));
  EXPECT_EQ(back.b, c.b);
  EXPECT_EQ(back.matrix(), c.matrix());
}

TEST(Json, SubspaceFields) {
  Json j = to_json(Subspace::span({vec("2,4,0")}, 3));
  EXPECT_EQ(j["ambient"], 3);
  EXPECT_EQ(j["dim"], 1);
  EXPECT_EQ(j["basis"].dump(), R"([["1","2","0"]])");
}

TEST(Json, IsotypicFields) {
  Json j = to_json(isotypic_decomposition(square_of(rep(2, "sym(2,std)")).square));
  EXPECT_EQ(j["dims"], Json::parse("[5,1]"));
  EXPECT_EQ(j["multiplicity_free"], true);
  EXPECT_EQ(j["components"][0]["highest_weight"], Json::parse(R"(["4"])"));
}

TEST(Json, CertReportIsDeterministic) {
  auto r = rep(2, "sym(3,std)");
  std::string a = to_json(certify_irreducibility(r, vec("1,0,0,0"), 5, 9)).dump(2);
  std::string b = to_json(certify_irreducibility(r, vec("1,0,0,0"), 5, 9)).dump(2);
  EXPECT_EQ(a, b);
  Json j = Json::parse(a);
  EXPECT_EQ(j["verdict"], "consistent");
  EXPECT_EQ(j["dims"]["orbit_module"], 7);
  EXPECT_EQ(j["reverse"]["passes"], 5);
  for (const auto& rec : j["records"])
    for (const auto& w : rec["witness"]) EXPECT_NO_THROW(vec_from_json(w));
}

TEST(Json, ChordalFields) {
  Json j = to_json(chordal_ideal({4, 2, 1}, 0, 0));
  EXPECT_EQ(j["dims"]["ideal"], 1);
  EXPECT_EQ(j["matched_tail"], 1);
  EXPECT_EQ(j["tail_components"], Json::parse(R"(["Theta_2"])"));
  Json g = to_json(chordal_ideal({4, 2, 2}, 0, 0));
  EXPECT_EQ(g["tail_components"], Json::array());
}

TEST(Json, IdealMatricesReparse) {
  auto q = quadric_ideal(square_of(rep(2, "sym(3,std)")), vec("1,0,0,0"));
  Json j = Json::parse(to_json(q).dump());
  ASSERT_EQ(j["dim"], 3);
  for (std::size_t k = 0; k < q.dim(); ++k)
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(vec_from_json(j["basis"][k][i]), q.basis[k].row_vec(i));
}
