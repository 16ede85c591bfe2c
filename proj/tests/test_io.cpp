#include "eigsch/io.hpp"
#include "eigsch/random.hpp"

#include <gtest/gtest.h>

using namespace eigsch;

TEST(Io, TensorRoundTrip) {
    TensorSampler s(71);
    auto t = s.partially_symmetric(2, 3);
    auto back = tensor_from_json(Json::parse(to_json(t).dump()));
    EXPECT_EQ(std::get<PSTensor>(back), t);
    auto f = s.symmetric(3, 4);
    auto fb = tensor_from_json(Json::parse(to_json(f).dump()));
    EXPECT_EQ(std::get<SymTensor>(fb), f);
}

TEST(Io, TensorKinds) {
    auto sym = tensor_from_json(Json::parse(R"({"n": 2, "d": 3, "forms": ["x0^3 + x1*x2^2"]})"));
    EXPECT_TRUE(std::holds_alternative<SymTensor>(sym));
    auto ps = tensor_from_json(Json::parse(R"({"n": 1, "d": 2, "kind": "partially_symmetric", "forms": ["x0", "x1"]})"));
    EXPECT_TRUE(std::holds_alternative<PSTensor>(ps));
    EXPECT_THROW(tensor_from_json(Json::parse(R"({"n": 1, "d": 2, "kind": "symmetric", "forms": ["x0", "x1"]})")), SchemaError);
    EXPECT_THROW(tensor_from_json(Json::parse(R"({"n": 2, "d": 3, "forms": ["x0^2"]})")), SchemaError);
    EXPECT_THROW(tensor_from_json(Json::parse(R"({"n": 2, "forms": ["x0^3"]})")), SchemaError);
    EXPECT_THROW(tensor_from_json(Json::parse(R"({"n": 2, "d": 3, "forms": ["x0^3 +"]})")), SchemaError);
    EXPECT_THROW(tensor_from_json(Json::parse(R"({"n": 2, "d": 3, "forms": [3]})")), SchemaError);
}

TEST(Io, DetTupleRoundTrip) {
    TensorSampler s(72);
    auto f = determinantal_generators(s.partially_symmetric(3, 3));
    EXPECT_EQ(det_tuple_from_json(Json::parse(to_json(f).dump())), f);
    auto z = det_tuple_from_json(Json::parse(R"({"n": 2, "d": 3, "minors": []})"));
    EXPECT_TRUE(z.is_zero());
    EXPECT_THROW(det_tuple_from_json(Json::parse(R"({"n": 2, "d": 3, "minors": [{"i": 1, "j": 0, "f": "0"}]})")), SchemaError);
    EXPECT_THROW(det_tuple_from_json(Json::parse(R"({"n": 2, "d": 3, "minors": [{"i": 0, "j": 1, "f": "x0"}]})")), SchemaError);
}

TEST(Io, Points) {
    auto pts = points_from_json(Json::parse(R"({"points": [["1", "1/2", "0"], [0, 1, -3]]})"));
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(std::get<RatPoint>(pts[0]).coords, (std::vector<Rational>{1, ratio(1, 2), 0}));
    auto c = points_from_json(Json::parse(R"({"points": [[[1, 0], [0.5, -1]]]})"));
    EXPECT_EQ(std::get<ComplexPoint>(c[0]).coords[1], Complex(0.5, -1));
    EXPECT_THROW(points_from_json(Json::parse(R"({"points": [["1", "x"]]})")), SchemaError);
    EXPECT_THROW(points_from_json(Json::parse(R"({"points": [["1", "2"], ["1"]]})")), SchemaError);
    EXPECT_THROW(points_from_json(Json::parse(R"({"points": [["1", "2"], [[1, 0], [2, 0]]]})")), SchemaError);
    Json j = to_json(ProjPoint{RatPoint{{1, ratio(-2, 3)}}});
    EXPECT_EQ(j.dump(), R"(["1","-2/3"])");
}

TEST(Io, ReportsSerialize) {
    auto b = to_json(predicted_betti(2, 3));
    EXPECT_EQ(b["modules"][1]["summands"][1]["twist"], 5);
    ConfigReport r;
    r.curve_candidates.push_back({2, "x0*x1 - x2^2", {0, 1, 2, 3, 4, 5}});
    auto j = to_json(r);
    EXPECT_EQ(j["curve_candidates"][0]["irreducibility"], "unchecked");
    EXPECT_EQ(j["curve_candidates"][0]["k"], 2);
}
