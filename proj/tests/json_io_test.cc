// Copyright 2026 The covcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "covcert/json_io.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "covcert/wstate.h"
#include "gtest/gtest.h"

using namespace covcert;

namespace {

std::string temp_file(const std::string &name, const std::string &content) {
    const std::string path = ::testing::TempDir() + "/covcert_json_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST(JsonIoTest, NumbersUseTwelveSignificantDigits) {
    EXPECT_EQ(number_json(1.0 / 3.0).dump(), "0.333333333333");
    EXPECT_EQ(number_json(0.005).dump(), "0.005");
    EXPECT_EQ(number_json(2.0).get<double>(), 2.0);
    EXPECT_EQ(number_json(-0.0).dump(), number_json(0.0).dump());
    EXPECT_TRUE(number_json(std::numeric_limits<double>::quiet_NaN()).is_null());
    EXPECT_TRUE(number_json(std::numeric_limits<double>::infinity()).is_null());
}

TEST(JsonIoTest, MatrixRoundTrip) {
    ComplexMatrix m(2, 2);
    m << Complex(1, 0), Complex(0.5, -0.25), Complex(0.5, 0.25), Complex(0, 0);
    Json j = matrix_to_json(m);
    EXPECT_LT((matrix_from_json(j) - m).norm(), 1e-15);
    ComplexMatrix real = matrix_from_json(Json::parse("[[1, 2], [3, 4]]"));
    EXPECT_EQ(real(1, 0), Complex(3, 0));
    ComplexMatrix mixed = matrix_from_json(Json::parse("[[1, [0, 1]], [[0, -1], 1]]"));
    EXPECT_EQ(mixed(0, 1), Complex(0, 1));
}

TEST(JsonIoTest, MalformedMatricesAreRejected) {
    EXPECT_THROW(matrix_from_json(Json::parse("[[1, 2], [3]]")), FormatError);
    EXPECT_THROW(matrix_from_json(Json::parse("[]")), FormatError);
    EXPECT_THROW(matrix_from_json(Json::parse("[[\"a\"]]")), FormatError);
    EXPECT_THROW(matrix_from_json(Json::parse("[[[1, 2, 3]]]")), FormatError);
    EXPECT_THROW(matrix_from_json(Json::parse("{\"x\": 1}")), FormatError);
}

TEST(JsonIoTest, ChannelRoundTrip) {
    QuantumChannel enc = encoder({2, 2, 0});
    Json j = channel_to_json(enc);
    ASSERT_TRUE(j.contains("in_shape"));
    ASSERT_TRUE(j.contains("out_shape"));
    QuantumChannel back = channel_from_json(j);
    EXPECT_EQ(back.in_shape(), enc.in_shape());
    EXPECT_EQ(back.out_shape(), enc.out_shape());
    ASSERT_EQ(back.kraus().size(), enc.kraus().size());
    EXPECT_LT((back.kraus()[0] - enc.kraus()[0]).norm(), 1e-11);
}

TEST(JsonIoTest, ChannelValidation) {
    EXPECT_THROW(channel_from_json(Json::parse("{\"in_shape\": [2]}")), FormatError);
    // Not trace preserving.
    EXPECT_ANY_THROW(channel_from_json(Json::parse("{\"kraus\": [[[1, 0], [0, 0]]]}")));
    // Shape product disagrees with the matrix size.
    EXPECT_ANY_THROW(
        channel_from_json(Json::parse("{\"kraus\": [[[1, 0], [0, 1]]], \"in_shape\": [3], \"out_shape\": [2]}")));
}

TEST(JsonIoTest, RepresentationFormats) {
    GroupRep sym = rep_from_json(Json::parse(R"({"labels": ["e", "z"], "unitaries": [[[1, 0], [0, 1]], [[1, 0], [0, -1]]]})"));
    EXPECT_EQ(sym.size(), 2u);
    EXPECT_EQ(sym.labels()[1], "z");
    GroupRep split = rep_from_json(Json::parse(
        R"({"unitaries_in": [[[1, 0], [0, 1]], [[1, 0], [0, -1]]], "unitaries_out": [[[1]], [[-1]]]})"));
    EXPECT_EQ(split.dim_in(), 2u);
    EXPECT_EQ(split.dim_out(), 1u);
    EXPECT_THROW(rep_from_json(Json::parse(R"({"labels": ["e"]})")), FormatError);
}

TEST(JsonIoTest, StatesAndQueries) {
    ComplexMatrix plus = state_from_json(Json::parse("{\"ket\": [1, 1]}"));
    EXPECT_NEAR(plus(0, 1).real(), 0.5, 1e-15);
    EXPECT_THROW(state_from_json(Json::parse("{\"ket\": [0, 0]}")), FormatError);
    const char *text = R"({
        "inputs": [{"ket": [1, 0]}],
        "targets": [{"ket": [1, 1]}],
        "rep": {"unitaries": [[[1, 0], [0, 1]], [[1, 0], [0, -1]]]},
        "epsilon": 0.4
    })";
    ConversionQuery q = query_from_json(Json::parse(text));
    EXPECT_EQ(q.inputs.size(), 1u);
    EXPECT_DOUBLE_EQ(q.epsilon, 0.4);
    Json bad = Json::parse(text);
    bad["epsilon"] = 1.5;
    EXPECT_THROW(query_from_json(bad), FormatError);
    bad = Json::parse(text);
    bad.erase("rep");
    EXPECT_THROW(query_from_json(bad), FormatError);
    bad = Json::parse(text);
    bad["targets"] = Json::parse("[[[0.5, 0], [0, 0.5]]]");
    EXPECT_THROW(query_from_json(bad), FormatError);
}

TEST(JsonIoTest, ReportListsErasedFactorsOneBased) {
    CertReport r = make_report(1.985, 2, 0.005);
    r.erased = {0, 3};
    r.path = "analytic";
    Json j = report_to_json(r);
    EXPECT_EQ(j.at("erased"), Json::parse("[1, 4]"));
    EXPECT_EQ(j.at("epsilon_min").get<double>(), 0.005);
    EXPECT_EQ(j.at("verdict"), "correctable");
    EXPECT_TRUE(j.at("solver").is_null());
    Json none = report_to_json(make_report(1.985, 2, std::nullopt));
    EXPECT_TRUE(none.at("verdict").is_null());
    EXPECT_TRUE(none.at("threshold_bits").is_null());
}

TEST(JsonIoTest, ReadFileReportsErrors) {
    EXPECT_THROW(read_json_file(::testing::TempDir() + "/covcert_json_missing.json"), FormatError);
    EXPECT_THROW(read_json_file(temp_file("broken.json", "{\"kraus\": [")), FormatError);
    EXPECT_EQ(read_json_file(temp_file("ok.json", "[1, 2]")).size(), 2u);
}
