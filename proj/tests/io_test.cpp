#include <gtest/gtest.h>

#include <sstream>

#include "ap3/errors.hpp"
#include "ap3/io.hpp"

namespace ap3 {
namespace {

TEST(Io, FunctionJsonRoundTrip) {
  FieldParams params(3, 2);
  Rng rng(5);
  std::vector<double> v(params.size());
  for (auto& x : v) x = std::uniform_real_distribution<double>(0, 1)(rng);
  DenseFunction f(params, v);
  const DenseFunction g = function_from_json(Json::parse(to_json(f).dump()));
  EXPECT_EQ(g.values(), f.values());
}

TEST(Io, SetAndSubspaceRoundTrip) {
  FieldParams params(5, 3);
  SetSpec s(params, {0, 7, 19});
  EXPECT_EQ(set_from_json(to_json(s)).members(), s.members());
  Subspace w = Subspace::span_rows(params, {{1, 2, 0}, {0, 0, 1}});
  EXPECT_EQ(subspace_from_json(to_json(w)).basis(), w.basis());
}

TEST(Io, MalformedJson) {
  EXPECT_THROW(function_from_json(Json{{"p", 3}, {"n", 1}, {"values", {0.1, 0.2}}}), FormatError);
  EXPECT_THROW(function_from_json(Json{{"p", 4}, {"n", 1}, {"values", {0, 0, 0, 0}}}), FormatError);
  EXPECT_THROW(function_from_json(Json{{"p", 3}, {"values", {0, 0, 0}}}), FormatError);
  EXPECT_THROW(function_from_json(Json{{"p", 3}, {"n", 1}, {"values", "abc"}}), FormatError);
  EXPECT_THROW(subspace_from_json(Json{{"p", 3}, {"n", 2}, {"basis", {{1, 1}, {2, 2}}}}), FormatError);
  EXPECT_THROW(subspace_from_json(Json{{"p", 3}, {"n", 2}, {"basis", {{1, 3}}}}), FormatError);
  EXPECT_THROW(set_from_json(Json{{"p", 3}, {"n", 1}, {"members", {5}}}), FormatError);
}

TEST(Io, CsvRoundTrip) {
  FieldParams params(3, 2);
  DenseFunction f(params, {0, 0.5, 1, 0.25, 0.125, 1e-300, 0.3, 0.7, 0.1});
  std::stringstream buf;
  write_function_csv(buf, f);
  EXPECT_EQ(read_function_csv(buf, params).values(), f.values());
}

TEST(Io, CsvMalformed) {
  FieldParams params(3, 1);
  std::istringstream missing("0,1\n2,1\n");
  EXPECT_THROW(read_function_csv(missing, params), FormatError);
  std::istringstream dup("0,1\n0,1\n1,0\n2,0\n");
  EXPECT_THROW(read_function_csv(dup, params), FormatError);
  std::istringstream junk("0,1\n1,x\n2,0\n");
  EXPECT_THROW(read_function_csv(junk, params), FormatError);
  std::istringstream range("0,1\n1,0\n3,0\n");
  EXPECT_THROW(read_function_csv(range, params), FormatError);
  std::istringstream ok("index,value\n1,0.5\n2,0\n0,1\n");
  EXPECT_EQ(read_function_csv(ok, params).values(), (std::vector<double>{1, 0.5, 0}));
}

TEST(Io, SpectrumCsv) {
  FieldParams params(3, 1);
  DenseFunction delta(params, {1, 0, 0});
  std::ostringstream out;
  write_spectrum_csv(out, dft(delta));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,re,im,magnitude,rank");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",1,0,1,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 3);
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-17, 123456.789, -2.5}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

}  // namespace
}  // namespace ap3
