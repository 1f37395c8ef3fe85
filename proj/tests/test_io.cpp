#include <gtest/gtest.h>

#include <bit>
#include <limits>

#include "generators.hpp"
#include "scottish_lab/io.hpp"

using namespace scottish_lab;
using namespace scottish_lab::io;

namespace {

bool bit_equal(const CoeffSeq& a, const CoeffSeq& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::bit_cast<std::uint64_t>(a[k].real()) != std::bit_cast<std::uint64_t>(b[k].real()) ||
        std::bit_cast<std::uint64_t>(a[k].imag()) != std::bit_cast<std::uint64_t>(b[k].imag()))
      return false;
  return true;
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_coeffs_csv(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::Parse;
}

}  // namespace

TEST(CoeffCsv, RoundTripReal) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto r = gen::rng_for(61, i);
    std::vector<double> v(gen::size_in(r, 1, 100));
    for (auto& x : v) {
      const auto pick = r.below(6);
      x = pick == 0 ? 0.0 : pick == 1 ? -0.0 : pick == 2 ? r.uniform(-1e-300, 1e-300) : r.uniform(-1e6, 1e6);
    }
    const CoeffSeq s(v);
    ASSERT_TRUE(bit_equal(parse_coeffs_csv(format_coeffs_csv(s)), s)) << format_coeffs_csv(s);
  }
}

TEST(CoeffCsv, RoundTripComplex) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto r = gen::rng_for(62, i);
    const CoeffSeq s = gen::complex_seq(r, gen::size_in(r, 1, 100));
    const std::string text = format_coeffs_csv(s, "note");
    ASSERT_TRUE(bit_equal(parse_coeffs_csv(text), s));
  }
}

TEST(CoeffCsv, Extremes) {
  const double d = std::numeric_limits<double>::denorm_min();
  const double big = std::numeric_limits<double>::max();
  const CoeffSeq s(std::vector<double>{d, -big, 0.1, 1.0 / 3.0, -0.0});
  EXPECT_TRUE(bit_equal(parse_coeffs_csv(format_coeffs_csv(s)), s));
}

TEST(CoeffCsv, SparseAndTrailingZeros) {
  const CoeffSeq s = parse_coeffs_csv("# comment\nk,re\n2,1.5\n\n7,0\n");
  EXPECT_EQ(s.size(), 8u);
  EXPECT_EQ(s[2], Complex(1.5));
  EXPECT_EQ(s[0], Complex(0.0));
  EXPECT_EQ(format_coeffs_csv(s), "k,re\n2,1.5\n7,0\n");
}

TEST(CoeffCsv, Whitespace) {
  EXPECT_EQ(parse_coeffs_csv("k,re\n 0 , 2.5 \r\n"), CoeffSeq{2.5});
}

TEST(CoeffCsv, Errors) {
  EXPECT_EQ(kind_of(""), ErrorKind::Parse);
  EXPECT_EQ(kind_of("index,value\n0,1\n"), ErrorKind::Parse);
  EXPECT_EQ(kind_of("k,re\n"), ErrorKind::EmptyDimension);
  EXPECT_EQ(kind_of("k,re\n3,1\n3,2\n"), ErrorKind::Parse);
  EXPECT_EQ(kind_of("k,re\n3,1\n1,2\n"), ErrorKind::Parse);
  EXPECT_EQ(kind_of("k,re\n0,1,2\n"), ErrorKind::Parse);
  EXPECT_EQ(kind_of("k,re\n0,abc\n"), ErrorKind::Parse);
  EXPECT_EQ(kind_of("k,re\n-1,2\n"), ErrorKind::Parse);
  EXPECT_EQ(kind_of("k,re\n0,nan\n"), ErrorKind::NonFinite);
  EXPECT_EQ(kind_of("k,re\n0,inf\n"), ErrorKind::NonFinite);
  EXPECT_EQ(kind_of("k,re,im\n0,1,-inf\n"), ErrorKind::NonFinite);
  EXPECT_THROW(read_coeffs_csv("/nonexistent/path.csv"), Error);
}

TEST(MatrixCsv, RoundTrip) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto r = gen::rng_for(63, i);
    const DenseMatrix q = gen::matrix(r, gen::size_in(r, 1, 9), gen::size_in(r, 1, 9));
    const DenseMatrix back = parse_matrix_csv(format_matrix_csv(q, "m"));
    ASSERT_EQ(back.rows(), q.rows());
    ASSERT_EQ(back.cols(), q.cols());
    for (std::size_t j = 0; j < q.rows(); ++j)
      for (std::size_t k = 0; k < q.cols(); ++k) ASSERT_EQ(back(j, k), q(j, k));
  }
}

TEST(MatrixCsv, Errors) {
  EXPECT_THROW(parse_matrix_csv("1,2\n3\n"), Error);
  EXPECT_THROW(parse_matrix_csv("# only a comment\n"), Error);
  EXPECT_THROW(parse_matrix_csv("1,nan\n"), Error);
}

TEST(Json, NumbersAndExponents) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(exponent_json(kInf), json("inf"));
  EXPECT_EQ(exponent_json(2.0), json(2.0));
  const json j = to_json(besov_norm(CoeffSeq{0.0, 0.0, 1.0}, 1.0, kInf, 1.0, 3));
  EXPECT_EQ(j.at("p"), "inf");
  EXPECT_DOUBLE_EQ(j.at("norm").get<double>(), 2.0);
}

TEST(Json, CoeffSeqShape) {
  const json r = to_json(CoeffSeq{1.0, 2.0});
  EXPECT_EQ(r.at("k"), json({0, 1}));
  EXPECT_EQ(r.at("re"), json({1.0, 2.0}));
  EXPECT_FALSE(r.contains("im"));
  const json c = to_json(CoeffSeq(std::vector<Complex>{{1.0, -1.0}}));
  EXPECT_EQ(c.at("im"), json({-1.0}));
}
