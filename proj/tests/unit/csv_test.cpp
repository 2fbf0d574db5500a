#include <gtest/gtest.h>

#include <chroma_infer/csv.hpp>
#include <chroma_infer/error.hpp>
#include <sstream>

using chroma_infer::Error;
using chroma_infer::ErrorCode;
using chroma_infer::csv::Table;

namespace {

Table parse(const std::string& text) {
  std::istringstream in(text);
  return Table::parse(in, "mem.csv");
}

}  // namespace

TEST(Csv, SplitsQuotedFields) {
  const auto f = chroma_infer::csv::split_line(R"(a, "b, c" ,"say ""hi""",  d )");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[0], "a");
  EXPECT_EQ(f[1], "b, c");
  EXPECT_EQ(f[2], "say \"hi\"");
  EXPECT_EQ(f[3], "d");
}

TEST(Csv, EscapeRoundTrips) {
  for (std::string s : {"plain", "a lot of fire", "x,y", "quote\"inside"}) {
    const auto f = chroma_infer::csv::split_line(chroma_infer::csv::escape(s));
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0], s);
  }
}

TEST(Csv, ParsesHeaderBomAndBlankLines) {
  const Table t = parse("\xEF\xBB\xBFid,value\r\n1,2.5\r\n\r\n2,-3\n");
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.column("id"), 0u);
  EXPECT_DOUBLE_EQ(t.number(0, t.column("value")), 2.5);
  EXPECT_EQ(t.integer(1, t.column("value")), -3);
}

TEST(Csv, MissingColumnIsParseError) {
  const Table t = parse("a,b\n1,2\n");
  try {
    t.column("c");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
    EXPECT_NE(std::string(e.what()).find("mem.csv"), std::string::npos);
  }
}

TEST(Csv, RaggedRowIsRejected) {
  EXPECT_THROW(parse("a,b\n1,2,3\n"), Error);
}

TEST(Csv, BadNumberNamesLine) {
  const Table t = parse("a\n1\nx\n");
  try {
    t.number(1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
    EXPECT_NE(std::string(e.what()).find("mem.csv:3"), std::string::npos);
  }
}

TEST(Csv, Booleans) {
  const Table t = parse("v\n1\n0\ntrue\nFalse\nyes\nno\nmaybe\n");
  EXPECT_TRUE(t.boolean(0, 0));
  EXPECT_FALSE(t.boolean(1, 0));
  EXPECT_TRUE(t.boolean(2, 0));
  EXPECT_FALSE(t.boolean(3, 0));
  EXPECT_TRUE(t.boolean(4, 0));
  EXPECT_FALSE(t.boolean(5, 0));
  EXPECT_THROW(t.boolean(6, 0), Error);
}
