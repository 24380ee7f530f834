#include <gtest/gtest.h>

#include <sstream>

#include "defprior/empirical_bayes.hpp"
#include "defprior/ingest_csv.hpp"

namespace defprior {
namespace {

CsvReadResult read(const std::string& text) {
  std::istringstream in(text);
  return read_records_csv(in);
}

TEST(CsvReader, ParsesRowsWithLineNumbers) {
  const CsvReadResult r = read("study_id,p_value\nA,0.04\n\nB,1e-2\nC,1\n");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[0].study_id, "A");
  EXPECT_EQ(r.records[0].line, 2u);
  EXPECT_EQ(r.records[1].p_value, 0.01);
  EXPECT_EQ(r.records[1].line, 4u);
  EXPECT_EQ(r.records[2].p_value, 1.0);
}

TEST(CsvReader, HandlesBomCrlfAndQuotes) {
  const CsvReadResult r = read("\xEF\xBB\xBFstudy_id,p_value\r\n\"Smith, 2010\",0.2\r\n");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].study_id, "Smith, 2010");
  EXPECT_EQ(r.records[0].p_value, 0.2);
}

TEST(CsvReader, ReportsMalformedRows) {
  const CsvReadResult r = read("study_id,p_value\nA,abc\nB\nC,0.5\n");
  ASSERT_EQ(r.errors.size(), 2u);
  EXPECT_EQ(r.errors[0].line, 2u);
  EXPECT_EQ(r.errors[1].line, 3u);
  EXPECT_EQ(r.records.size(), 1u);
}

TEST(CsvReader, RejectsWrongHeader) {
  EXPECT_FALSE(read("id,p\nA,0.5\n").ok());
  EXPECT_FALSE(read("").ok());
}

TEST(CsvReader, OutOfRangeValuesAreLeftToIngest) {
  const CsvReadResult r = read("study_id,p_value\nA,-0.5\nA,2\nA,0.0004\n");
  ASSERT_TRUE(r.ok());
  const IngestResult ing = ingest(r.records);
  EXPECT_EQ(ing.dropped.size(), 3u);
  EXPECT_EQ(record_count(ing.dataset), 0u);
}

TEST(CsvWriter, RoundTripsExactly) {
  const Dataset data = simulate_dataset(1.0, 0.3, 4, 6, 3);
  const std::vector<RawRecord> rows = to_raw_records(data);
  std::ostringstream out;
  write_records_csv(out, rows);
  const CsvReadResult back = read(out.str());
  ASSERT_TRUE(back.ok());
  ASSERT_EQ(back.records.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back.records[i].study_id, rows[i].study_id);
    EXPECT_EQ(back.records[i].p_value, rows[i].p_value);
  }
}

}  // namespace
}  // namespace defprior
