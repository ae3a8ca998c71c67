#include <gtest/gtest.h>

#include <string>

#include "qbc/builders.hpp"
#include "qbc/channel_io.hpp"
#include "qbc/errors.hpp"

using namespace qbc;

namespace {

const std::size_t kQubit[] = {2};

std::string depolarizing_text(double p) {
  return write_channel(builders::depolarizing(2, p), ConnectionGraph::diagonal(kQubit));
}

template <typename E>
std::string message_of(const std::string& text) {
  try {
    read_channel(text);
  } catch (const E& e) {
    return e.what();
  }
  return "no exception";
}

}  // namespace

TEST(ChannelIo, RoundTripIsBitExact) {
  RandomStream rng(1);
  const auto ch = builders::random_channel(SystemLayout({2, 3}, {0, 0}), SystemLayout({3, 2}), 3, rng);
  const ConnectionGraph graph(1, 2, {{0, 0, 3}, {0, 1, 2}});
  const auto doc = read_channel(write_channel(ch, graph));
  ASSERT_EQ(doc.channel.kraus_count(), ch.kraus_count());
  for (std::size_t k = 0; k < ch.kraus_count(); ++k) {
    EXPECT_TRUE((doc.channel.kraus()[k].array() == ch.kraus()[k].array()).all());
  }
  EXPECT_EQ(doc.channel.in_layout(), ch.in_layout());
  EXPECT_EQ(doc.graph, graph);
  EXPECT_EQ(write_channel(doc.channel, doc.graph), write_channel(ch, graph));
}

TEST(ChannelIo, DepolarizingRoundTrip) {
  const auto doc = read_channel(depolarizing_text(0.3));
  const auto original = builders::depolarizing(2, 0.3);
  for (std::size_t k = 0; k < original.kraus_count(); ++k) {
    EXPECT_TRUE((doc.channel.kraus()[k].array() == original.kraus()[k].array()).all());
  }
}

TEST(ChannelIo, RejectsIncompleteKrausSetWithDefect) {
  const std::string text = R"({"in_dims": [2], "out_dims": [2],
    "connections": [{"sender": 0, "receiver": 0, "ref_dim": 2}],
    "kraus": [[[[0.9, 0], [0, 0]], [[0, 0], [0.9, 0]]]]})";
  const auto msg = message_of<InvalidChannel>(text);
  EXPECT_NE(msg.find("0.19"), std::string::npos) << msg;
  EXPECT_NO_THROW(read_channel(text, false));
}

TEST(ChannelIo, MismatchedDimensionsNameTheField) {
  const std::string text = R"({"in_dims": [2, 2], "out_dims": [2],
    "connections": [{"sender": 0, "receiver": 0, "ref_dim": 2}],
    "kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]})";
  const auto msg = message_of<ParseError>(text);
  EXPECT_NE(msg.find("kraus[0]"), std::string::npos) << msg;
}

TEST(ChannelIo, TruncatedFileReportsLine) {
  std::string text = depolarizing_text(0.3);
  text.resize(text.size() / 2);
  try {
    read_channel(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("line "), std::string::npos);
  }
}

TEST(ChannelIo, MissingFieldsAndBadEntries) {
  EXPECT_NE(message_of<ParseError>(R"({"in_dims": [2]})").find("out_dims"), std::string::npos);
  const std::string bad_entry = R"({"in_dims": [1], "out_dims": [1],
    "connections": [{"sender": 0, "receiver": 0, "ref_dim": 1}], "kraus": [[[[1, 0, 0]]]]})";
  EXPECT_NE(message_of<ParseError>(bad_entry).find("kraus[0]"), std::string::npos);
  const std::string bad_conn = R"({"in_dims": [2], "out_dims": [2],
    "connections": [{"sender": 3, "receiver": 0, "ref_dim": 2}],
    "kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]})";
  EXPECT_NE(message_of<ParseError>(bad_conn).find("connections"), std::string::npos);
}
