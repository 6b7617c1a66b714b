#include "orderflow/parse.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace orderflow;

namespace {

constexpr const char* kHeader =
    "stock_id,date,time,event_kind,order_id,side,price,size,investor_class\n";

ParseResult parse_text(const std::string& body) {
    std::istringstream in(std::string(kHeader) + body);
    return parse_stream(in);
}

} // namespace

TEST(Parse, EmptyFileYieldsEmptySequence) {
    std::istringstream in("");
    ParseResult r = parse_stream(in);
    EXPECT_TRUE(r.events.empty());
    EXPECT_EQ(r.accepted, 0u);
    EXPECT_EQ(r.rejected, 0u);
}

TEST(Parse, HeaderOnlyYieldsEmptySequence) {
    ParseResult r = parse_text("");
    EXPECT_TRUE(r.events.empty());
    EXPECT_EQ(r.rejected, 0u);
}

TEST(Parse, MalformedHeaderIsFatal) {
    std::istringstream in("foo,bar\n");
    EXPECT_THROW(parse_stream(in), std::runtime_error);
}

TEST(Parse, BuySubmitViolatingBoardLotIsRejected) {
    ParseResult r = parse_text("000001,20030102,093001,submit,1,B,10.02,150,I\n");
    EXPECT_EQ(r.accepted, 0u);
    ASSERT_EQ(r.rejects.size(), 1u);
    EXPECT_EQ(r.rejects[0].line_no, 2u);
    EXPECT_NE(r.rejects[0].reason.find("board-lot"), std::string::npos);
}

TEST(Parse, SellSubmitMayHaveAnySize) {
    ParseResult r = parse_text("000001,20030102,093001,submit,1,S,10.02,157,I\n");
    EXPECT_EQ(r.accepted, 1u);
    EXPECT_EQ(r.events[0].size, 157);
}

TEST(Parse, ThreeRecordLifecycleLinksByOrderId) {
    ParseResult r = parse_text(
        "000001,20030102,093001,submit,7,B,10.02,300,N\n"
        "000001,20030102,093002,execute,7,B,10.02,100,N\n"
        "000001,20030102,093003,cancel,7,B,10.02,200,N\n");
    ASSERT_EQ(r.accepted, 3u);
    EXPECT_EQ(r.events[0].kind, EventKind::submit);
    EXPECT_EQ(r.events[1].kind, EventKind::execute);
    EXPECT_EQ(r.events[2].kind, EventKind::cancel);
    for (const auto& ev : r.events) EXPECT_EQ(ev.order_id, "7");
    EXPECT_EQ(r.events[0].investor, InvestorClass::institution);
}

TEST(Parse, RoundTripIsByteExactOnCanonicalInput) {
    const std::string body =
        "000001,20030102,093001,submit,7,B,10.02,300,N\n"
        "000001,20030102,093002.500,execute,7,B,10.02,100,N\n"
        "000002,20030102,130501,submit,9,S,9.9975,157,I\n";
    ParseResult first = parse_text(body);
    ASSERT_EQ(first.accepted, 3u);

    std::ostringstream out;
    write_events(out, first.events);
    EXPECT_EQ(out.str(), std::string(kHeader) + body);

    std::istringstream again(out.str());
    ParseResult second = parse_stream(again);
    EXPECT_EQ(first.events, second.events);
}

TEST(Parse, SerializationReproducesAcceptedSubsetBitExactly) {
    const std::string good1 = "000001,20030102,093001,submit,1,B,10.02,100,I\n";
    const std::string bad = "000001,20030102,093002,submit,2,B,10.02,150,I\n";  // board lot
    const std::string good2 = "000001,20030102,093003,submit,3,S,10.04,77,N\n";
    ParseResult r = parse_text(good1 + bad + good2);
    EXPECT_EQ(r.accepted, 2u);
    EXPECT_EQ(r.rejected, 1u);

    std::ostringstream out;
    write_events(out, r.events);
    EXPECT_EQ(out.str(), std::string(kHeader) + good1 + good2);
}

TEST(Parse, CancelReferencingUnknownOrderIsRejected) {
    ParseResult r = parse_text("000001,20030102,093001,cancel,99,B,10.02,100,I\n");
    EXPECT_EQ(r.accepted, 0u);
    ASSERT_EQ(r.rejects.size(), 1u);
    EXPECT_NE(r.rejects[0].reason.find("no earlier submit"), std::string::npos);
}

TEST(Parse, OutOfOrderTimestampWithinStockIsFatal) {
    EXPECT_THROW(parse_text("000001,20030102,093005,submit,1,B,10.02,100,I\n"
                            "000001,20030102,093001,submit,2,B,10.02,100,I\n"),
                 std::runtime_error);
    // Across stocks interleaving is fine.
    ParseResult r = parse_text(
        "000001,20030102,093005,submit,1,B,10.02,100,I\n"
        "000002,20030102,093001,submit,1,B,10.02,100,I\n");
    EXPECT_EQ(r.accepted, 2u);
}

TEST(Parse, DateRegressionAcrossDaysIsFatal) {
    EXPECT_THROW(parse_text("000001,20030103,093001,submit,1,B,10.02,100,I\n"
                            "000001,20030102,093001,submit,2,B,10.02,100,I\n"),
                 std::runtime_error);
}

TEST(Parse, RecordLevelRejectionsDoNotStopProcessing) {
    ParseResult r = parse_text(
        "000001,20030102,093001,submit,1,B,10.02,100,I\n"
        "000001,20030102,093002,submit,2,X,10.02,100,I\n"     // bad side
        "000001,20030102,093003,submit,3,B,10.02,100,Q\n"     // bad investor
        "000001,20030102,093004,submit,4,B,abc,100,I\n"       // bad price
        "000001,20030102,093005,submit,1,B,10.02,100,I\n"     // duplicate id
        "000001,20030102,093006,submit,5,B,10.02,0,I\n"       // zero size
        "000001,20030102,093007,submit,6,B,10.02,200,I\n");
    EXPECT_EQ(r.accepted, 2u);
    EXPECT_EQ(r.rejected, 5u);
}

TEST(Parse, PriceParsingIsExactToFourDecimals) {
    ParseResult r = parse_text(
        "000001,20030102,093001,submit,1,B,10.02,100,I\n"
        "000001,20030102,093002,submit,2,B,0.0001,100,I\n"
        "000001,20030102,093003,submit,3,B,123.4567,100,I\n");
    ASSERT_EQ(r.accepted, 3u);
    EXPECT_EQ(r.events[0].price, 100200);
    EXPECT_EQ(r.events[1].price, 1);
    EXPECT_EQ(r.events[2].price, 1234567);
    EXPECT_EQ(format_price(r.events[0].price), "10.02");
    EXPECT_EQ(format_price(r.events[2].price), "123.4567");
}

TEST(Parse, SplitTableParsesAndValidates) {
    std::istringstream in(
        "stock_id,effective_date,factor\n"
        "000001,20030610,2.0\n"
        "000001,20030301,1.5\n");
    SplitTable table = parse_split_table(in);
    ASSERT_EQ(table["000001"].size(), 2u);
    EXPECT_EQ(table["000001"][0].effective_date, 20030301);  // sorted
    EXPECT_DOUBLE_EQ(table["000001"][1].factor, 2.0);

    std::istringstream bad(
        "stock_id,effective_date,factor\n"
        "000001,20030610,0\n");
    EXPECT_THROW(parse_split_table(bad), std::runtime_error);

    std::istringstream neg(
        "stock_id,effective_date,factor\n"
        "000001,20030610,-2\n");
    EXPECT_THROW(parse_split_table(neg), std::runtime_error);
}

TEST(Parse, TimeWithMillisecondsRoundTrips) {
    EXPECT_EQ(format_time_ms(test::hms(9, 30, 1)), "093001");
    EXPECT_EQ(format_time_ms(test::hms(13, 5, 59, 250)), "130559.250");
}
