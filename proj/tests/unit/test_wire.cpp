#include <gtest/gtest.h>

#include "emosim/net/wire.hpp"
#include "emosim/resolution.hpp"
#include "random_messages.hpp"

using namespace emosim;
using namespace emosim::net;

TEST(Resolution, SixDecimals) {
  EXPECT_EQ(format_real(0.5), "0.500000");
  EXPECT_EQ(format_real(-1.0), "-1.000000");
  EXPECT_EQ(format_real(1234.5678916), "1234.567892");
  EXPECT_EQ(quantize(0.1234564), 0.123456);
  EXPECT_EQ(quantize(quantize(0.7777777)), quantize(0.7777777));
  EXPECT_THROW(format_real(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST(Resolution, QuantizeIsIdempotentAndClose) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng);
    const double q = quantize(x);
    EXPECT_LE(std::abs(q - x), 5e-7 + 1e-15);
    EXPECT_EQ(quantize(q), q);
  }
}

TEST(Codec, ExactLines) {
  EXPECT_EQ(encode(Register{Role::Agent, "bot3"}), "REG agent bot3\n");
  EXPECT_EQ(encode(Welcome{4, 0.1}), "WEL 4 0.100000\n");
  EXPECT_EQ(encode(Motors{12, {0.5, -0.25}}), "MOT 12 0.500000 -0.250000\n");
  EXPECT_EQ(encode(Status{3, {0.1, -0.2, 0.3}, 0.7, 1.1}),
            "STA 3 0.100000 -0.200000 0.300000 0.700000 1.100000\n");
  EXPECT_EQ(encode(Finish{99}), "FIN 99\n");
  EXPECT_EQ(encode(Error{"full", "team complete"}), "ERR full team complete\n");
  SensorReadings r;
  r.front = 0.5;
  r.vision.push_back({0.25, 2.0, EmotionLabel::Docile});
  EXPECT_EQ(encode(Sensors{7, r}),
            "SEN 7 0.500000 1.000000 1.000000 - 0.000000 0 0 1 0.250000 2.000000 Docile\n");
  ViewFrame v{5, {{2, {1.0, 2.0}, 0.5, EmotionLabel::Hostile, {-1.0, 2.0, 3.0}, true}}};
  EXPECT_EQ(encode(v),
            "VIEW 5 1 2 1.000000 2.000000 0.500000 Hostile -1.000000 2.000000 3.000000 1\n");
}

TEST(Codec, DecodeWithoutNewline) {
  EXPECT_EQ(decode("MOT 1 0.100000 0.200000"), WireMessage(Motors{1, {0.1, 0.2}}));
  EXPECT_EQ(decode("ERR protocol"), WireMessage(Error{"protocol", ""}));
}

TEST(Codec, RandomRoundTrip) {
  emosim::testing::MessageGenerator gen(2024);
  for (int i = 0; i < 10000; ++i) {
    const auto m = gen.next();
    const auto line = encode(m);
    ASSERT_EQ(line.back(), '\n');
    ASSERT_EQ(line.find('\n'), line.size() - 1);
    const auto back = decode(line);
    ASSERT_EQ(back, m) << line;
    ASSERT_EQ(encode(back), line);
  }
}

TEST(Codec, MalformedLinesAreParseErrors) {
  for (const char* bad : {
           "", "HELLO", "REG", "REG robot x", "REG agent", "REG agent a b", "WEL 1",
           "WEL -1 0.100000", "WEL 1 0.1", "MOT 1 0.5 0.5", "MOT 1 0.500000",
           "MOT 01 0.500000 0.500000", "MOT 1 0.500000 0.500000 x", "MOT  1 0.500000 0.500000",
           "MOT 1 +0.500000 0.500000", "MOT 1 .500000 0.500000", "MOT 1 00.500000 0.500000",
           "STA 1 0.000000 0.000000 0.000000 1.000000",
           "SEN 1 1.000000 1.000000 1.000000 - 0.000000 0 0 1",
           "SEN 1 1.000000 1.000000 1.000000 - 0.000000 2 0 0",
           "SEN 1 1.000000 1.000000 1.000000 x 0.000000 0 0 0",
           "SEN 1 1.000000 1.000000 1.000000 - 0.000000 0 0 1 0.100000 1.000000 Sad",
           "VIEW 1 1 0 1.000000 1.000000 0.000000 Bored 0.000000 0.000000 0.000000",
           "VIEW 1 0 extra", "FIN", "FIN x", "ERR", "MOT 1 0.5000000 0.500000",
           "FIN 1\nFIN 2", "MOT 99999999999999999999 0.500000 0.500000"}) {
    EXPECT_TRUE(is_parse_error(decode(bad))) << '"' << bad << '"';
  }
}

TEST(Codec, EncodeRejectsUnframeableFields) {
  EXPECT_THROW(encode(Register{Role::Agent, "two words"}), std::invalid_argument);
  EXPECT_THROW(encode(Register{Role::Agent, ""}), std::invalid_argument);
  EXPECT_THROW(encode(Error{"x", "a\nb"}), std::invalid_argument);
  EXPECT_THROW(encode(Motors{1, {std::nan(""), 0}}), std::domain_error);
}
