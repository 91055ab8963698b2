#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rotoblur/config_io.hpp"
#include "rotoblur/error.hpp"
#include "rotoblur/text_format.hpp"
#include "rotoblur/trace_io.hpp"

namespace rotoblur {
namespace {

const std::string kHeader{kTraceHeader};

Error parse_error(std::string_view text) {
  try {
    parse_trace(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected parse failure";
  return Error(ErrorCode::kIo, "");
}

TEST(ParseTrace, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(parse_trace(kHeader + "\n").samples.empty());
  EXPECT_TRUE(parse_trace(kHeader).samples.empty());
}

TEST(ParseTrace, TwoRows) {
  const auto t = parse_trace(kHeader + "\n0,0.5,0,0,0,0\n10000,1.0,0,0,0,0\n");
  ASSERT_EQ(t.samples.size(), 2u);
  EXPECT_EQ(t.samples[1].t_us - t.samples[0].t_us, 10'000);
  EXPECT_EQ(t.samples[0].ctrl_yaw_delta_deg, 0.5);
  EXPECT_EQ(t.samples[1].ctrl_yaw_delta_deg, 1.0);
}

TEST(ParseTrace, MetaLinesAndCrlf) {
  const auto t = parse_trace("# source=demo\r\n# frame_rate_hz=90\r\n" + kHeader + "\r\n0,1,2,3,4,5\r\n");
  EXPECT_EQ(t.meta.at("source"), "demo");
  EXPECT_EQ(t.meta.at("frame_rate_hz"), "90");
  ASSERT_EQ(t.samples.size(), 1u);
  EXPECT_EQ(t.samples[0].head_roll_delta_deg, 5.0);
}

TEST(ParseTrace, RepeatedTimestampReportsLine) {
  const auto e = parse_error(kHeader + "\n10000,0,0,0,0,0\n10000,0,0,0,0,0\n");
  EXPECT_EQ(e.code(), ErrorCode::kNonMonotonicTime);
  EXPECT_EQ(e.line(), 3u);
}

TEST(ParseTrace, Errors) {
  EXPECT_EQ(parse_error("t_us,yaw\n0,0\n").code(), ErrorCode::kMalformedHeader);
  EXPECT_EQ(parse_error("").code(), ErrorCode::kMalformedHeader);
  EXPECT_EQ(parse_error(kHeader + "\n0,abc,0,0,0,0\n").code(), ErrorCode::kNonNumericField);
  EXPECT_EQ(parse_error(kHeader + "\n0.5,0,0,0,0,0\n").code(), ErrorCode::kNonNumericField);
  EXPECT_EQ(parse_error(kHeader + "\n0,0,0,0,0\n").code(), ErrorCode::kMalformedRow);
  EXPECT_EQ(parse_error(kHeader + "\n0,nan,0,0,0,0\n").code(), ErrorCode::kNonFiniteInput);
  const auto e = parse_error(kHeader + "\n0,0,0,0,0,0\n10,0,x,0,0,0\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_NE(std::string(e.what()).find("ctrl_pitch_delta_deg"), std::string::npos);
}

TEST(TraceRoundTrip, RandomTraces) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> wide(-1e6, 1e6);
  for (int i = 0; i < 50; ++i) {
    Trace t = testing::random_trace(rng, 200);
    t.meta["seed"] = std::to_string(i);
    // Awkward doubles: subnormals, large magnitudes, negative zero.
    t.samples[1].ctrl_pitch_delta_deg = 4.9e-324;
    t.samples[2].head_pitch_delta_deg = -0.0;
    t.samples[3].ctrl_yaw_delta_deg = wide(rng) * 1e-300;
    t.samples[4].head_roll_delta_deg = 0.1 + 0.2;
    const auto back = parse_trace(write_trace(t));
    EXPECT_EQ(back, t);
    EXPECT_EQ(write_trace(back), write_trace(t));
  }
}

TEST(SigmaSeriesIo, EmptySeriesIsHeaderOnly) {
  SigmaSeries s;
  s.config_fingerprint = 0xabcdef;
  const auto text = write_sigma_series(s);
  EXPECT_EQ(text, "# config_fingerprint=0000000000abcdef\n" + std::string(kSigmaHeader) + "\n");
  EXPECT_EQ(parse_sigma_series(text), s);
}

TEST(SigmaSeriesIo, RoundTripOfReplay) {
  std::mt19937_64 rng(8);
  const auto series = replay(testing::random_trace(rng, 500), ControllerConfig{});
  EXPECT_EQ(parse_sigma_series(write_sigma_series(series)), series);
}

TEST(SigmaSeriesIo, FiveFrameActivationPhaseColumn) {
  const auto text = write_sigma_series(replay(testing::velocity_step_trace(40.0, 8), ControllerConfig{}));
  const auto lines = split_lines(text);
  ASSERT_GE(lines.size(), 9u);
  auto phase_of = [&](std::size_t frame) {
    // Skip fingerprint + header lines.
    const auto& row = lines[frame + 2];
    const auto a = row.find(',');
    const auto b = row.find(',', a + 1);
    return row.substr(b + 1, row.find(',', b + 1) - b - 1);
  };
  EXPECT_EQ(phase_of(0), "Idle");
  for (std::size_t f = 1; f <= 4; ++f) EXPECT_EQ(phase_of(f), "Pending") << f;
  for (std::size_t f = 5; f <= 8; ++f) EXPECT_EQ(phase_of(f), "Active") << f;
}

TEST(SigmaSeriesIo, RejectsUnknownPhase) {
  const std::string text = std::string(kSigmaHeader) + "\n0,0,Sleeping,0,0\n";
  EXPECT_THROW(parse_sigma_series(text), Error);
}

TEST(Replay, AllZeroAndHeadOnlyTracesNeverBlur) {
  Trace zeros;
  Trace head;
  for (int i = 0; i < 300; ++i) {
    zeros.samples.push_back(InputSample{i * 11'111, 0, 0, 0, 0, 0});
    head.samples.push_back(InputSample{i * 11'111, 0, 0, 40.0 * std::sin(i * 0.2), 15.0, -7.0});
  }
  for (const auto* t : {&zeros, &head}) {
    for (const auto& f : replay(*t, ControllerConfig{}).frames) EXPECT_EQ(f.sigma_px, 0.0);
  }
}

TEST(Replay, DeterministicBytes) {
  std::mt19937_64 rng(1234);
  const auto trace = testing::random_trace(rng, 1000);
  EXPECT_EQ(write_sigma_series(replay(trace, ControllerConfig{})),
            write_sigma_series(replay(trace, ControllerConfig{})));
}

TEST(Replay, PropagatesControllerErrors) {
  ControllerConfig bad;
  bad.ema_alpha = 0.0;
  EXPECT_THROW(replay(testing::velocity_step_trace(10, 3), bad), Error);
}

TEST(ConfigFingerprint, ChangesWithEveryField) {
  const ControllerConfig base;
  const auto fp = config_fingerprint(base);
  EXPECT_EQ(fp, config_fingerprint(ControllerConfig{}));
  std::vector<ControllerConfig> variants(10, base);
  variants[0].a_min_deg_s2 += 1;
  variants[1].activation_frames += 1;
  variants[2].gain_px_per_deg_s2 *= 2;
  variants[3].sigma_max_px += 0.5;
  variants[4].ema_alpha = 0.75;
  variants[5].attack_tau_s *= 1.0000001;
  variants[6].release_tau_s += 0.1;
  variants[7].v_stop_deg_s += 1;
  variants[8].sigma_eps_px = 0.01;
  variants[9].deg_per_count = 0.044;
  for (std::size_t i = 0; i < variants.size(); ++i) EXPECT_NE(config_fingerprint(variants[i]), fp) << i;
  EXPECT_EQ(replay(testing::velocity_step_trace(1, 1), base).config_fingerprint, fp);
}

TEST(Events, RoundTripAndValidation) {
  const std::vector<SessionEvent> events{
      {0, SessionEventKind::kRbToggled, "1"},
      {120'000'000, SessionEventKind::kFmsPrompt, "1"},
      {123'500'000, SessionEventKind::kFmsResponse, "3"},
      {240'000'000, SessionEventKind::kFmsPrompt, "2"},
      {270'000'000, SessionEventKind::kFmsTimeout, ""},
  };
  const auto text = write_events(events);
  EXPECT_EQ(text.substr(0, text.find('\n')), kEventsHeader);
  EXPECT_EQ(parse_events(text), events);
  EXPECT_TRUE(parse_events(std::string(kEventsHeader) + "\n").empty());
  EXPECT_THROW(parse_events(std::string(kEventsHeader) + "\n0,explode,1\n"), Error);
  EXPECT_THROW(parse_events(std::string(kEventsHeader) + "\n10,fms_prompt,1\n5,fms_response,2\n"), Error);
}

TEST(CompareSigma, ToleranceAndTimestamps) {
  const auto a = replay(testing::velocity_step_trace(60.0, 50), ControllerConfig{});
  auto b = a;
  EXPECT_TRUE(compare_sigma(a, b, 1e-5).within_tolerance);
  b.frames[20].sigma_px += 2e-5;
  auto cmp = compare_sigma(a, b, 1e-5);
  EXPECT_FALSE(cmp.within_tolerance);
  EXPECT_EQ(cmp.first_mismatch, 20u);
  EXPECT_NEAR(cmp.max_abs_diff, 2e-5, 1e-12);
  b = a;
  b.frames.pop_back();
  EXPECT_FALSE(compare_sigma(a, b, 1e-5).within_tolerance);
}

TEST(ConfigIo, ParseDefaultsUnknownKeysAndTypes) {
  EXPECT_EQ(parse_config("{}"), ControllerConfig{});
  const auto c = parse_config(R"({"a_min_deg_s2": 150, "activation_frames": 3, "ema_alpha": 1})");
  EXPECT_EQ(c.a_min_deg_s2, 150.0);
  EXPECT_EQ(c.activation_frames, 3);
  EXPECT_EQ(c.ema_alpha, 1.0);
  EXPECT_EQ(parse_config(write_config(c)), c);
  for (const char* bad : {R"({"a_min": 150})", R"({"ema_alpha": 0})", R"({"activation_frames": 2.5})",
                          R"({"sigma_max_px": "8"})", "[1,2]", "{not json"}) {
    try {
      parse_config(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig) << bad;
    }
  }
}

}  // namespace
}  // namespace rotoblur
