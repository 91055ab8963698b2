#include "rotoblur/trace_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rotoblur/error.hpp"
#include "rotoblur/text_format.hpp"

namespace rotoblur {

namespace {

struct CsvBody {
  std::map<std::string, std::string> meta;
  std::vector<std::string_view> rows;
  std::size_t first_row_line = 0;
};

// Splits off `# key=value` meta lines and checks the header.
CsvBody split_body(std::string_view text, std::string_view header) {
  const auto lines = split_lines(text);
  CsvBody body;
  std::size_t i = 0;
  for (; i < lines.size() && !lines[i].empty() && lines[i].front() == '#'; ++i) {
    std::string_view entry = lines[i].substr(1);
    while (!entry.empty() && entry.front() == ' ') entry.remove_prefix(1);
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedHeader, "meta line must be `# key=value`", i + 1);
    }
    body.meta.emplace(std::string(entry.substr(0, eq)), std::string(entry.substr(eq + 1)));
  }
  if (i >= lines.size()) throw Error(ErrorCode::kMalformedHeader, "missing header", i + 1);
  if (lines[i] != header) {
    throw Error(ErrorCode::kMalformedHeader, "expected `" + std::string(header) + "`", i + 1);
  }
  body.first_row_line = i + 2;
  body.rows.assign(lines.begin() + static_cast<std::ptrdiff_t>(i) + 1, lines.end());
  return body;
}

std::vector<std::string_view> row_fields(std::string_view row, std::size_t expected,
                                         std::size_t line) {
  auto fields = split_fields(row);
  if (fields.size() != expected) {
    throw Error(ErrorCode::kMalformedRow,
                "expected " + std::to_string(expected) + " fields, got " +
                    std::to_string(fields.size()),
                line);
  }
  return fields;
}

std::int64_t field_int(std::string_view field, const char* name, std::size_t line) {
  const auto v = parse_int(field);
  if (!v) throw Error(ErrorCode::kNonNumericField, std::string(name) + " is not an integer", line);
  return *v;
}

double field_double(std::string_view field, const char* name, std::size_t line) {
  const auto v = parse_double(field);
  if (!v) throw Error(ErrorCode::kNonNumericField, std::string(name) + " is not a number", line);
  if (!std::isfinite(*v)) {
    throw Error(ErrorCode::kNonFiniteInput, std::string(name) + " is not finite", line);
  }
  return *v;
}

void write_meta(std::string& out, const std::map<std::string, std::string>& meta) {
  for (const auto& [key, value] : meta) out += "# " + key + "=" + value + "\n";
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fp);
  return buf;
}

constexpr const char* kFingerprintKey = "config_fingerprint";

}  // namespace

Trace parse_trace(std::string_view text) {
  auto body = split_body(text, kTraceHeader);
  Trace trace;
  trace.meta = std::move(body.meta);
  trace.samples.reserve(body.rows.size());
  for (std::size_t r = 0; r < body.rows.size(); ++r) {
    const std::size_t line = body.first_row_line + r;
    const auto f = row_fields(body.rows[r], 6, line);
    InputSample s;
    s.t_us = field_int(f[0], "t_us", line);
    s.ctrl_yaw_delta_deg = field_double(f[1], "ctrl_yaw_delta_deg", line);
    s.ctrl_pitch_delta_deg = field_double(f[2], "ctrl_pitch_delta_deg", line);
    s.head_yaw_delta_deg = field_double(f[3], "head_yaw_delta_deg", line);
    s.head_pitch_delta_deg = field_double(f[4], "head_pitch_delta_deg", line);
    s.head_roll_delta_deg = field_double(f[5], "head_roll_delta_deg", line);
    if (!trace.samples.empty() && s.t_us <= trace.samples.back().t_us) {
      throw Error(ErrorCode::kNonMonotonicTime,
                  "t_us " + std::to_string(s.t_us) + " does not exceed previous " +
                      std::to_string(trace.samples.back().t_us),
                  line);
    }
    trace.samples.push_back(s);
  }
  return trace;
}

std::string write_trace(const Trace& trace) {
  std::string out;
  write_meta(out, trace.meta);
  out += kTraceHeader;
  out += '\n';
  for (const auto& s : trace.samples) {
    out += std::to_string(s.t_us);
    for (double v : {s.ctrl_yaw_delta_deg, s.ctrl_pitch_delta_deg, s.head_yaw_delta_deg,
                     s.head_pitch_delta_deg, s.head_roll_delta_deg}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

SigmaSeries parse_sigma_series(std::string_view text) {
  auto body = split_body(text, kSigmaHeader);
  SigmaSeries series;
  if (auto it = body.meta.find(kFingerprintKey); it != body.meta.end()) {
    char* end = nullptr;
    series.config_fingerprint = std::strtoull(it->second.c_str(), &end, 16);
    if (it->second.empty() || *end != '\0') {
      throw Error(ErrorCode::kMalformedHeader, "bad config_fingerprint", 1);
    }
  }
  for (std::size_t r = 0; r < body.rows.size(); ++r) {
    const std::size_t line = body.first_row_line + r;
    const auto f = row_fields(body.rows[r], 5, line);
    BlurFrameOutput o;
    o.t_us = field_int(f[0], "t_us", line);
    o.sigma_px = field_double(f[1], "sigma_px", line);
    if (!parse_phase(f[2], o.phase)) {
      throw Error(ErrorCode::kMalformedRow, "unknown phase `" + std::string(f[2]) + "`", line);
    }
    o.v_deg_s = field_double(f[3], "v_deg_s", line);
    o.a_deg_s2 = field_double(f[4], "a_deg_s2", line);
    if (!series.frames.empty() && o.t_us <= series.frames.back().t_us) {
      throw Error(ErrorCode::kNonMonotonicTime, "sigma rows out of order", line);
    }
    series.frames.push_back(o);
  }
  return series;
}

std::string write_sigma_series(const SigmaSeries& series) {
  std::string out = "# ";
  out += kFingerprintKey;
  out += "=" + fingerprint_hex(series.config_fingerprint) + "\n";
  out += kSigmaHeader;
  out += '\n';
  for (const auto& o : series.frames) {
    out += std::to_string(o.t_us) + ',' + format_double(o.sigma_px) + ',';
    out += to_string(o.phase);
    out += ',' + format_double(o.v_deg_s) + ',' + format_double(o.a_deg_s2) + '\n';
  }
  return out;
}

SigmaSeries replay(const Trace& trace, const ControllerConfig& config) {
  BlurController controller(config);
  SigmaSeries series;
  series.config_fingerprint = config_fingerprint(config);
  series.frames.reserve(trace.samples.size());
  for (const auto& sample : trace.samples) series.frames.push_back(controller.update(sample));
  return series;
}

std::uint64_t config_fingerprint(const ControllerConfig& c) {
  std::string canon;
  auto put = [&canon](const char* key, const std::string& value) {
    canon += key;
    canon += '=';
    canon += value;
    canon += '\n';
  };
  put("a_min_deg_s2", format_double(c.a_min_deg_s2));
  put("activation_frames", std::to_string(c.activation_frames));
  put("gain_px_per_deg_s2", format_double(c.gain_px_per_deg_s2));
  put("sigma_max_px", format_double(c.sigma_max_px));
  put("ema_alpha", format_double(c.ema_alpha));
  put("attack_tau_s", format_double(c.attack_tau_s));
  put("release_tau_s", format_double(c.release_tau_s));
  put("v_stop_deg_s", format_double(c.v_stop_deg_s));
  put("sigma_eps_px", format_double(c.sigma_eps_px));
  put("deg_per_count", format_double(c.deg_per_count));

  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string_view to_string(SessionEventKind kind) {
  switch (kind) {
    case SessionEventKind::kRbToggled: return "rb_toggled";
    case SessionEventKind::kFmsPrompt: return "fms_prompt";
    case SessionEventKind::kFmsResponse: return "fms_response";
    case SessionEventKind::kFmsTimeout: return "fms_timeout";
  }
  return "rb_toggled";
}

std::vector<SessionEvent> parse_events(std::string_view text) {
  auto body = split_body(text, kEventsHeader);
  std::vector<SessionEvent> events;
  for (std::size_t r = 0; r < body.rows.size(); ++r) {
    const std::size_t line = body.first_row_line + r;
    const auto f = row_fields(body.rows[r], 3, line);
    SessionEvent e;
    e.t_us = field_int(f[0], "t_us", line);
    bool known = false;
    for (auto k : {SessionEventKind::kRbToggled, SessionEventKind::kFmsPrompt,
                   SessionEventKind::kFmsResponse, SessionEventKind::kFmsTimeout}) {
      if (f[1] == to_string(k)) {
        e.kind = k;
        known = true;
      }
    }
    if (!known) {
      throw Error(ErrorCode::kMalformedRow, "unknown event `" + std::string(f[1]) + "`", line);
    }
    e.value = std::string(f[2]);
    if (!events.empty() && e.t_us < events.back().t_us) {
      throw Error(ErrorCode::kNonMonotonicTime, "events out of order", line);
    }
    events.push_back(std::move(e));
  }
  return events;
}

std::string write_events(const std::vector<SessionEvent>& events) {
  std::string out{kEventsHeader};
  out += '\n';
  for (const auto& e : events) {
    out += std::to_string(e.t_us) + ',';
    out += to_string(e.kind);
    out += ',' + e.value + '\n';
  }
  return out;
}

SigmaComparison compare_sigma(const SigmaSeries& replayed, const SigmaSeries& recorded,
                              double tolerance_px) {
  SigmaComparison cmp;
  cmp.frames = std::min(replayed.frames.size(), recorded.frames.size());
  cmp.first_mismatch = cmp.frames;
  cmp.timestamps_match = replayed.frames.size() == recorded.frames.size();
  for (std::size_t i = 0; i < cmp.frames; ++i) {
    const auto& a = replayed.frames[i];
    const auto& b = recorded.frames[i];
    if (a.t_us != b.t_us) cmp.timestamps_match = false;
    const double diff = std::abs(a.sigma_px - b.sigma_px);
    cmp.max_abs_diff = std::max(cmp.max_abs_diff, diff);
    if (diff > tolerance_px && cmp.first_mismatch == cmp.frames) cmp.first_mismatch = i;
  }
  cmp.within_tolerance = cmp.timestamps_match && cmp.first_mismatch == cmp.frames;
  return cmp;
}

}  // namespace rotoblur
