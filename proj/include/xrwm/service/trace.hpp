#pragma once

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/service/session.hpp"

namespace xrwm {

enum class TraceKind { head, pointing, request };

struct TraceEntry {
  double t = 0.0;
  TraceKind kind = TraceKind::request;
  nlohmann::json payload;
  std::size_t line = 0;  // 1-based source line of the entry
};

namespace detail {

// 1-based line on which each top-level array element starts.
inline std::vector<std::size_t> top_level_element_lines(std::string_view text) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false, escaped = false, expect_value = false;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (depth == 1 && expect_value && c != ']') {
      lines.push_back(line);
      expect_value = false;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '[':
      case '{':
        if (++depth == 1) expect_value = true;
        break;
      case ']':
      case '}': --depth; break;
      case ',':
        if (depth == 1) expect_value = true;
        break;
      default: break;
    }
  }
  return lines;
}

/// Rounds every floating-point number to `decimals` places so transcripts do
/// not depend on last-ulp differences between platforms.
inline nlohmann::json canonical_floats(const nlohmann::json& j, int decimals = 6) {
  const double scale = std::pow(10.0, decimals);
  if (j.is_number_float()) {
    double v = std::round(j.get<double>() * scale) / scale;
    return v == 0.0 ? 0.0 : v;  // no "-0.0"
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : j) out.push_back(canonical_floats(e, decimals));
    return out;
  }
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, v] : j.items()) out[k] = canonical_floats(v, decimals);
    return out;
  }
  return j;
}

}  // namespace detail

/// Parses a trace: a JSON array of `{t, kind: head|pointing|request, payload}`
/// whose payloads mirror the live API bodies. `t` must be non-decreasing.
inline std::vector<TraceEntry> parse_trace(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, std::string("trace is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::SchemaViolation, "trace must be a JSON array");
  const auto lines = detail::top_level_element_lines(text);
  std::vector<TraceEntry> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    TraceEntry e;
    e.line = i < lines.size() ? lines[i] : 0;
    const std::string where = "trace entry " + std::to_string(i) + " (line " + std::to_string(e.line) + ")";
    if (!j.is_object() || !j.contains("t") || !j["t"].is_number() || !j.contains("kind") || !j["kind"].is_string() ||
        !j.contains("payload"))
      throw Error(ErrorKind::SchemaViolation, where + ": expected {t, kind, payload}");
    e.t = j["t"].get<double>();
    const auto kind = j["kind"].get<std::string>();
    if (kind == "head")
      e.kind = TraceKind::head;
    else if (kind == "pointing")
      e.kind = TraceKind::pointing;
    else if (kind == "request")
      e.kind = TraceKind::request;
    else
      throw Error(ErrorKind::SchemaViolation, where + ": unknown kind '" + kind + "'");
    if (!out.empty() && e.t < out.back().t)
      throw Error(ErrorKind::ClockError, where + ": t=" + std::to_string(e.t) + " precedes t=" +
                                             std::to_string(out.back().t),
                  {{"line", e.line}, {"entry", i}});
    e.payload = j["payload"];
    out.push_back(std::move(e));
  }
  return out;
}

/// Feeds a trace into `session` and returns the transcript: every
/// resolution record plus the final workspace.
inline nlohmann::json replay_trace(const std::vector<TraceEntry>& trace, Session& session, ResolverBackend& backend) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& e : trace) {
    const std::string where = "line " + std::to_string(e.line);
    try {
      switch (e.kind) {
        case TraceKind::head: update_head(session, head_pose_from_json(e.payload, e.t)); break;
        case TraceKind::pointing: add_pointing(session, pointing_event_from_json(e.payload, e.t)); break;
        case TraceKind::request: {
          if (!e.payload.is_object() || !e.payload.contains("text") || !e.payload["text"].is_string())
            throw Error(ErrorKind::SchemaViolation, "request payload needs 'text'");
          handle_request(session, backend, e.payload["text"].get<std::string>(), e.t);
          const auto& rec = std::get<ResolutionRecord>(session.event_log.back().payload);
          auto j = to_json(rec);
          j["generation"] = session.generation;
          records.push_back(std::move(j));
          break;
        }
      }
    } catch (const Error& err) {
      auto details = err.details().is_null() ? nlohmann::json::object() : err.details();
      details["line"] = e.line;
      throw Error(err.kind(), where + ": " + err.message(), details);
    }
  }
  return detail::canonical_floats({{"session_id", session.session_id},
                                   {"backend", backend.name()},
                                   {"records", records},
                                   {"generation", session.generation},
                                   {"final_workspace", to_json(session.workspace)}});
}

inline nlohmann::json replay_trace(std::string_view trace_text, Session& session, ResolverBackend& backend) {
  return replay_trace(parse_trace(trace_text), session, backend);
}

}  // namespace xrwm
