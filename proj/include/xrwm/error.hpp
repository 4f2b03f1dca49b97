#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace xrwm {

enum class ErrorKind {
  FileNotFound,
  SchemaViolation,
  GeometryError,
  LabelError,
  ParamError,
  DegenerateGeometry,
  ClockError,
  UnknownWindow,
  UnknownSurface,
  MismatchedSurface,
  SurfaceTooSmall,
  MalformedJson,
  UnknownVerb,
  UnresolvedWindow,
  UnresolvedSurface,
  AmbiguousRef,
  NetworkError,
  AuthError,
  ProviderError,
  ConfigError,
  UnknownSession,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::GeometryError: return "GeometryError";
    case ErrorKind::LabelError: return "LabelError";
    case ErrorKind::ParamError: return "ParamError";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::ClockError: return "ClockError";
    case ErrorKind::UnknownWindow: return "UnknownWindow";
    case ErrorKind::UnknownSurface: return "UnknownSurface";
    case ErrorKind::MismatchedSurface: return "MismatchedSurface";
    case ErrorKind::SurfaceTooSmall: return "SurfaceTooSmall";
    case ErrorKind::MalformedJson: return "MalformedJson";
    case ErrorKind::UnknownVerb: return "UnknownVerb";
    case ErrorKind::UnresolvedWindow: return "UnresolvedWindow";
    case ErrorKind::UnresolvedSurface: return "UnresolvedSurface";
    case ErrorKind::AmbiguousRef: return "AmbiguousRef";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::AuthError: return "AuthError";
    case ErrorKind::ProviderError: return "ProviderError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::UnknownSession: return "UnknownSession";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a kind and,
/// where useful, structured details (ambiguity candidates, raw model output).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, nlohmann::json details = nullptr)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message),
        details_(std::move(details)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  const nlohmann::json& details() const noexcept { return details_; }

  nlohmann::json to_json() const {
    nlohmann::json j{{"kind", std::string(to_string(kind_))}, {"message", message_}};
    if (!details_.is_null()) j["details"] = details_;
    return j;
  }

 private:
  ErrorKind kind_;
  std::string message_;
  nlohmann::json details_;
};

}  // namespace xrwm
