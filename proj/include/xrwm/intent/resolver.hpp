#pragma once

#include <string>

#include "xrwm/intent/prompt.hpp"

namespace xrwm {

/// Turns a prompt into raw reply text that should parse as an ActionPlan.
class ResolverBackend {
 public:
  virtual ~ResolverBackend() = default;
  virtual std::string resolve(const PromptDocument& prompt) = 0;
  virtual std::string name() const = 0;
};

}  // namespace xrwm
