#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "xrwm/error.hpp"

namespace xrwm {

enum class LabelOrigin { automatic, manual };

/// Closed label vocabulary: the ten classes the headset scene API emits,
/// followed by the thirty manual extension classes. Order is significant; it
/// breaks majority-vote ties during surface extraction.
inline constexpr std::array<std::string_view, 40> kVocabulary = {
    "wall", "floor", "cabinet", "bed", "chair", "sofa", "table", "door", "window", "bookshelf",
    // manual extension
    "picture", "counter", "blinds", "desk", "shelves", "curtain", "dresser", "pillow", "mirror",
    "floor mat", "clothes", "ceiling", "books", "refrigerator", "television", "paper", "towel",
    "shower", "box", "whiteboard", "person", "nightstand", "toilet", "sink", "lamp", "bathtub",
    "bag", "other structure", "other furniture", "other prop"};

inline constexpr std::size_t kAutomaticLabelCount = 10;

/// Lower-cases and folds '_' / '-' / repeated whitespace to a single space.
inline std::string normalize_label_text(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (char c : raw) {
    if (c == '_' || c == '-' || std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

inline std::optional<std::size_t> vocabulary_index(std::string_view raw) {
  const std::string key = normalize_label_text(raw);
  auto it = std::find(kVocabulary.begin(), kVocabulary.end(), key);
  if (it == kVocabulary.end()) return std::nullopt;
  return static_cast<std::size_t>(it - kVocabulary.begin());
}

class SemanticLabel {
 public:
  /// Parses a label name case-insensitively. Names in the automatic set get
  /// origin=automatic unless `origin` forces manual.
  static SemanticLabel parse(std::string_view raw, std::optional<LabelOrigin> origin = std::nullopt) {
    auto idx = vocabulary_index(raw);
    if (!idx) throw Error(ErrorKind::LabelError, "label '" + std::string(raw) + "' is not in the vocabulary");
    LabelOrigin o = *idx < kAutomaticLabelCount ? LabelOrigin::automatic : LabelOrigin::manual;
    if (origin == LabelOrigin::manual) o = LabelOrigin::manual;
    if (origin == LabelOrigin::automatic && *idx >= kAutomaticLabelCount)
      throw Error(ErrorKind::LabelError, "label '" + std::string(raw) + "' cannot have automatic origin");
    return SemanticLabel(*idx, o);
  }

  std::string_view name() const { return kVocabulary[index_]; }
  std::size_t vocabulary_order() const { return index_; }
  LabelOrigin origin() const { return origin_; }

  friend bool operator==(const SemanticLabel&, const SemanticLabel&) = default;

 private:
  SemanticLabel(std::size_t index, LabelOrigin origin) : index_(index), origin_(origin) {}

  std::size_t index_;
  LabelOrigin origin_;
};

}  // namespace xrwm
