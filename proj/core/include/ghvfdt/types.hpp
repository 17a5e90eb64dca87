#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace ghvfdt {

/// Binary class label. Negative is the majority (uninteresting, -1) class,
/// Positive the rare class of interest (+1).
enum class ClassLabel : std::uint8_t { Negative = 0, Positive = 1 };

inline constexpr std::size_t kNumClasses = 2;

constexpr std::size_t class_index(ClassLabel c) noexcept {
    return static_cast<std::size_t>(c);
}

constexpr int to_signed(ClassLabel c) noexcept {
    return c == ClassLabel::Positive ? 1 : -1;
}

constexpr std::string_view to_string(ClassLabel c) noexcept {
    return c == ClassLabel::Positive ? "positive" : "negative";
}

/// A label as seen by the learner. std::nullopt marks an unlabeled instance;
/// those are classified but never used for training.
using ObservedLabel = std::optional<ClassLabel>;

/// One stream instance.
struct StreamRecord {
    std::vector<double> features;
    ClassLabel truth = ClassLabel::Negative;
    ObservedLabel observed;

    bool labeled() const noexcept { return observed.has_value(); }

    friend bool operator==(const StreamRecord&, const StreamRecord&) = default;
};

} // namespace ghvfdt
