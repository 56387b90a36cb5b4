#pragma once

#include <string>
#include <vector>

#include "safegate/perception/types.hpp"

namespace safegate::messaging {

using perception::PersonObservation;

struct MessageInput {
    std::vector<PersonObservation> observations;
    int unknown_count = 0;
    int known_count = 0;
    std::vector<std::string> harmful_lexicon{"gun", "mask", "baseball bat"};

    /// Counts taken from the observation list.
    [[nodiscard]] static MessageInput from_observations(std::vector<PersonObservation> observations);
};

struct ComposeOptions {
    /// "2 unknown persons" instead of the literal "2 unknown person".
    bool pluralize = false;
};

/// Which layout compose_message picks for the head counts.
enum class MessageLayout {
    Crowd = 0,            // four or more persons: known names plus harmful-item carriers only
    SingleUnknown = 1,    // exactly one unknown
    UnknownGroup = 2,     // two or three unknowns
    KnownOnly = 3,        // only known persons
    Mixed = 4,            // known and unknown, at most three persons
};

[[nodiscard]] MessageLayout layout_for(int unknown_count, int known_count);

/// True if any description word contains a lexicon entry as a whole word (case-insensitive).
[[nodiscard]] bool carries_harmful_item(const PersonObservation& person, const std::vector<std::string>& lexicon);

/// Pre-structured message for the resident. Per-person clauses are joined with " and "
/// inside one sentence so that every message stays within three sentences.
/// Throws InvalidParameter when there are no persons or the counts disagree with the list.
[[nodiscard]] std::string compose_message(const MessageInput& input, const ComposeOptions& options = {});

/// Sentences terminated by '.', '!' or '?'.
[[nodiscard]] int count_sentences(const std::string& message);

inline constexpr const char* kPoorLightingMessage =
    "The lighting condition is poor. Please turn on the external lights.";

}  // namespace safegate::messaging
