#include "safegate/messaging/compose.hpp"

#include <algorithm>
#include <cctype>

#include "safegate/error.hpp"

namespace safegate::messaging {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

bool contains_word(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return false;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) {
        const bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(haystack[pos - 1]));
        const std::size_t end = pos + needle.size();
        const bool right_ok = end == haystack.size() || !std::isalnum(static_cast<unsigned char>(haystack[end]));
        if (left_ok && right_ok) return true;
    }
    return false;
}

std::string description(const PersonObservation& p) { return join(p.desc_words, ", "); }

std::string positional_clause(const PersonObservation& p) {
    return std::string("Person on the ") + change::to_string(p.position) + " has " + description(p);
}

std::string named_clause(const PersonObservation& p) { return p.name + " has " + description(p); }

std::string unknown_count_phrase(int n, const ComposeOptions& options) {
    return std::to_string(n) + (options.pluralize && n != 1 ? " unknown persons" : " unknown person");
}

std::string known_names(const std::vector<PersonObservation>& people) {
    std::vector<std::string> names;
    for (const auto& p : people) {
        if (p.is_known()) names.push_back(p.name);
    }
    return join(names, " and ");
}

// One trailing sentence built from clauses, or nothing.
std::string clause_sentence(const std::vector<std::string>& clauses) {
    if (clauses.empty()) return {};
    return join(clauses, " and ") + ".";
}

std::string append_sentence(std::string head, const std::string& sentence) {
    if (sentence.empty()) return head;
    return head + " " + sentence;
}

}  // namespace

MessageInput MessageInput::from_observations(std::vector<PersonObservation> observations) {
    MessageInput in;
    for (const auto& p : observations) {
        if (p.is_known()) ++in.known_count; else ++in.unknown_count;
    }
    in.observations = std::move(observations);
    return in;
}

MessageLayout layout_for(int unknown_count, int known_count) {
    if (unknown_count + known_count >= 4) return MessageLayout::Crowd;
    if (unknown_count == 1 && known_count == 0) return MessageLayout::SingleUnknown;
    if (unknown_count >= 2 && known_count == 0) return MessageLayout::UnknownGroup;
    if (unknown_count == 0 && known_count >= 1) return MessageLayout::KnownOnly;
    return MessageLayout::Mixed;
}

bool carries_harmful_item(const PersonObservation& person, const std::vector<std::string>& lexicon) {
    for (const auto& word : person.desc_words) {
        const std::string w = lower(word);
        for (const auto& entry : lexicon) {
            if (contains_word(w, lower(entry))) return true;
        }
    }
    return false;
}

std::string compose_message(const MessageInput& input, const ComposeOptions& options) {
    const int unknown = input.unknown_count;
    const int known = input.known_count;
    if (unknown < 0 || known < 0 || unknown + known < 1) {
        throw InvalidParameter("compose_message: at least one person is required");
    }
    int listed_known = 0;
    for (const auto& p : input.observations) listed_known += p.is_known();
    const int listed_unknown = static_cast<int>(input.observations.size()) - listed_known;
    if (listed_known != known || listed_unknown != unknown) {
        throw InvalidParameter("compose_message: counts do not match the observation list");
    }
    const auto& people = input.observations;

    switch (layout_for(unknown, known)) {
        case MessageLayout::Crowd: {
            const std::string names = known_names(people);
            const std::string head = names.empty() ? unknown_count_phrase(unknown, options) + "."
                                                   : names + " with " + unknown_count_phrase(unknown, options) + ".";
            std::vector<std::string> clauses;
            for (const auto& p : people) {
                if (carries_harmful_item(p, input.harmful_lexicon)) clauses.push_back(positional_clause(p));
            }
            return append_sentence(head, clause_sentence(clauses));
        }
        case MessageLayout::SingleUnknown: {
            const std::string desc = description(people.front());
            return desc.empty() ? std::string("An unknown person.") : "An unknown person with " + desc + ".";
        }
        case MessageLayout::UnknownGroup: {
            std::vector<std::string> clauses;
            for (const auto& p : people) {
                if (!p.desc_words.empty()) clauses.push_back(positional_clause(p));
            }
            return append_sentence(unknown_count_phrase(unknown, options) + ".", clause_sentence(clauses));
        }
        case MessageLayout::KnownOnly: {
            std::vector<std::string> clauses;
            for (const auto& p : people) {
                clauses.push_back(p.desc_words.empty() ? p.name + " is present" : named_clause(p));
            }
            return clause_sentence(clauses);
        }
        case MessageLayout::Mixed: {
            const std::string head = known_names(people) + " with " + unknown_count_phrase(unknown, options) + ".";
            std::vector<std::string> clauses;
            for (const auto& p : people) {
                if (p.desc_words.empty()) continue;
                clauses.push_back(p.is_known() ? named_clause(p) : positional_clause(p));
            }
            return append_sentence(head, clause_sentence(clauses));
        }
    }
    throw InvalidParameter("compose_message: unreachable layout");
}

int count_sentences(const std::string& message) {
    int n = 0;
    for (std::size_t i = 0; i < message.size(); ++i) {
        const char c = message[i];
        if (c != '.' && c != '!' && c != '?') continue;
        if (i + 1 == message.size() || message[i + 1] == ' ') ++n;
    }
    return n;
}

}  // namespace safegate::messaging
