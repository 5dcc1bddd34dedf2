#pragma once

#include <string>

namespace decmon {

// Three-valued verdict domain. Unknown means "no finite extension of what has
// been seen so far is forced either way yet".
enum class Verdict { Unknown, Top, Bottom };

inline bool definitive(Verdict v) { return v != Verdict::Unknown; }

// UTF-8 rendering used in transcripts and human-facing reports.
inline const char* verdict_symbol(Verdict v) {
  switch (v) {
    case Verdict::Top: return "⊤";
    case Verdict::Bottom: return "⊥";
    default: return "?";
  }
}

// ASCII rendering used in CSV and machine-facing output.
inline const char* verdict_word(Verdict v) {
  switch (v) {
    case Verdict::Top: return "top";
    case Verdict::Bottom: return "bottom";
    default: return "unknown";
  }
}

}  // namespace decmon
