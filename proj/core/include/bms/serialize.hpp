#pragma once

// CSV transcripts and JSON summaries. Floats use 17 significant digits and
// lines end in LF, so identical games produce identical bytes.

#include <string>

#include "bms/arena.hpp"

namespace bms {

std::string transcript_csv(const GameTranscript& t);

/// elapsed_ms is written as null unless include_timing is set.
std::string summary_json(const GameTranscript& t, bool include_timing = false);

}  // namespace bms
