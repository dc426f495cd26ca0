#pragma once

// Umbrella header: rule-based morphological analysis for Algerian dialect
// written in Latin script (Arabizi).

#include "cli.hpp"       // IWYU pragma: export
#include "corpus.hpp"    // IWYU pragma: export
#include "csv.hpp"       // IWYU pragma: export
#include "lexicon.hpp"   // IWYU pragma: export
#include "morphology.hpp"  // IWYU pragma: export
#include "normalizer.hpp"  // IWYU pragma: export
#include "text.hpp"      // IWYU pragma: export
