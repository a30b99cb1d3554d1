#pragma once

#include <cstdint>
#include <string>

#include "metasel/meta_dataset.hpp"

namespace metasel {

// Synthetic corpus in which the truly-best algorithm is a function of the
// title-length band, one band per base algorithm. Writes corpus.jsonl,
// judgments.csv and regimes.json (the planted ground truth) into `dir`.
//
//   band A, ~3-4 words:  short generic titles, topical abstracts
//                        -> term-vector query over title+abstract
//   band B, ~10-11 words: topical titles, junk-polluted abstracts
//                        -> term-vector query over title
//   band C, ~16 words:   title token recoverable only via sibling abstracts
//                        -> standard query over title+abstract
//   band D, ~30 words:   rare junk tokens overflow the term-vector cap
//                        -> standard query over title
struct PlantedCorpusSpec {
    int researchers_per_regime = 7;
    int docs_per_researcher = 6;
};

void write_planted_corpus(const std::string& dir, const PlantedCorpusSpec& spec = {});

std::string planted_truth_note();

// Expected best algorithm for a planted-corpus instance, by title word band.
int planted_best_class(int title_words);

// Synthetic meta-dataset whose label is a threshold rule on
// (collection_id, title_chars): collection CA splits at 60 chars into
// classes 0/1, collection CB into classes 2/3. A margin band around the
// threshold is left empty. Scores are degenerate (best algorithm F1 1,
// others 0).
MetaDataset planted_rule_meta(uint64_t seed, int n);

// Random instances with valid labels (best = argmax F1 under the tie-break
// order); used for fuzzing evaluation invariants.
MetaDataset fuzz_meta(uint64_t seed, int n);

}  // namespace metasel
