#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "driftvec/corpus.hpp"

namespace driftvec {

// One directed co-occurrence record used during training.
struct CooccurRecord {
    std::int32_t i;  // center word id
    std::int32_t j;  // context word id
    double x;        // inverse-distance-weighted count
};

// Sparse symmetric co-occurrence counts in compressed-row form. Both
// directions of every pair are stored; there are no diagonal entries.
// x accumulates 1/d per pair occurrence at distance d, raw counts the
// occurrences unweighted, so x <= raw and raw >= 1 everywhere.
class CooccurrenceMatrix {
public:
    CooccurrenceMatrix(std::int32_t vocab_size, std::int32_t window,
                       std::vector<std::int64_t> row_start, std::vector<std::int32_t> col,
                       std::vector<double> x, std::vector<std::int64_t> raw);

    std::int32_t vocab_size() const { return vocab_size_; }
    std::int32_t window() const { return window_; }
    std::int64_t entry_count() const { return static_cast<std::int64_t>(col_.size()); }
    bool empty() const { return col_.empty(); }

    // Number of stored entries in row i (distinct context words of i).
    std::int64_t row_size(std::int32_t i) const;
    std::span<const std::int32_t> row_cols(std::int32_t i) const;
    std::span<const double> row_x(std::int32_t i) const;
    std::span<const std::int64_t> row_raw(std::int32_t i) const;

    // Weighted count, or 0 when the pair is absent.
    double x_at(std::int32_t i, std::int32_t j) const;
    std::int64_t raw_at(std::int32_t i, std::int32_t j) const;

    // All directed entries sorted by (i, j).
    std::vector<CooccurRecord> entries_sorted() const;

private:
    void check_row(std::int32_t i) const;

    std::int32_t vocab_size_;
    std::int32_t window_;
    std::vector<std::int64_t> row_start_;  // size V+1
    std::vector<std::int32_t> col_;        // sorted within each row
    std::vector<double> x_;
    std::vector<std::int64_t> raw_;
};

// Scans the corpus with a symmetric window of size L that never crosses line
// boundaries. Out-of-vocabulary tokens occupy positions (they count toward
// distance) but produce no pairs; same-word pairs are dropped. Each in-window
// pair at distance d adds 1/d to x and 1 to raw in both directions.
// An empty result is not an error; callers surface it as a warning.
CooccurrenceMatrix build_cooccurrence(const Corpus& corpus, const Vocabulary& vocab,
                                      std::int32_t window, int workers = 1);

// Deterministic permutation of all directed entries for a given seed.
std::vector<CooccurRecord> shuffle_records(const CooccurrenceMatrix& matrix,
                                           std::uint64_t seed);

// Per-epoch GloVe updates of word_id's vector: its number of distinct context
// words. Bounded by V-1.
std::int64_t glove_update_count(const CooccurrenceMatrix& matrix, std::int32_t word_id);

// Per-epoch SGNS-style updates: one per context token, i.e. the raw pair
// total. With a subsampling threshold t, each raw(w,j) is scaled by
// p_keep(w) * p_keep(j), p_keep(u) = min(1, (sqrt(z/t) + 1) * t / z) for
// relative frequency z.
double sgns_update_count(const CooccurrenceMatrix& matrix, std::int32_t word_id,
                         std::optional<double> subsample_threshold,
                         const Vocabulary& vocab);

// "word_i<TAB>word_j<TAB>x<TAB>raw" sorted by (i, j), round-trip precision.
void dump_cooccurrence(const CooccurrenceMatrix& matrix, const Vocabulary& vocab,
                       std::ostream& out);

}  // namespace driftvec
