#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "driftvec/glove.hpp"

namespace driftvec {

// How the second model starts from the first: shared words in both vocabs
// carry model1's parameters over, C2-only words are freshly initialized,
// C1-only words are dropped.
struct AlignmentPlan {
    std::vector<std::string> shared;   // vocab(C1) intersect vocab(C2)
    std::vector<std::string> only_c1;  // dropped
    std::vector<std::string> only_c2;  // freshly initialized
    std::uint64_t seed = 0;
};

// Partitions the two vocabularies; word lists come out in vocab2 id order
// (only_c1 in vocab1 order). Throws DataError when no word is shared.
AlignmentPlan plan_alignment(const Vocabulary& vocab1, const Vocabulary& vocab2,
                             std::uint64_t seed = 0);

enum class CopyMode {
    Full,         // copy u, v and biases (full-model initialization)
    VectorsOnly,  // copy only the center vectors v; u and biases stay random
};

CopyMode parse_copy_mode(const std::string& name);  // "full|vectors"
std::string copy_mode_name(CopyMode mode);

struct AlignOptions {
    CopyMode copy_mode = CopyMode::Full;
    // AdaGrad accumulators are reset to 1 by default; copying them is an
    // ablation that suppresses early updates in the second stage.
    bool copy_adagrad = false;
};

// Builds the t2 starting model over vocab2: shared words copy from model1
// per options, new words draw init_random values from config.seed. model1 is
// never modified. Throws DataError on dimension or bias-layout mismatch.
EmbeddingModel init_from_model(const EmbeddingModel& model1,
                               std::shared_ptr<const Vocabulary> vocab2,
                               const TrainConfig& config,
                               const AlignOptions& options = {});

struct ViResult {
    std::shared_ptr<const Vocabulary> vocab1, vocab2;
    EmbeddingModel model1, model2;
    TrainResult trace1, trace2;
    AlignmentPlan plan;
    bool matrix1_empty = false;  // co-occurrence warnings for the manifest
    bool matrix2_empty = false;
};

// Full vector-initialization pipeline: train on C1 from random, then train
// on C2 from the aligned copy. second_stage_epochs overrides config.epochs
// for the C2 stage when set.
ViResult vi_pipeline(const Corpus& corpus1, const Corpus& corpus2, std::int32_t window,
                     std::int64_t min_count, const TrainConfig& config,
                     const AlignOptions& options = {},
                     std::optional<std::int32_t> second_stage_epochs = std::nullopt);

}  // namespace driftvec
