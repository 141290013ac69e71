#include "driftvec/align.hpp"

#include <algorithm>

#include "driftvec/error.hpp"

namespace driftvec {

AlignmentPlan plan_alignment(const Vocabulary& vocab1, const Vocabulary& vocab2,
                             std::uint64_t seed) {
    if (vocab1.size() == 0 || vocab2.size() == 0) {
        throw DataError("alignment requires two nonempty vocabularies");
    }
    AlignmentPlan plan;
    plan.seed = seed;
    for (const std::string& word : vocab2.words) {
        if (vocab1.contains(word)) {
            plan.shared.push_back(word);
        } else {
            plan.only_c2.push_back(word);
        }
    }
    for (const std::string& word : vocab1.words) {
        if (!vocab2.contains(word)) plan.only_c1.push_back(word);
    }
    if (plan.shared.empty()) {
        throw DataError("alignment impossible: the vocabularies share no word");
    }
    return plan;
}

CopyMode parse_copy_mode(const std::string& name) {
    if (name == "full") return CopyMode::Full;
    if (name == "vectors") return CopyMode::VectorsOnly;
    throw DataError("unknown copy mode '" + name + "' (expected full|vectors)");
}

std::string copy_mode_name(CopyMode mode) {
    return mode == CopyMode::Full ? "full" : "vectors";
}

EmbeddingModel init_from_model(const EmbeddingModel& model1,
                               std::shared_ptr<const Vocabulary> vocab2,
                               const TrainConfig& config, const AlignOptions& options) {
    if (model1.dim != config.dim) {
        throw DataError("model dimension " + std::to_string(model1.dim) +
                        " does not match config dim " + std::to_string(config.dim));
    }
    if (model1.use_biases != config.use_biases) {
        throw DataError("bias layout mismatch between source model and config");
    }
    plan_alignment(*model1.vocab, *vocab2, config.seed);

    EmbeddingModel model2 = init_random(vocab2, config);
    const auto dim = static_cast<std::size_t>(config.dim);
    for (std::int32_t w2 = 0; w2 < model2.vocab_size(); ++w2) {
        const auto it = model1.vocab->id_of.find(model2.vocab->words[w2]);
        if (it == model1.vocab->id_of.end()) continue;
        const std::int32_t w1 = it->second;
        const std::size_t dst = static_cast<std::size_t>(w2) * dim;
        const std::size_t src = static_cast<std::size_t>(w1) * dim;
        std::copy_n(model1.v.data() + src, dim, model2.v.data() + dst);
        if (options.copy_adagrad) {
            std::copy_n(model1.acc_v.data() + src, dim, model2.acc_v.data() + dst);
        }
        if (options.copy_mode == CopyMode::Full) {
            std::copy_n(model1.u.data() + src, dim, model2.u.data() + dst);
            if (options.copy_adagrad) {
                std::copy_n(model1.acc_u.data() + src, dim, model2.acc_u.data() + dst);
            }
            if (config.use_biases) {
                model2.b_center[w2] = model1.b_center[w1];
                model2.b_context[w2] = model1.b_context[w1];
                if (options.copy_adagrad) {
                    model2.acc_b_center[w2] = model1.acc_b_center[w1];
                    model2.acc_b_context[w2] = model1.acc_b_context[w1];
                }
            }
        }
    }
    return model2;
}

ViResult vi_pipeline(const Corpus& corpus1, const Corpus& corpus2, std::int32_t window,
                     std::int64_t min_count, const TrainConfig& config,
                     const AlignOptions& options,
                     std::optional<std::int32_t> second_stage_epochs) {
    config.validate();

    ViResult result;
    result.vocab1 = std::make_shared<const Vocabulary>(
        build_vocabulary(corpus1, min_count, config.workers));
    const CooccurrenceMatrix matrix1 =
        build_cooccurrence(corpus1, *result.vocab1, window, config.workers);
    result.matrix1_empty = matrix1.empty();
    result.model1 = init_random(result.vocab1, config);
    result.trace1 = train(result.model1, matrix1, config);

    result.vocab2 = std::make_shared<const Vocabulary>(
        build_vocabulary(corpus2, min_count, config.workers));
    const CooccurrenceMatrix matrix2 =
        build_cooccurrence(corpus2, *result.vocab2, window, config.workers);
    result.matrix2_empty = matrix2.empty();
    result.plan = plan_alignment(*result.vocab1, *result.vocab2, config.seed);
    result.model2 = init_from_model(result.model1, result.vocab2, config, options);

    TrainConfig stage2 = config;
    if (second_stage_epochs) stage2.epochs = *second_stage_epochs;
    result.trace2 = train(result.model2, matrix2, stage2);
    return result;
}

}  // namespace driftvec
