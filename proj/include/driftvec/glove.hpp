#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "driftvec/cooccur.hpp"
#include "driftvec/corpus.hpp"

namespace driftvec {

struct TrainConfig {
    std::int32_t dim = 50;
    std::int32_t epochs = 60;
    double lr = 0.05;
    double x_max = 100.0;
    double alpha = 0.75;
    bool use_biases = true;
    std::uint64_t seed = 1;
    std::int32_t workers = 1;

    void validate() const;  // throws DataError on an out-of-range field
};

// Word and context vectors plus optional biases, with per-parameter AdaGrad
// accumulators. v holds center-role rows, u context-role rows, both V x dim
// row-major. Accumulators start at 1 and only grow.
struct EmbeddingModel {
    std::shared_ptr<const Vocabulary> vocab;
    std::int32_t dim = 0;
    bool use_biases = true;
    std::vector<double> v, u;                  // V x dim
    std::vector<double> b_center, b_context;   // V, empty when biases off
    std::vector<double> acc_v, acc_u;          // AdaGrad state, shapes match
    std::vector<double> acc_b_center, acc_b_context;
    TrainConfig config;

    std::int32_t vocab_size() const { return vocab ? vocab->size() : 0; }
    std::span<double> v_row(std::int32_t w) { return row(v, w); }
    std::span<double> u_row(std::int32_t w) { return row(u, w); }
    std::span<const double> v_row(std::int32_t w) const { return row(v, w); }
    std::span<const double> u_row(std::int32_t w) const { return row(u, w); }

    // Throws NumericError naming the first word id with a non-finite value.
    void check_finite() const;

private:
    std::span<double> row(std::vector<double>& m, std::int32_t w) {
        return std::span<double>(m.data() + static_cast<std::size_t>(w) * dim,
                                 static_cast<std::size_t>(dim));
    }
    std::span<const double> row(const std::vector<double>& m, std::int32_t w) const {
        return std::span<const double>(m.data() + static_cast<std::size_t>(w) * dim,
                                       static_cast<std::size_t>(dim));
    }
};

// Weighting function applied to each co-occurrence count: (x/x_max)^alpha
// below the cap, 1 at or above it. Throws NumericError for x <= 0.
double weight_f(double x, double x_max, double alpha);

// Total weighted least-squares cost over all stored entries,
// sum of f(X_ij) * (u_j . v_i + b_i + b~_j - ln X_ij)^2.
double cost(const EmbeddingModel& model, const CooccurrenceMatrix& matrix);

// Analytic gradient of one record's cost term with respect to every
// parameter it touches. Exists so tests can difference it against cost;
// train() applies the same formulas inline.
struct GradientContribution {
    std::vector<double> d_v;  // d cost / d v_i
    std::vector<double> d_u;  // d cost / d u_j
    double d_b_center = 0.0;
    double d_b_context = 0.0;
};
GradientContribution gradients(const CooccurRecord& record, const EmbeddingModel& model);

// Fresh model with every component of u, v and the biases drawn i.i.d.
// uniform from (-0.5/dim, 0.5/dim), AdaGrad accumulators at 1.
EmbeddingModel init_random(std::shared_ptr<const Vocabulary> vocab,
                           const TrainConfig& config);

struct TrainResult {
    std::vector<double> epoch_mean_cost;     // mean per-record cost, pre-update
    std::vector<std::int64_t> epoch_skipped; // records dropped for non-finite g
};

// Runs config.epochs AdaGrad passes over the records of shuffle_records(
// matrix, config.seed); the order is fixed once and reused every epoch.
// workers == 1 is sequential and fully deterministic; workers > 1 splits the
// records across lock-free threads and is not reproducible run-to-run.
// Throws NumericError if more than 1% of an epoch's records are skipped.
TrainResult train(EmbeddingModel& model, const CooccurrenceMatrix& matrix,
                  const TrainConfig& config);

enum class VectorMode { Sum, Average, CenterOnly };

VectorMode parse_vector_mode(const std::string& name);  // "sum|average|center"
std::string vector_mode_name(VectorMode mode);

// Final per-word embedding: v+u, (v+u)/2, or v alone.
struct WordVectors {
    std::shared_ptr<const Vocabulary> vocab;
    std::int32_t dim = 0;
    VectorMode mode = VectorMode::Sum;
    std::vector<double> data;  // V x dim

    std::span<const double> row(std::int32_t w) const {
        return std::span<const double>(data.data() + static_cast<std::size_t>(w) * dim,
                                       static_cast<std::size_t>(dim));
    }
};

WordVectors final_vectors(const EmbeddingModel& model, VectorMode mode = VectorMode::Sum);

// Full-model text format, round-trip exact:
//   driftvec-model 1 <V> <dim> <biases:0|1>
//   word  v_1..v_dim  u_1..u_dim  [b b~]
void save_model(const EmbeddingModel& model, const std::string& path);
EmbeddingModel load_model(const std::string& path);  // accumulators reset to 1

// Classic text vector format with a leading "#mode=..." comment line.
void save_vectors(const WordVectors& vectors, const std::string& path);
WordVectors load_vectors(const std::string& path);

}  // namespace driftvec
