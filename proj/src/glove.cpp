#include "driftvec/glove.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "driftvec/error.hpp"
#include "driftvec/rng.hpp"
#include "driftvec/text_io.hpp"

namespace driftvec {

void TrainConfig::validate() const {
    if (dim < 1) throw DataError("dim must be >= 1");
    if (epochs < 0) throw DataError("epochs must be >= 0");
    if (!(lr > 0.0)) throw DataError("lr must be > 0");
    if (!(x_max > 0.0)) throw DataError("x-max must be > 0");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DataError("alpha must be in (0, 1]");
    if (workers < 1) throw DataError("workers must be >= 1");
}

void EmbeddingModel::check_finite() const {
    const auto scan = [&](const std::vector<double>& m, std::size_t per_word,
                          const char* what) {
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (!std::isfinite(m[k])) {
                const auto w = static_cast<std::int32_t>(k / per_word);
                throw NumericError(std::string("non-finite ") + what +
                                   " parameter for word id " + std::to_string(w) +
                                   (vocab ? " (" + vocab->words[w] + ")" : ""));
            }
        }
    };
    const auto d = static_cast<std::size_t>(dim);
    scan(v, d, "center-vector");
    scan(u, d, "context-vector");
    if (use_biases) {
        scan(b_center, 1, "center-bias");
        scan(b_context, 1, "context-bias");
    }
}

double weight_f(double x, double x_max, double alpha) {
    if (!(x > 0.0)) {
        throw NumericError("weight_f requires x > 0, got " + format_double(x));
    }
    if (x < x_max) return std::pow(x / x_max, alpha);
    return 1.0;
}

double cost(const EmbeddingModel& model, const CooccurrenceMatrix& matrix) {
    if (!model.vocab || matrix.vocab_size() != model.vocab->size()) {
        throw DataError("cooccurrence matrix does not match model vocabulary");
    }
    model.check_finite();
    const std::int32_t dim = model.dim;
    double total = 0.0;
    for (std::int32_t i = 0; i < matrix.vocab_size(); ++i) {
        const auto cols = matrix.row_cols(i);
        const auto xs = matrix.row_x(i);
        const double* vi = model.v.data() + static_cast<std::size_t>(i) * dim;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const std::int32_t j = cols[k];
            const double* uj = model.u.data() + static_cast<std::size_t>(j) * dim;
            double dot = 0.0;
            for (std::int32_t c = 0; c < dim; ++c) dot += uj[c] * vi[c];
            if (model.use_biases) dot += model.b_center[i] + model.b_context[j];
            const double resid = dot - std::log(xs[k]);
            total += weight_f(xs[k], model.config.x_max, model.config.alpha) * resid * resid;
        }
    }
    return total;
}

GradientContribution gradients(const CooccurRecord& record, const EmbeddingModel& model) {
    const std::int32_t dim = model.dim;
    const auto vi = model.v_row(record.i);
    const auto uj = model.u_row(record.j);
    double dot = 0.0;
    for (std::int32_t c = 0; c < dim; ++c) dot += uj[c] * vi[c];
    if (model.use_biases) dot += model.b_center[record.i] + model.b_context[record.j];
    const double resid = dot - std::log(record.x);
    const double g = 2.0 * weight_f(record.x, model.config.x_max, model.config.alpha) * resid;

    GradientContribution out;
    out.d_v.resize(dim);
    out.d_u.resize(dim);
    for (std::int32_t c = 0; c < dim; ++c) {
        out.d_v[c] = g * uj[c];
        out.d_u[c] = g * vi[c];
    }
    if (model.use_biases) {
        out.d_b_center = g;
        out.d_b_context = g;
    }
    return out;
}

EmbeddingModel init_random(std::shared_ptr<const Vocabulary> vocab,
                           const TrainConfig& config) {
    config.validate();
    EmbeddingModel model;
    model.vocab = std::move(vocab);
    model.dim = config.dim;
    model.use_biases = config.use_biases;
    model.config = config;

    const std::size_t n = static_cast<std::size_t>(model.vocab_size()) * config.dim;
    const double half_width = 0.5 / static_cast<double>(config.dim);
    std::mt19937_64 rng(config.seed);
    const auto draw = [&] { return (uniform_open01(rng) - 0.5) * 2.0 * half_width; };

    model.v.resize(n);
    model.u.resize(n);
    for (double& p : model.v) p = draw();
    for (double& p : model.u) p = draw();
    model.acc_v.assign(n, 1.0);
    model.acc_u.assign(n, 1.0);
    if (config.use_biases) {
        const auto vsize = static_cast<std::size_t>(model.vocab_size());
        model.b_center.resize(vsize);
        model.b_context.resize(vsize);
        for (double& p : model.b_center) p = draw();
        for (double& p : model.b_context) p = draw();
        model.acc_b_center.assign(vsize, 1.0);
        model.acc_b_context.assign(vsize, 1.0);
    }
    return model;
}

namespace {

struct EpochShard {
    double cost_sum = 0.0;
    std::int64_t skipped = 0;
    std::int64_t processed = 0;
};

// Lock-free when called from several threads on disjoint record ranges:
// parameter reads and writes may race by contract (workers > 1 is declared
// non-reproducible), so plain doubles are used, matching the usual hogwild
// scheme.
EpochShard run_records(EmbeddingModel& model, std::span<const CooccurRecord> records,
                       const TrainConfig& config) {
    const std::int32_t dim = model.dim;
    const bool biases = model.use_biases;
    double* v = model.v.data();
    double* u = model.u.data();
    double* acc_v = model.acc_v.data();
    double* acc_u = model.acc_u.data();
    double* bc = biases ? model.b_center.data() : nullptr;
    double* bx = biases ? model.b_context.data() : nullptr;
    double* acc_bc = biases ? model.acc_b_center.data() : nullptr;
    double* acc_bx = biases ? model.acc_b_context.data() : nullptr;

    EpochShard shard;
    for (const CooccurRecord& rec : records) {
        const std::size_t vi = static_cast<std::size_t>(rec.i) * dim;
        const std::size_t uj = static_cast<std::size_t>(rec.j) * dim;
        const double fw = weight_f(rec.x, config.x_max, config.alpha);
        double dot = 0.0;
        for (std::int32_t c = 0; c < dim; ++c) dot += u[uj + c] * v[vi + c];
        if (biases) dot += bc[rec.i] + bx[rec.j];
        const double resid = dot - std::log(rec.x);
        const double g = 2.0 * fw * resid;
        if (!std::isfinite(g)) {
            ++shard.skipped;
            continue;
        }
        shard.cost_sum += fw * resid * resid;
        ++shard.processed;
        for (std::int32_t c = 0; c < dim; ++c) {
            const double old_v = v[vi + c];
            const double old_u = u[uj + c];
            const double gv = g * old_u;
            const double gu = g * old_v;
            v[vi + c] = old_v - config.lr * gv / std::sqrt(acc_v[vi + c]);
            acc_v[vi + c] += gv * gv;
            u[uj + c] = old_u - config.lr * gu / std::sqrt(acc_u[uj + c]);
            acc_u[uj + c] += gu * gu;
        }
        if (biases) {
            bc[rec.i] -= config.lr * g / std::sqrt(acc_bc[rec.i]);
            acc_bc[rec.i] += g * g;
            bx[rec.j] -= config.lr * g / std::sqrt(acc_bx[rec.j]);
            acc_bx[rec.j] += g * g;
        }
    }
    return shard;
}

}  // namespace

TrainResult train(EmbeddingModel& model, const CooccurrenceMatrix& matrix,
                  const TrainConfig& config) {
    config.validate();
    if (!model.vocab || matrix.vocab_size() != model.vocab->size()) {
        throw DataError("cooccurrence matrix does not match model vocabulary");
    }
    if (model.dim != config.dim) {
        throw DataError("model dimension " + std::to_string(model.dim) +
                        " does not match config dim " + std::to_string(config.dim));
    }
    model.config = config;

    TrainResult result;
    if (config.epochs == 0) return result;

    const std::vector<CooccurRecord> records = shuffle_records(matrix, config.seed);
    const std::int64_t n = static_cast<std::int64_t>(records.size());
    for (std::int32_t epoch = 0; epoch < config.epochs; ++epoch) {
        EpochShard total;
        if (config.workers <= 1 || n < config.workers) {
            total = run_records(model, std::span<const CooccurRecord>(records), config);
        } else {
            const int workers = config.workers;
            std::vector<EpochShard> shards(static_cast<std::size_t>(workers));
            std::vector<std::thread> threads;
            for (int w = 0; w < workers; ++w) {
                const std::int64_t begin = n * w / workers;
                const std::int64_t end = n * (w + 1) / workers;
                threads.emplace_back([&, w, begin, end] {
                    shards[w] = run_records(
                        model,
                        std::span<const CooccurRecord>(records.data() + begin,
                                                       static_cast<std::size_t>(end - begin)),
                        config);
                });
            }
            for (auto& t : threads) t.join();
            for (const EpochShard& s : shards) {
                total.cost_sum += s.cost_sum;
                total.skipped += s.skipped;
                total.processed += s.processed;
            }
        }
        result.epoch_mean_cost.push_back(
            total.processed > 0 ? total.cost_sum / static_cast<double>(total.processed) : 0.0);
        result.epoch_skipped.push_back(total.skipped);
        if (total.skipped * 100 > n) {
            throw NumericError("training instability: " + std::to_string(total.skipped) +
                               " of " + std::to_string(n) + " records skipped in epoch " +
                               std::to_string(epoch));
        }
    }
    return result;
}

VectorMode parse_vector_mode(const std::string& name) {
    if (name == "sum") return VectorMode::Sum;
    if (name == "average") return VectorMode::Average;
    if (name == "center") return VectorMode::CenterOnly;
    throw DataError("unknown vector mode '" + name + "' (expected sum|average|center)");
}

std::string vector_mode_name(VectorMode mode) {
    switch (mode) {
        case VectorMode::Sum: return "sum";
        case VectorMode::Average: return "average";
        case VectorMode::CenterOnly: return "center";
    }
    return "sum";
}

WordVectors final_vectors(const EmbeddingModel& model, VectorMode mode) {
    WordVectors out;
    out.vocab = model.vocab;
    out.dim = model.dim;
    out.mode = mode;
    out.data.resize(model.v.size());
    for (std::size_t k = 0; k < model.v.size(); ++k) {
        switch (mode) {
            case VectorMode::Sum: out.data[k] = model.v[k] + model.u[k]; break;
            case VectorMode::Average: out.data[k] = (model.v[k] + model.u[k]) / 2.0; break;
            case VectorMode::CenterOnly: out.data[k] = model.v[k]; break;
        }
    }
    return out;
}

namespace {

std::shared_ptr<const Vocabulary> vocab_from_words(std::vector<std::string> words) {
    // Id-only inventory: model and vector files carry no frequency data.
    auto vocab = std::make_shared<Vocabulary>();
    vocab->words = std::move(words);
    vocab->freq.assign(vocab->words.size(), 0);
    vocab->total_tokens = 0;
    vocab->min_count = 0;
    vocab->id_of.reserve(vocab->words.size());
    for (std::size_t i = 0; i < vocab->words.size(); ++i) {
        vocab->id_of.emplace(vocab->words[i], static_cast<std::int32_t>(i));
    }
    return vocab;
}

void append_values(std::string& out, std::span<const double> values) {
    for (const double value : values) {
        out += ' ';
        out += format_double(value);
    }
}

}  // namespace

void save_model(const EmbeddingModel& model, const std::string& path) {
    std::string out;
    out += "driftvec-model 1 " + std::to_string(model.vocab_size()) + ' ' +
           std::to_string(model.dim) + ' ' + (model.use_biases ? "1" : "0") + '\n';
    for (std::int32_t w = 0; w < model.vocab_size(); ++w) {
        out += model.vocab->words[w];
        append_values(out, model.v_row(w));
        append_values(out, model.u_row(w));
        if (model.use_biases) {
            out += ' ';
            out += format_double(model.b_center[w]);
            out += ' ';
            out += format_double(model.b_context[w]);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

EmbeddingModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty model file: " + path);
    const auto header = split_tokens(line);
    if (header.size() != 5 || header[0] != "driftvec-model" || header[1] != "1") {
        throw DataError("bad model header in " + path);
    }
    const auto v_count = parse_int(header[2], path + " header");
    const auto dim = parse_int(header[3], path + " header");
    const auto biases_flag = parse_int(header[4], path + " header");
    if (v_count < 0 || dim < 1 || (biases_flag != 0 && biases_flag != 1)) {
        throw DataError("bad model header values in " + path);
    }
    const bool biases = biases_flag == 1;
    const std::size_t per_line = 1 + 2 * static_cast<std::size_t>(dim) + (biases ? 2 : 0);

    EmbeddingModel model;
    model.dim = static_cast<std::int32_t>(dim);
    model.use_biases = biases;
    model.config.dim = model.dim;
    model.config.use_biases = biases;
    std::vector<std::string> words;
    words.reserve(static_cast<std::size_t>(v_count));
    model.v.reserve(static_cast<std::size_t>(v_count) * dim);
    model.u.reserve(static_cast<std::size_t>(v_count) * dim);
    for (std::int64_t w = 0; w < v_count; ++w) {
        if (!std::getline(in, line)) {
            throw DataError("model file truncated: " + path);
        }
        const auto parts = split_tokens(line);
        if (parts.size() != per_line) {
            throw DataError("bad model row for word " + std::to_string(w) + " in " + path);
        }
        words.emplace_back(parts[0]);
        std::size_t p = 1;
        for (std::int64_t c = 0; c < dim; ++c) model.v.push_back(parse_double(parts[p++], path));
        for (std::int64_t c = 0; c < dim; ++c) model.u.push_back(parse_double(parts[p++], path));
        if (biases) {
            model.b_center.push_back(parse_double(parts[p++], path));
            model.b_context.push_back(parse_double(parts[p++], path));
        }
    }
    model.vocab = vocab_from_words(std::move(words));
    const std::size_t n = model.v.size();
    model.acc_v.assign(n, 1.0);
    model.acc_u.assign(n, 1.0);
    if (biases) {
        model.acc_b_center.assign(static_cast<std::size_t>(v_count), 1.0);
        model.acc_b_context.assign(static_cast<std::size_t>(v_count), 1.0);
    }
    return model;
}

void save_vectors(const WordVectors& vectors, const std::string& path) {
    std::string out;
    out += "#mode=" + vector_mode_name(vectors.mode) + '\n';
    for (std::int32_t w = 0; w < vectors.vocab->size(); ++w) {
        out += vectors.vocab->words[w];
        append_values(out, vectors.row(w));
        out += '\n';
    }
    write_text_file(path, out);
}

WordVectors load_vectors(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open vectors file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty vectors file: " + path);
    WordVectors out;
    if (line.rfind("#mode=", 0) == 0) {
        out.mode = parse_vector_mode(line.substr(6));
        if (!std::getline(in, line)) throw DataError("vectors file has no rows: " + path);
    }
    std::vector<std::string> words;
    bool first = true;
    do {
        const auto parts = split_tokens(line);
        if (parts.empty()) continue;
        if (first) {
            out.dim = static_cast<std::int32_t>(parts.size()) - 1;
            if (out.dim < 1) throw DataError("bad vectors row in " + path);
            first = false;
        } else if (parts.size() != static_cast<std::size_t>(out.dim) + 1) {
            throw DataError("inconsistent vector width in " + path);
        }
        words.emplace_back(parts[0]);
        for (std::size_t p = 1; p < parts.size(); ++p) {
            out.data.push_back(parse_double(parts[p], path));
        }
    } while (std::getline(in, line));
    if (first) throw DataError("vectors file has no rows: " + path);
    out.vocab = vocab_from_words(std::move(words));
    return out;
}

}  // namespace driftvec
