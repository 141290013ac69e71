#include "driftvec/cooccur.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "driftvec/error.hpp"
#include "driftvec/rng.hpp"
#include "driftvec/text_io.hpp"

namespace driftvec {

namespace {

struct Cell {
    double x = 0.0;
    std::int64_t raw = 0;
};

using PairMap = std::unordered_map<std::uint64_t, Cell>;

std::uint64_t pack(std::int32_t i, std::int32_t j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(j));
}

void count_shard(const Corpus& corpus, const Vocabulary& vocab, std::int32_t window,
                 std::size_t offset, std::size_t stride, PairMap& pairs) {
    std::vector<std::int32_t> ids;
    corpus.for_each_line_strided(offset, stride, [&](std::span<const std::string_view> toks) {
        ids.clear();
        for (const std::string_view tok : toks) {
            const auto it = vocab.id_of.find(tok);
            ids.push_back(it == vocab.id_of.end() ? -1 : it->second);
        }
        const std::size_t n = ids.size();
        for (std::size_t p = 0; p < n; ++p) {
            const std::int32_t center = ids[p];
            if (center < 0) continue;
            const std::size_t max_d = std::min<std::size_t>(p, static_cast<std::size_t>(window));
            for (std::size_t d = 1; d <= max_d; ++d) {
                const std::int32_t context = ids[p - d];
                if (context < 0 || context == center) continue;
                const double w = 1.0 / static_cast<double>(d);
                Cell& fwd = pairs[pack(center, context)];
                fwd.x += w;
                fwd.raw += 1;
                Cell& bwd = pairs[pack(context, center)];
                bwd.x += w;
                bwd.raw += 1;
            }
        }
    });
}

}  // namespace

CooccurrenceMatrix::CooccurrenceMatrix(std::int32_t vocab_size, std::int32_t window,
                                       std::vector<std::int64_t> row_start,
                                       std::vector<std::int32_t> col, std::vector<double> x,
                                       std::vector<std::int64_t> raw)
    : vocab_size_(vocab_size),
      window_(window),
      row_start_(std::move(row_start)),
      col_(std::move(col)),
      x_(std::move(x)),
      raw_(std::move(raw)) {}

void CooccurrenceMatrix::check_row(std::int32_t i) const {
    if (i < 0 || i >= vocab_size_) {
        throw DataError("word id out of range: " + std::to_string(i));
    }
}

std::int64_t CooccurrenceMatrix::row_size(std::int32_t i) const {
    check_row(i);
    return row_start_[i + 1] - row_start_[i];
}

std::span<const std::int32_t> CooccurrenceMatrix::row_cols(std::int32_t i) const {
    check_row(i);
    return std::span<const std::int32_t>(col_.data() + row_start_[i],
                                         static_cast<std::size_t>(row_size(i)));
}

std::span<const double> CooccurrenceMatrix::row_x(std::int32_t i) const {
    check_row(i);
    return std::span<const double>(x_.data() + row_start_[i],
                                   static_cast<std::size_t>(row_size(i)));
}

std::span<const std::int64_t> CooccurrenceMatrix::row_raw(std::int32_t i) const {
    check_row(i);
    return std::span<const std::int64_t>(raw_.data() + row_start_[i],
                                         static_cast<std::size_t>(row_size(i)));
}

double CooccurrenceMatrix::x_at(std::int32_t i, std::int32_t j) const {
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return x_[row_start_[i] + (it - cols.begin())];
}

std::int64_t CooccurrenceMatrix::raw_at(std::int32_t i, std::int32_t j) const {
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0;
    return raw_[row_start_[i] + (it - cols.begin())];
}

std::vector<CooccurRecord> CooccurrenceMatrix::entries_sorted() const {
    std::vector<CooccurRecord> records;
    records.reserve(col_.size());
    for (std::int32_t i = 0; i < vocab_size_; ++i) {
        for (std::int64_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
            records.push_back(CooccurRecord{i, col_[k], x_[k]});
        }
    }
    return records;
}

CooccurrenceMatrix build_cooccurrence(const Corpus& corpus, const Vocabulary& vocab,
                                      std::int32_t window, int workers) {
    if (window < 1) throw DataError("window size must be >= 1");

    PairMap pairs;
    if (workers <= 1) {
        count_shard(corpus, vocab, window, 0, 1, pairs);
    } else {
        std::vector<PairMap> maps(static_cast<std::size_t>(workers));
        std::vector<std::thread> threads;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    count_shard(corpus, vocab, window, static_cast<std::size_t>(w),
                                static_cast<std::size_t>(workers), maps[w]);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        if (failure) std::rethrow_exception(failure);
        for (int w = 0; w < workers; ++w) {
            for (const auto& [key, cell] : maps[w]) {
                Cell& merged = pairs[key];
                merged.x += cell.x;
                merged.raw += cell.raw;
            }
        }
    }

    std::vector<std::uint64_t> keys;
    keys.reserve(pairs.size());
    for (const auto& [key, cell] : pairs) keys.push_back(key);
    std::sort(keys.begin(), keys.end());

    const std::int32_t v = vocab.size();
    std::vector<std::int64_t> row_start(static_cast<std::size_t>(v) + 1, 0);
    std::vector<std::int32_t> col;
    std::vector<double> x;
    std::vector<std::int64_t> raw;
    col.reserve(keys.size());
    x.reserve(keys.size());
    raw.reserve(keys.size());
    for (const std::uint64_t key : keys) {
        const auto i = static_cast<std::int32_t>(key >> 32);
        const auto j = static_cast<std::int32_t>(key & 0xffffffffULL);
        const Cell& cell = pairs.find(key)->second;
        ++row_start[i + 1];
        col.push_back(j);
        x.push_back(cell.x);
        raw.push_back(cell.raw);
    }
    for (std::int32_t i = 0; i < v; ++i) row_start[i + 1] += row_start[i];

    return CooccurrenceMatrix(v, window, std::move(row_start), std::move(col), std::move(x),
                              std::move(raw));
}

std::vector<CooccurRecord> shuffle_records(const CooccurrenceMatrix& matrix,
                                           std::uint64_t seed) {
    std::vector<CooccurRecord> records = matrix.entries_sorted();
    std::mt19937_64 rng(seed);
    shuffle_vector(records, rng);
    return records;
}

std::int64_t glove_update_count(const CooccurrenceMatrix& matrix, std::int32_t word_id) {
    return matrix.row_size(word_id);
}

namespace {

double keep_probability(double z, double t) {
    const double p = (std::sqrt(z / t) + 1.0) * t / z;
    return std::min(1.0, p);
}

}  // namespace

double sgns_update_count(const CooccurrenceMatrix& matrix, std::int32_t word_id,
                         std::optional<double> subsample_threshold,
                         const Vocabulary& vocab) {
    if (subsample_threshold && *subsample_threshold <= 0.0) {
        throw DataError("subsample threshold must be > 0");
    }
    const auto cols = matrix.row_cols(word_id);
    const auto raws = matrix.row_raw(word_id);
    if (!subsample_threshold) {
        std::int64_t total = 0;
        for (const std::int64_t r : raws) total += r;
        return static_cast<double>(total);
    }
    const double t = *subsample_threshold;
    const double pk_center = keep_probability(vocab.relative_frequency(word_id), t);
    double total = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const double pk_context = keep_probability(vocab.relative_frequency(cols[k]), t);
        total += static_cast<double>(raws[k]) * pk_center * pk_context;
    }
    return total;
}

void dump_cooccurrence(const CooccurrenceMatrix& matrix, const Vocabulary& vocab,
                       std::ostream& out) {
    for (std::int32_t i = 0; i < matrix.vocab_size(); ++i) {
        const auto cols = matrix.row_cols(i);
        const auto xs = matrix.row_x(i);
        const auto raws = matrix.row_raw(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            out << vocab.words[i] << '\t' << vocab.words[cols[k]] << '\t'
                << format_double(xs[k]) << '\t' << raws[k] << '\n';
        }
    }
}

}  // namespace driftvec
