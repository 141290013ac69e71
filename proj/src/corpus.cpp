#include "driftvec/corpus.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "driftvec/error.hpp"
#include "driftvec/text_io.hpp"

namespace driftvec {

Corpus::Corpus(std::string path) : path_(std::move(path)) {}

Corpus Corpus::from_lines(std::vector<std::string> lines) {
    Corpus c;
    c.path_ = "<memory>";
    c.lines_ = std::make_shared<const std::vector<std::string>>(std::move(lines));
    return c;
}

void Corpus::for_each_line(
    const std::function<void(std::span<const std::string_view>)>& fn) const {
    for_each_line_strided(0, 1, fn);
}

void Corpus::for_each_line_strided(
    std::size_t offset, std::size_t stride,
    const std::function<void(std::span<const std::string_view>)>& fn) const {
    std::size_t index = 0;
    auto visit = [&](std::string_view line) {
        if (index % stride == offset) {
            const std::vector<std::string_view> tokens = split_tokens(line);
            fn(std::span<const std::string_view>(tokens));
        }
        ++index;
    };
    if (lines_) {
        for (const std::string& line : *lines_) visit(line);
    } else {
        for_each_file_line(path_, visit);
    }
}

std::int32_t Vocabulary::id(std::string_view word) const {
    const auto it = id_of.find(word);
    if (it == id_of.end()) {
        throw DataError("word not in vocabulary: " + std::string(word));
    }
    return it->second;
}

double Vocabulary::relative_frequency(std::string_view word) const {
    return relative_frequency(id(word));
}

double Vocabulary::relative_frequency(std::int32_t word_id) const {
    if (word_id < 0 || word_id >= size()) {
        throw DataError("word id out of range: " + std::to_string(word_id));
    }
    return static_cast<double>(freq[word_id]) / static_cast<double>(total_tokens);
}

namespace {

using CountMap = std::unordered_map<std::string, std::int64_t, TransparentStringHash, std::equal_to<>>;

void count_shard(const Corpus& corpus, std::size_t offset, std::size_t stride,
                 CountMap& counts, std::int64_t& tokens) {
    corpus.for_each_line_strided(offset, stride, [&](std::span<const std::string_view> toks) {
        for (const std::string_view tok : toks) {
            auto it = counts.find(tok);
            if (it == counts.end()) {
                counts.emplace(std::string(tok), 1);
            } else {
                ++it->second;
            }
            ++tokens;
        }
    });
}

}  // namespace

Vocabulary build_vocabulary(const Corpus& corpus, std::int64_t min_count, int workers) {
    if (min_count < 1) throw DataError("min_count must be >= 1");

    CountMap counts;
    std::int64_t total = 0;
    if (workers <= 1) {
        count_shard(corpus, 0, 1, counts, total);
    } else {
        std::vector<CountMap> maps(static_cast<std::size_t>(workers));
        std::vector<std::int64_t> totals(static_cast<std::size_t>(workers), 0);
        std::vector<std::thread> threads;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    count_shard(corpus, static_cast<std::size_t>(w),
                                static_cast<std::size_t>(workers), maps[w], totals[w]);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        if (failure) std::rethrow_exception(failure);
        for (int w = 0; w < workers; ++w) {
            total += totals[w];
            for (auto& [word, n] : maps[w]) counts[word] += n;
        }
    }

    if (total == 0) {
        throw DataError("empty corpus (no tokens): " + corpus.path());
    }

    std::vector<std::pair<std::string, std::int64_t>> kept;
    kept.reserve(counts.size());
    for (auto& [word, n] : counts) {
        if (n >= min_count) kept.emplace_back(word, n);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary vocab;
    vocab.total_tokens = total;
    vocab.min_count = min_count;
    vocab.words.reserve(kept.size());
    vocab.freq.reserve(kept.size());
    vocab.id_of.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        vocab.words.push_back(std::move(kept[i].first));
        vocab.freq.push_back(kept[i].second);
        vocab.id_of.emplace(vocab.words.back(), static_cast<std::int32_t>(i));
    }
    return vocab;
}

void dump_vocabulary(const Vocabulary& vocab, std::ostream& out) {
    for (std::int32_t i = 0; i < vocab.size(); ++i) {
        out << vocab.words[i] << '\t' << vocab.freq[i] << '\n';
    }
}

}  // namespace driftvec
