#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace driftvec {

// A tokenized corpus, one sentence per line, tokens separated by whitespace.
// File-backed corpora are streamed on every pass (gzip handled transparently);
// in-memory corpora back the synthetic generators and tests.
class Corpus {
public:
    explicit Corpus(std::string path);
    static Corpus from_lines(std::vector<std::string> lines);

    const std::string& path() const { return path_; }
    bool in_memory() const { return lines_ != nullptr; }

    // Calls fn once per line, in order, with the line's tokens. The views are
    // valid only during the call.
    void for_each_line(
        const std::function<void(std::span<const std::string_view>)>& fn) const;

    // Same, but only lines whose index satisfies index % stride == offset.
    // Workers use this to shard a corpus without coordination.
    void for_each_line_strided(
        std::size_t offset, std::size_t stride,
        const std::function<void(std::span<const std::string_view>)>& fn) const;

private:
    Corpus() = default;
    std::string path_;
    std::shared_ptr<const std::vector<std::string>> lines_;  // null when file-backed
};

struct TransparentStringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
        return std::hash<std::string_view>{}(s);
    }
};

// Frequency-filtered word inventory. Ids are dense 0..V-1 in order of
// descending frequency, ties broken lexicographically, so rebuilding from the
// same corpus is bit-identical. total_tokens counts every token seen,
// including ones later dropped by the min_count filter.
struct Vocabulary {
    std::vector<std::string> words;  // id -> word
    std::vector<std::int64_t> freq;  // id -> count, freq[id] >= min_count
    std::unordered_map<std::string, std::int32_t, TransparentStringHash, std::equal_to<>> id_of;
    std::int64_t total_tokens = 0;
    std::int64_t min_count = 1;

    std::int32_t size() const { return static_cast<std::int32_t>(words.size()); }
    bool contains(std::string_view word) const { return id_of.find(word) != id_of.end(); }

    // Throws DataError naming the word when absent.
    std::int32_t id(std::string_view word) const;

    double relative_frequency(std::string_view word) const;
    double relative_frequency(std::int32_t word_id) const;
};

// Counts tokens and keeps every word with frequency >= min_count.
// Throws DataError if the corpus has no tokens, IoError if unreadable.
// workers > 1 shards lines and merges counts; the result is identical to the
// sequential build.
Vocabulary build_vocabulary(const Corpus& corpus, std::int64_t min_count, int workers = 1);

// "word<TAB>freq" lines, descending frequency (id order).
void dump_vocabulary(const Vocabulary& vocab, std::ostream& out);

}  // namespace driftvec
