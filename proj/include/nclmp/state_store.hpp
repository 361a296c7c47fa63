#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace nclmp {

// Flat arena of fixed-width states with an open-addressing index.
// Each stored state also remembers the state it was reached from and the
// move label used, so BFS witnesses can be rebuilt without a second map.
class StateStore {
public:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    explicit StateStore(std::size_t words) : words_(words ? words : 1) { rehash(1024); }

    std::size_t words() const { return words_; }
    std::size_t size() const { return parent_.size(); }

    std::span<const std::uint64_t> get(std::uint32_t i) const {
        return {data_.data() + std::size_t(i) * words_, words_};
    }
    std::uint32_t parent(std::uint32_t i) const { return parent_[i]; }
    std::uint32_t label(std::uint32_t i) const { return label_[i]; }

    std::uint32_t find(const std::uint64_t* s) const {
        std::size_t h = hash(s) & mask_;
        while (true) {
            std::uint32_t idx = table_[h];
            if (idx == kNone) return kNone;
            if (std::memcmp(data_.data() + std::size_t(idx) * words_, s, words_ * 8) == 0) return idx;
            h = (h + 1) & mask_;
        }
    }

    // Returns {index, inserted}.
    std::pair<std::uint32_t, bool> insert(const std::uint64_t* s, std::uint32_t parent, std::uint32_t label) {
        if ((size() + 1) * 2 > table_.size()) rehash(table_.size() * 2);
        std::size_t h = hash(s) & mask_;
        while (true) {
            std::uint32_t idx = table_[h];
            if (idx == kNone) break;
            if (std::memcmp(data_.data() + std::size_t(idx) * words_, s, words_ * 8) == 0) return {idx, false};
            h = (h + 1) & mask_;
        }
        auto idx = static_cast<std::uint32_t>(size());
        data_.insert(data_.end(), s, s + words_);
        parent_.push_back(parent);
        label_.push_back(label);
        table_[h] = idx;
        return {idx, true};
    }

    // Labels along the path from a root to i, root first.
    std::vector<std::uint32_t> trace(std::uint32_t i, std::uint32_t* root = nullptr) const {
        std::vector<std::uint32_t> out;
        while (parent_[i] != kNone) {
            out.push_back(label_[i]);
            i = parent_[i];
        }
        if (root) *root = i;
        return {out.rbegin(), out.rend()};
    }

private:
    std::size_t hash(const std::uint64_t* s) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::size_t k = 0; k < words_; ++k) {
            h ^= s[k] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
            h ^= h >> 32;
        }
        return static_cast<std::size_t>(h);
    }

    void rehash(std::size_t n) {
        table_.assign(n, kNone);
        mask_ = n - 1;
        for (std::uint32_t i = 0; i < size(); ++i) {
            std::size_t h = hash(data_.data() + std::size_t(i) * words_) & mask_;
            while (table_[h] != kNone) h = (h + 1) & mask_;
            table_[h] = i;
        }
    }

    std::size_t words_;
    std::vector<std::uint64_t> data_;
    std::vector<std::uint32_t> parent_, label_;
    std::vector<std::uint32_t> table_;
    std::size_t mask_ = 0;
};

}  // namespace nclmp
