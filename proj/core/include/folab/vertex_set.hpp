#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace folab {

using Vertex = std::uint32_t;

/// Bitset over the vertex range 0..universe-1 of a host graph, stored in
/// 64-bit words. Bits at or above `universe` are always zero.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
        for (Vertex v : members) insert(v);
    }

    VertexSet(std::size_t universe, std::span<const Vertex> members) : VertexSet(universe) {
        for (Vertex v : members) insert(v);
    }

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool contains(Vertex v) const noexcept {
        return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U);
    }
    void insert(Vertex v) noexcept { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(Vertex v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    void set(Vertex v, bool on) noexcept { on ? insert(v) : erase(v); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const noexcept {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    /// Smallest member, or `universe()` when empty.
    Vertex first() const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
        return static_cast<Vertex>(universe_);
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        out.reserve(count());
        for_each([&](Vertex v) { out.push_back(v); });
        return out;
    }

    VertexSet& operator&=(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    /// Complement relative to the universe.
    VertexSet operator~() const {
        VertexSet s = *this;
        for (auto& w : s.words_) w = ~w;
        s.trim();
        return s;
    }

    bool subset_of(const VertexSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    std::size_t intersection_count(const VertexSet& o) const noexcept {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
        if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
        return a.words_ <=> b.words_;
    }

private:
    void trim() noexcept {
        if (universe_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace folab
