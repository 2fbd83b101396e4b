#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "cgsym/errors.hpp"

namespace cgsym {

inline constexpr int kMaxVertices = 64;

/// A subset of the vertex labels 1..64 packed into one machine word
/// (bit v-1 holds vertex v). The word doubles as the numeric key used
/// for deterministic ordering and rendering.
class VertexSet {
public:
    constexpr VertexSet() = default;

    static VertexSet from_bits(std::uint64_t bits) {
        VertexSet s;
        s.bits_ = bits;
        return s;
    }

    static VertexSet single(int v) { return VertexSet{}.insert(v); }

    static VertexSet full(int m) {
        check_vertex_count(m);
        return from_bits(m == kMaxVertices ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << m) - 1);
    }

    static VertexSet of(std::initializer_list<int> vs) {
        VertexSet s;
        for (int v : vs) s.insert(v);
        return s;
    }

    bool contains(int v) const { return (bits_ >> (v - 1)) & 1u; }

    VertexSet& insert(int v) {
        check_vertex(v);
        bits_ |= std::uint64_t{1} << (v - 1);
        return *this;
    }

    VertexSet& erase(int v) {
        check_vertex(v);
        bits_ &= ~(std::uint64_t{1} << (v - 1));
        return *this;
    }

    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    std::uint64_t bits() const { return bits_; }

    /// Smallest member; 0 for the empty set.
    int min() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

    bool subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
    bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

    VertexSet operator|(VertexSet o) const { return from_bits(bits_ | o.bits_); }
    VertexSet operator&(VertexSet o) const { return from_bits(bits_ & o.bits_); }
    VertexSet operator-(VertexSet o) const { return from_bits(bits_ & ~o.bits_); }
    VertexSet& operator|=(VertexSet o) {
        bits_ |= o.bits_;
        return *this;
    }
    VertexSet& operator&=(VertexSet o) {
        bits_ &= o.bits_;
        return *this;
    }

    auto operator<=>(const VertexSet&) const = default;

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int v : elements()) {
            if (!first) out += ',';
            out += std::to_string(v);
            first = false;
        }
        out += '}';
        return out;
    }

private:
    static void check_vertex(int v) {
        if (v < 1 || v > kMaxVertices)
            throw error("vertex label out of range: " + std::to_string(v));
    }
    static void check_vertex_count(int m) {
        if (m < 1 || m > kMaxVertices)
            throw error("vertex count out of range: " + std::to_string(m));
    }

    std::uint64_t bits_ = 0;
};

}  // namespace cgsym
