#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "cgsym/errors.hpp"
#include "cgsym/vertex_set.hpp"

namespace cgsym {

/// A bijection of 1..m stored as its images array.
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> hit(images_.size() + 1, false);
        for (int v : images_) {
            if (v < 1 || v > static_cast<int>(images_.size()) || hit[static_cast<std::size_t>(v)])
                throw error("permutation images are not a bijection");
            hit[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(int m) {
        std::vector<int> img(static_cast<std::size_t>(m));
        std::iota(img.begin(), img.end(), 1);
        return Permutation(std::move(img));
    }

    int size() const { return static_cast<int>(images_.size()); }
    int apply(int v) const { return images_[static_cast<std::size_t>(v - 1)]; }

    VertexSet apply(VertexSet s) const {
        VertexSet out;
        for (int v : s.elements()) out.insert(apply(v));
        return out;
    }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i)
            inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
        return Permutation(std::move(inv));
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != static_cast<int>(i) + 1) return false;
        return true;
    }

    const std::vector<int>& images() const { return images_; }

    auto operator<=>(const Permutation&) const = default;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(images_[i]);
        }
        return out;
    }

private:
    std::vector<int> images_;
};

}  // namespace cgsym
