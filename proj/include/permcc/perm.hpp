// Permutations on {1..n} and finite permutation groups materialized by
// breadth-first closure under composition.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permcc/errors.hpp"

namespace permcc {

// A bijection on {1..n}. Stored 0-based internally; the public interface
// speaks 1-based points to match the usual cycle notation.
class Permutation {
  public:
    static Permutation identity(int degree);

    // images[k] is the image of point k+1, all values in 1..n.
    static Permutation from_images(const std::vector<int>& images_one_based);

    // Cycles with 1-based entries; points not mentioned are fixed.
    static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

    int degree() const { return static_cast<int>(img_.size()); }

    // Image of 1-based point i.
    int image(int i) const { return img_[static_cast<size_t>(i - 1)] + 1; }

    std::vector<int> images_one_based() const;

    // (p o q)(i) = p(q(i)).
    Permutation compose(const Permutation& q) const;

    Permutation inverse() const;

    bool is_identity() const;

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return img_ != o.img_; }

    // Argument shuffle of a permutation equation: result[i] = tup[p(i)].
    template <typename T>
    std::vector<T> act(const std::vector<T>& tup) const {
        if (static_cast<int>(tup.size()) != degree())
            fail(Errc::LengthMismatch, "tuple length " + std::to_string(tup.size()) +
                                           " does not match degree " + std::to_string(degree()));
        std::vector<T> out;
        out.reserve(tup.size());
        for (int i = 0; i < degree(); ++i) out.push_back(tup[static_cast<size_t>(img_[i])]);
        return out;
    }

    void act_into(std::span<const int> tup, std::vector<int>& out) const;

    std::string to_cycle_string() const;

    size_t hash() const;

  private:
    explicit Permutation(std::vector<int> zero_based) : img_(std::move(zero_based)) {}

    std::vector<int> img_;  // img_[i] = image of point i, 0-based
};

template <typename T>
std::vector<T> act(const Permutation& p, const std::vector<T>& tup) {
    return p.act(tup);
}

// The group <gens>, fully enumerated. Element order is the deterministic BFS
// discovery order starting from the identity.
class PermGroup {
  public:
    static PermGroup trivial(int degree);
    static PermGroup generate(int degree, const std::vector<Permutation>& gens, size_t cap);

    int degree() const { return degree_; }
    size_t order() const { return elements_.size(); }
    const std::vector<Permutation>& elements() const { return elements_; }
    const std::vector<Permutation>& generators() const { return generators_; }

    bool contains(const Permutation& p) const;

    // Lexicographically least tuple in the orbit {act(p, tup) | p in G}.
    template <typename T, typename Less>
    std::vector<T> min_image(const std::vector<T>& tup, Less less) const {
        if (static_cast<int>(tup.size()) != degree_)
            fail(Errc::LengthMismatch, "tuple length " + std::to_string(tup.size()) +
                                           " does not match group degree " +
                                           std::to_string(degree_));
        std::vector<T> best = tup;
        for (const Permutation& p : elements_) {
            std::vector<T> cand = p.act(tup);
            if (lex_less(cand, best, less)) best = cand;
        }
        return best;
    }

    // Specialization used on argument tuples of K-constant indices.
    std::vector<int> min_image_ints(std::span<const int> tup) const;

  private:
    PermGroup(int degree, std::vector<Permutation> gens, std::vector<Permutation> elems);

    template <typename T, typename Less>
    static bool lex_less(const std::vector<T>& a, const std::vector<T>& b, Less less) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (less(a[i], b[i])) return true;
            if (less(b[i], a[i])) return false;
        }
        return false;
    }

    int degree_;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;
    std::vector<size_t> element_hashes_;  // sorted, for contains()
};

}  // namespace permcc
