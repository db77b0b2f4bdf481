#include "permcc/perm.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>

#include "permcc/errors.hpp"

namespace permcc {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::UnknownSymbol: return "UnknownSymbol";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::InvalidPosition: return "InvalidPosition";
        case Errc::DegreeMismatch: return "DegreeMismatch";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::RepeatedPoint: return "RepeatedPoint";
        case Errc::GroupTooLarge: return "GroupTooLarge";
        case Errc::NotFlat: return "NotFlat";
        case Errc::NotABijection: return "NotABijection";
        case Errc::NotFlatOverK: return "NotFlatOverK";
        case Errc::NoOccurrence: return "NoOccurrence";
        case Errc::NotOrientable: return "NotOrientable";
        case Errc::NotEEqual: return "NotEEqual";
        case Errc::NoMatch: return "NoMatch";
        case Errc::ParseError: return "ParseError";
        case Errc::ResourceCap: return "ResourceCap";
        case Errc::UniverseTooLarge: return "UniverseTooLarge";
        case Errc::InvalidSignature: return "InvalidSignature";
    }
    return "UnknownError";
}

namespace {

size_t hash_ints(const std::vector<int>& v) {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
        h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

Permutation Permutation::identity(int degree) {
    std::vector<int> img(static_cast<size_t>(degree));
    for (int i = 0; i < degree; ++i) img[static_cast<size_t>(i)] = i;
    return Permutation(std::move(img));
}

Permutation Permutation::from_images(const std::vector<int>& images_one_based) {
    const int n = static_cast<int>(images_one_based.size());
    std::vector<int> img(static_cast<size_t>(n));
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        int v = images_one_based[static_cast<size_t>(i)];
        if (v < 1 || v > n)
            fail(Errc::NotABijection, "image " + std::to_string(v) + " out of range 1.." +
                                          std::to_string(n));
        if (seen[static_cast<size_t>(v - 1)])
            fail(Errc::NotABijection, "image " + std::to_string(v) + " repeated");
        seen[static_cast<size_t>(v - 1)] = 1;
        img[static_cast<size_t>(i)] = v - 1;
    }
    return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int degree,
                                     const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(static_cast<size_t>(degree));
    for (int i = 0; i < degree; ++i) img[static_cast<size_t>(i)] = i;
    std::vector<char> used(static_cast<size_t>(degree), 0);
    for (const auto& cyc : cycles) {
        for (int p : cyc) {
            if (p < 1 || p > degree)
                fail(Errc::OutOfRange, "cycle point " + std::to_string(p) + " out of range 1.." +
                                           std::to_string(degree));
            if (used[static_cast<size_t>(p - 1)])
                fail(Errc::RepeatedPoint, "cycle point " + std::to_string(p) + " repeated");
            used[static_cast<size_t>(p - 1)] = 1;
        }
        const size_t r = cyc.size();
        for (size_t k = 0; k < r; ++k) {
            int from = cyc[k] - 1;
            int to = cyc[(k + 1) % r] - 1;
            img[static_cast<size_t>(from)] = to;
        }
    }
    return Permutation(std::move(img));
}

std::vector<int> Permutation::images_one_based() const {
    std::vector<int> out;
    out.reserve(img_.size());
    for (int v : img_) out.push_back(v + 1);
    return out;
}

Permutation Permutation::compose(const Permutation& q) const {
    if (degree() != q.degree())
        fail(Errc::DegreeMismatch, "cannot compose degree " + std::to_string(degree()) +
                                       " with degree " + std::to_string(q.degree()));
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) img[i] = img_[static_cast<size_t>(q.img_[i])];
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) img[static_cast<size_t>(img_[i])] = static_cast<int>(i);
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != static_cast<int>(i)) return false;
    return true;
}

void Permutation::act_into(std::span<const int> tup, std::vector<int>& out) const {
    out.resize(tup.size());
    for (size_t i = 0; i < tup.size(); ++i) out[i] = tup[static_cast<size_t>(img_[i])];
}

std::string Permutation::to_cycle_string() const {
    std::string out;
    std::vector<char> seen(img_.size(), 0);
    for (size_t start = 0; start < img_.size(); ++start) {
        if (seen[start] || img_[start] == static_cast<int>(start)) continue;
        out += "(";
        size_t cur = start;
        bool first = true;
        while (!seen[cur]) {
            seen[cur] = 1;
            if (!first) out += " ";
            out += std::to_string(cur + 1);
            first = false;
            cur = static_cast<size_t>(img_[cur]);
        }
        out += ")";
    }
    if (out.empty()) out = "()";
    return out;
}

size_t Permutation::hash() const { return hash_ints(img_); }

PermGroup::PermGroup(int degree, std::vector<Permutation> gens, std::vector<Permutation> elems)
    : degree_(degree), generators_(std::move(gens)), elements_(std::move(elems)) {
    element_hashes_.reserve(elements_.size());
    for (const auto& e : elements_) element_hashes_.push_back(e.hash());
    std::sort(element_hashes_.begin(), element_hashes_.end());
}

PermGroup PermGroup::trivial(int degree) {
    return PermGroup(degree, {}, {Permutation::identity(degree)});
}

PermGroup PermGroup::generate(int degree, const std::vector<Permutation>& gens, size_t cap) {
    for (const auto& g : gens)
        if (g.degree() != degree)
            fail(Errc::DegreeMismatch, "generator degree " + std::to_string(g.degree()) +
                                           " does not match group degree " +
                                           std::to_string(degree));
    std::vector<Permutation> elems;
    std::unordered_set<size_t> seen;
    std::deque<size_t> work;

    auto add = [&](const Permutation& p) -> bool {
        size_t h = p.hash();
        // hash collision guard: verify by linear probe within the bucket
        if (seen.count(h)) {
            for (const auto& e : elems)
                if (e.hash() == h && e == p) return false;
        }
        seen.insert(h);
        elems.push_back(p);
        work.push_back(elems.size() - 1);
        if (cap != 0 && elems.size() > cap)
            fail(Errc::GroupTooLarge, "group enumeration exceeded cap of " + std::to_string(cap));
        return true;
    };

    add(Permutation::identity(degree));
    while (!work.empty()) {
        size_t idx = work.front();
        work.pop_front();
        for (const auto& g : gens) {
            Permutation next = g.compose(elems[idx]);
            add(next);
        }
    }
    return PermGroup(degree, gens, std::move(elems));
}

bool PermGroup::contains(const Permutation& p) const {
    if (p.degree() != degree_)
        fail(Errc::DegreeMismatch, "permutation degree " + std::to_string(p.degree()) +
                                       " does not match group degree " + std::to_string(degree_));
    size_t h = p.hash();
    if (!std::binary_search(element_hashes_.begin(), element_hashes_.end(), h)) return false;
    for (const auto& e : elements_)
        if (e.hash() == h && e == p) return true;
    return false;
}

std::vector<int> PermGroup::min_image_ints(std::span<const int> tup) const {
    if (static_cast<int>(tup.size()) != degree_)
        fail(Errc::LengthMismatch, "tuple length " + std::to_string(tup.size()) +
                                       " does not match group degree " + std::to_string(degree_));
    std::vector<int> best(tup.begin(), tup.end());
    std::vector<int> cand;
    for (const Permutation& p : elements_) {
        p.act_into(tup, cand);
        if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))
            best = cand;
    }
    return best;
}

}  // namespace permcc
