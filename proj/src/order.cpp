#include "bandwave/order.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bandwave {

std::size_t VertexIdHash::operator()(const VertexId& v) const noexcept {
    std::size_t h = std::hash<std::string>{}(v.part);
    std::size_t h2 = std::hash<std::string>{}(v.name);
    return h ^ (h2 + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::string to_string(const VertexId& v) { return v.part + ":" + v.name; }

VertexId transition_id(std::string name) { return VertexId{"transition", std::move(name)}; }
VertexId place_id(std::string name) { return VertexId{"place", std::move(name)}; }

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    p.to_target_.resize(n);
    std::iota(p.to_target_.begin(), p.to_target_.end(), 0);
    return p;
}

Permutation Permutation::reversal(std::size_t n) {
    Permutation p;
    p.to_target_.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.to_target_[i] = static_cast<int>(n - 1 - i);
    return p;
}

Permutation Permutation::from_images(std::vector<int> images) {
    const std::size_t n = images.size();
    std::vector<char> seen(n, 0);
    for (int& img : images) {
        if (img < 1 || static_cast<std::size_t>(img) > n)
            throw std::invalid_argument("permutation image out of range: " + std::to_string(img));
        if (seen[img - 1])
            throw std::invalid_argument("permutation image repeated: " + std::to_string(img));
        seen[img - 1] = 1;
        --img;  // store 0-based
    }
    Permutation p;
    p.to_target_ = std::move(images);
    return p;
}

Permutation Permutation::from_target_order(const std::vector<int>& order) {
    const std::size_t n = order.size();
    std::vector<int> images(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        int src = order[k];
        if (src < 1 || static_cast<std::size_t>(src) > n)
            throw std::invalid_argument("permutation entry out of range: " + std::to_string(src));
        if (images[src - 1] != 0)
            throw std::invalid_argument("permutation entry repeated: " + std::to_string(src));
        images[src - 1] = static_cast<int>(k + 1);
    }
    return from_images(std::move(images));
}

int Permutation::apply(int source_rank) const {
    if (source_rank < 1 || static_cast<std::size_t>(source_rank) > to_target_.size())
        throw std::out_of_range("permutation rank out of range: " + std::to_string(source_rank));
    return to_target_[source_rank - 1] + 1;
}

Permutation Permutation::inverse() const {
    std::vector<int> images(to_target_.size());
    for (std::size_t i = 0; i < to_target_.size(); ++i)
        images[to_target_[i]] = static_cast<int>(i + 1);
    return from_images(std::move(images));
}

Permutation Permutation::composed_with(const Permutation& then) const {
    if (then.size() != size())
        throw std::invalid_argument("composing permutations of different sizes");
    std::vector<int> images(size());
    for (std::size_t i = 0; i < size(); ++i) images[i] = then.to_target_[to_target_[i]] + 1;
    return from_images(std::move(images));
}

std::vector<int> Permutation::target_order() const {
    std::vector<int> order(size());
    for (std::size_t i = 0; i < size(); ++i) order[to_target_[i]] = static_cast<int>(i + 1);
    return order;
}

PartialOrder::PartialOrder(std::vector<std::vector<VertexId>> parts) : parts_(std::move(parts)) {
    std::erase_if(parts_, [](const auto& p) { return p.empty(); });
    rebuild_index();
}

PartialOrder PartialOrder::total(std::vector<VertexId> vertices) {
    std::vector<std::vector<VertexId>> parts;
    if (!vertices.empty()) parts.push_back(std::move(vertices));
    return PartialOrder(std::move(parts));
}

void PartialOrder::rebuild_index() {
    index_.clear();
    part_offset_.assign(parts_.size() + 1, 0);
    for (std::size_t pi = 0; pi < parts_.size(); ++pi) {
        part_offset_[pi + 1] = part_offset_[pi] + static_cast<int>(parts_[pi].size());
        for (std::size_t k = 0; k < parts_[pi].size(); ++k) {
            auto [it, fresh] = index_.emplace(parts_[pi][k],
                                              std::make_pair(static_cast<int>(pi), static_cast<int>(k)));
            if (!fresh) throw std::invalid_argument("duplicate vertex in order: " + to_string(parts_[pi][k]));
        }
    }
}

bool PartialOrder::contains(const VertexId& v) const { return index_.count(v) != 0; }

int PartialOrder::position(const VertexId& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw std::out_of_range("vertex not in order: " + to_string(v));
    return it->second.second + 1;
}

int PartialOrder::part_of(const VertexId& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw std::out_of_range("vertex not in order: " + to_string(v));
    return it->second.first;
}

int PartialOrder::flat_rank(const VertexId& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw std::out_of_range("vertex not in order: " + to_string(v));
    return part_offset_[it->second.first] + it->second.second;
}

std::vector<VertexId> PartialOrder::flatten() const {
    std::vector<VertexId> out;
    out.reserve(size());
    for (const auto& part : parts_)
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

PartialOrder PartialOrder::restricted(const VertexSet& keep) const {
    std::vector<std::vector<VertexId>> parts;
    for (const auto& part : parts_) {
        std::vector<VertexId> kept;
        for (const auto& v : part)
            if (keep.count(v)) kept.push_back(v);
        if (!kept.empty()) parts.push_back(std::move(kept));
    }
    return PartialOrder(std::move(parts));
}

PartialOrder PartialOrder::permuted(const Permutation& perm) const {
    if (perm.size() != size())
        throw std::invalid_argument("permutation size " + std::to_string(perm.size()) +
                                    " does not match order size " + std::to_string(size()));
    std::vector<std::vector<VertexId>> parts = parts_;
    for (auto& part : parts) {
        std::stable_sort(part.begin(), part.end(), [&](const VertexId& a, const VertexId& b) {
            return perm.apply(flat_rank(a) + 1) < perm.apply(flat_rank(b) + 1);
        });
    }
    return PartialOrder(std::move(parts));
}

}  // namespace bandwave
