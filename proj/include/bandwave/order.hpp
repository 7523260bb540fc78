#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace bandwave {

// A vertex is identified by its name together with the comparability class it
// belongs to ("transition", "place", "edge", ...).  Vertices from different
// classes are never comparable and never equal.
struct VertexId {
    std::string part;
    std::string name;

    friend bool operator==(const VertexId&, const VertexId&) = default;
    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct VertexIdHash {
    std::size_t operator()(const VertexId& v) const noexcept;
};

using VertexSet = std::unordered_set<VertexId, VertexIdHash>;

std::string to_string(const VertexId& v);

VertexId transition_id(std::string name);
VertexId place_id(std::string name);

// A bijection on ranks 1..n.  apply() maps a source rank to its target rank.
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(std::size_t n);
    static Permutation reversal(std::size_t n);
    // images[i] is the 1-based target rank of source rank i+1.
    static Permutation from_images(std::vector<int> images);
    // order[k] is the 1-based source rank that lands on target rank k+1,
    // i.e. the sequence "source ranks listed in target order".
    static Permutation from_target_order(const std::vector<int>& order);

    std::size_t size() const { return to_target_.size(); }
    int apply(int source_rank) const;  // 1-based
    Permutation inverse() const;
    Permutation composed_with(const Permutation& then) const;  // this, then `then`
    // Source ranks listed in target order (inverse images 1..n).
    std::vector<int> target_order() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> to_target_;  // 0-based target rank per 0-based source rank
};

// Vertices grouped into disjoint parts, each part totally ordered.  Two
// vertices are comparable iff they share a part; position() is the 1-based
// index within the part.  A total order is the single-part case.
class PartialOrder {
public:
    PartialOrder() = default;
    explicit PartialOrder(std::vector<std::vector<VertexId>> parts);
    static PartialOrder total(std::vector<VertexId> vertices);

    const std::vector<std::vector<VertexId>>& parts() const { return parts_; }
    std::size_t size() const { return index_.size(); }
    bool empty() const { return index_.empty(); }
    bool is_total() const { return parts_.size() <= 1; }

    bool contains(const VertexId& v) const;
    int position(const VertexId& v) const;  // 1-based within the vertex's part
    int part_of(const VertexId& v) const;   // 0-based part index
    // 0-based rank in the part-major concatenation of all parts.
    int flat_rank(const VertexId& v) const;
    std::vector<VertexId> flatten() const;

    // Keeps only the vertices in `keep`, preserving relative order and the
    // part structure (empty parts are dropped).
    PartialOrder restricted(const VertexSet& keep) const;
    // Reorders under a permutation of the part-major flat ranks: every vertex
    // gets the key perm.apply(flat_rank + 1) and each part is sorted by key.
    // On a total order this simply moves the vertex at rank r to rank
    // perm.apply(r).  Requires perm.size() == size().
    PartialOrder permuted(const Permutation& perm) const;

    bool operator==(const PartialOrder& other) const { return parts_ == other.parts_; }

private:
    std::vector<std::vector<VertexId>> parts_;
    std::unordered_map<VertexId, std::pair<int, int>, VertexIdHash> index_;  // part, 0-based pos
    std::vector<int> part_offset_;

    void rebuild_index();
};

}  // namespace bandwave
