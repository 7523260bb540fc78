#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace bandwave {

// Hash-consed list decision diagrams.  A node holds a value, a down link to
// the next level, and a right link to the next (strictly larger) value at the
// same level; every path to the true terminal has the same length, one step
// per variable.  Nodes are never physically deleted, so references and memo
// entries stay valid for the lifetime of the store; liveness is tracked by
// reference counts from Root handles, cascading through children, and the
// running maximum of the live-node count is the peak statistic.
class LddStore {
public:
    using Ref = std::uint32_t;
    static constexpr Ref kFalse = 0;
    static constexpr Ref kTrue = 1;

    LddStore();
    LddStore(const LddStore&) = delete;
    LddStore& operator=(const LddStore&) = delete;

    // Hash-consed constructor; an empty down set collapses the node away
    // (returns right).  Sibling values must strictly increase.
    Ref make(int value, Ref down, Ref right);
    // Chain encoding exactly one vector, one level per element.
    Ref singleton(const std::vector<int>& values);
    Ref set_union(Ref a, Ref b);

    static bool is_terminal(Ref r) { return r <= kTrue; }
    int value(Ref r) const { return nodes_[r].value; }
    Ref down(Ref r) const { return nodes_[r].down; }
    Ref right(Ref r) const { return nodes_[r].right; }

    // Number of distinct vectors in the set (exact for small sets; large
    // counts lose precision like any double).
    double count_states(Ref r);
    // Distinct non-terminal nodes reachable from r.
    std::size_t node_count(Ref r) const;
    // All vectors, in lexicographic order.  Only sensible for small sets.
    std::vector<std::vector<int>> enumerate(Ref r) const;

    // RAII liveness handle.  A node is live while reachable from any Root.
    class Root {
    public:
        Root() = default;
        Root(LddStore& store, Ref ref) : store_(&store), ref_(ref) { store_->incref(ref_); }
        Root(const Root& other) : store_(other.store_), ref_(other.ref_) {
            if (store_) store_->incref(ref_);
        }
        Root(Root&& other) noexcept : store_(other.store_), ref_(other.ref_) {
            other.store_ = nullptr;
            other.ref_ = kFalse;
        }
        Root& operator=(const Root& other) {
            if (this != &other) {
                if (other.store_) other.store_->incref(other.ref_);
                release();
                store_ = other.store_;
                ref_ = other.ref_;
            }
            return *this;
        }
        Root& operator=(Root&& other) noexcept {
            if (this != &other) {
                release();
                store_ = other.store_;
                ref_ = other.ref_;
                other.store_ = nullptr;
                other.ref_ = kFalse;
            }
            return *this;
        }
        ~Root() { release(); }

        Ref get() const { return ref_; }

    private:
        void release() {
            if (store_) store_->decref(ref_);
            store_ = nullptr;
            ref_ = kFalse;
        }
        LddStore* store_ = nullptr;
        Ref ref_ = kFalse;
    };

    Root root(Ref r) { return Root(*this, r); }

    std::size_t live_node_count() const { return live_; }
    std::size_t peak_live_count() const { return peak_; }
    void reset_peak() { peak_ = live_; }
    // Non-terminal nodes ever created.
    std::size_t created_count() const { return nodes_.size() - 2; }

private:
    friend class Root;

    struct Node {
        std::int32_t value;
        Ref down;
        Ref right;
        std::uint32_t refs;
    };
    struct Key {
        std::int32_t value;
        Ref down;
        Ref right;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.value));
            h = h * 0x9e3779b97f4a7c15ULL + k.down;
            h = h * 0x9e3779b97f4a7c15ULL + k.right;
            return static_cast<std::size_t>(h ^ (h >> 32));
        }
    };

    void incref(Ref r);
    void decref(Ref r);

    static constexpr std::size_t kUnionMemoCap = 1u << 22;

    std::vector<Node> nodes_;
    std::unordered_map<Key, Ref, KeyHash> unique_;
    std::unordered_map<std::uint64_t, Ref> union_memo_;
    std::unordered_map<Ref, double> count_memo_;
    std::size_t live_ = 0;
    std::size_t peak_ = 0;
};

}  // namespace bandwave
