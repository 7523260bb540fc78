#include "bandwave/ldd.hpp"

#include <stdexcept>
#include <unordered_set>

namespace bandwave {

LddStore::LddStore() {
    nodes_.push_back({-1, kFalse, kFalse, 0});  // false terminal
    nodes_.push_back({-1, kFalse, kFalse, 0});  // true terminal
}

LddStore::Ref LddStore::make(int value, Ref down, Ref right) {
    if (down == kFalse) return right;
    if (right == kTrue) throw std::logic_error("sibling chain may not end in the true terminal");
    if (value < 0) throw std::invalid_argument("negative diagram value");
    if (right != kFalse && nodes_[right].value <= value)
        throw std::logic_error("sibling values must strictly increase");
    Key key{value, down, right};
    auto [it, fresh] = unique_.try_emplace(key, kFalse);
    if (!fresh) return it->second;
    Ref r = static_cast<Ref>(nodes_.size());
    nodes_.push_back({value, down, right, 0});
    it->second = r;
    return r;
}

LddStore::Ref LddStore::singleton(const std::vector<int>& values) {
    Ref cur = kTrue;
    for (auto it = values.rbegin(); it != values.rend(); ++it) cur = make(*it, cur, kFalse);
    return cur;
}

LddStore::Ref LddStore::set_union(Ref a, Ref b) {
    if (a == b) return a;
    if (a == kFalse) return b;
    if (b == kFalse) return a;
    if (a == kTrue || b == kTrue)
        throw std::logic_error("union of diagrams with different depths");
    if (a > b) std::swap(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (auto it = union_memo_.find(key); it != union_memo_.end()) return it->second;
    const Node na = nodes_[a], nb = nodes_[b];  // copies: make() may reallocate
    Ref result;
    if (na.value == nb.value)
        result = make(na.value, set_union(na.down, nb.down), set_union(na.right, nb.right));
    else if (na.value < nb.value)
        result = make(na.value, na.down, set_union(na.right, b));
    else
        result = make(nb.value, nb.down, set_union(nb.right, a));
    if (union_memo_.size() >= kUnionMemoCap) union_memo_.clear();
    union_memo_.emplace(key, result);
    return result;
}

double LddStore::count_states(Ref r) {
    if (r == kFalse) return 0.0;
    if (r == kTrue) return 1.0;
    if (auto it = count_memo_.find(r); it != count_memo_.end()) return it->second;
    const Node n = nodes_[r];
    double c = count_states(n.down) + count_states(n.right);
    count_memo_.emplace(r, c);
    return c;
}

std::size_t LddStore::node_count(Ref r) const {
    if (is_terminal(r)) return 0;
    std::unordered_set<Ref> seen;
    std::vector<Ref> stack{r};
    seen.insert(r);
    while (!stack.empty()) {
        Ref cur = stack.back();
        stack.pop_back();
        for (Ref next : {nodes_[cur].down, nodes_[cur].right})
            if (!is_terminal(next) && seen.insert(next).second) stack.push_back(next);
    }
    return seen.size();
}

namespace {
void enumerate_rec(const LddStore& store, LddStore::Ref r, std::vector<int>& prefix,
                   std::vector<std::vector<int>>& out) {
    if (r == LddStore::kTrue) {
        out.push_back(prefix);
        return;
    }
    for (LddStore::Ref cur = r; cur != LddStore::kFalse; cur = store.right(cur)) {
        prefix.push_back(store.value(cur));
        enumerate_rec(store, store.down(cur), prefix, out);
        prefix.pop_back();
    }
}
}  // namespace

std::vector<std::vector<int>> LddStore::enumerate(Ref r) const {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    enumerate_rec(*this, r, prefix, out);
    return out;
}

void LddStore::incref(Ref r) {
    if (is_terminal(r)) return;
    if (nodes_[r].refs++ == 0) {
        ++live_;
        if (live_ > peak_) peak_ = live_;
        incref(nodes_[r].down);
        incref(nodes_[r].right);
    }
}

void LddStore::decref(Ref r) {
    if (is_terminal(r)) return;
    if (--nodes_[r].refs == 0) {
        --live_;
        decref(nodes_[r].down);
        decref(nodes_[r].right);
    }
}

}  // namespace bandwave
