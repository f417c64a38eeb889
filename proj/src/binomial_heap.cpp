#include "gridrec/binomial_heap.hpp"

#include <bit>
#include <sstream>
#include <utility>

namespace gridrec {

BinomialHeap::~BinomialHeap() { destroy_all(); }

BinomialHeap::BinomialHeap(BinomialHeap&& other) noexcept
    : head_(std::exchange(other.head_, nullptr)),
      size_(std::exchange(other.size_, 0)),
      index_(std::move(other.index_)),
      comparisons_(std::exchange(other.comparisons_, 0)) {
    other.index_.clear();
}

BinomialHeap& BinomialHeap::operator=(BinomialHeap&& other) noexcept {
    if (this != &other) {
        destroy_all();
        head_ = std::exchange(other.head_, nullptr);
        size_ = std::exchange(other.size_, 0);
        index_ = std::move(other.index_);
        other.index_.clear();
        comparisons_ = std::exchange(other.comparisons_, 0);
    }
    return *this;
}

void BinomialHeap::destroy_all() {
    // Iterative post-order over all trees.
    Node* root = head_;
    while (root) {
        Node* next_root = root->sibling;
        std::vector<Node*> stack{root};
        while (!stack.empty()) {
            Node* n = stack.back();
            stack.pop_back();
            for (Node* c = n->child; c;) {
                Node* cs = c->sibling;
                stack.push_back(c);
                c = cs;
            }
            delete n;
        }
        root = next_root;
    }
    head_ = nullptr;
    size_ = 0;
    index_.clear();
}

bool BinomialHeap::node_less(const Node* a, const Node* b) const {
    ++comparisons_;
    if (a->sentinel != b->sentinel) {
        return a->sentinel;
    }
    return a->key < b->key;
}

std::size_t BinomialHeap::root_count() const {
    std::size_t n = 0;
    for (Node* r = head_; r; r = r->sibling) {
        ++n;
    }
    return n;
}

void BinomialHeap::link(Node* child, Node* parent) {
    child->parent = parent;
    child->sibling = parent->child;
    parent->child = child;
    ++parent->degree;
}

BinomialHeap::Node* BinomialHeap::merge_root_lists(Node* a, Node* b) {
    // Merge two degree-sorted root lists; degrees only, no key comparisons.
    Node head{};
    Node* tail = &head;
    while (a && b) {
        if (a->degree <= b->degree) {
            tail->sibling = a;
            a = a->sibling;
        } else {
            tail->sibling = b;
            b = b->sibling;
        }
        tail = tail->sibling;
    }
    tail->sibling = a ? a : b;
    return head.sibling;
}

BinomialHeap::Node* BinomialHeap::unite(Node* h1, Node* h2) {
    Node* head = merge_root_lists(h1, h2);
    if (!head) {
        return nullptr;
    }
    Node* prev = nullptr;
    Node* x = head;
    Node* next = x->sibling;
    while (next) {
        if (x->degree != next->degree ||
            (next->sibling && next->sibling->degree == x->degree)) {
            prev = x;
            x = next;
        } else if (!node_less(next, x)) {
            x->sibling = next->sibling;
            link(next, x);
        } else {
            if (prev) {
                prev->sibling = next;
            } else {
                head = next;
            }
            link(x, next);
            x = next;
        }
        next = x->sibling;
    }
    return head;
}

EntryHandle BinomialHeap::insert(HeapKey key) {
    if (index_.count(key.id)) {
        throw DuplicateIdError(key.id);
    }
    Node* n = new Node{key};
    index_.emplace(key.id, n);
    head_ = unite(head_, n);
    ++size_;
    return EntryHandle{key.id};
}

HeapKey BinomialHeap::minimum() const {
    if (!head_) {
        throw EmptyHeapError{};
    }
    const Node* best = head_;
    for (const Node* r = head_->sibling; r; r = r->sibling) {
        if (node_less(r, best)) {
            best = r;
        }
    }
    return best->key;
}

BinomialHeap::Node* BinomialHeap::detach_min_root() {
    Node* best = head_;
    Node* best_prev = nullptr;
    Node* prev = head_;
    for (Node* r = head_->sibling; r; prev = r, r = r->sibling) {
        if (node_less(r, best)) {
            best = r;
            best_prev = prev;
        }
    }
    if (best_prev) {
        best_prev->sibling = best->sibling;
    } else {
        head_ = best->sibling;
    }
    best->sibling = nullptr;
    return best;
}

void BinomialHeap::remove_root(Node* root) {
    // Children are linked highest-degree first; reversing yields an
    // ascending-degree root list ready for unite().
    Node* kids = nullptr;
    for (Node* c = root->child; c;) {
        Node* next = c->sibling;
        c->parent = nullptr;
        c->sibling = kids;
        kids = c;
        c = next;
    }
    head_ = unite(head_, kids);
    index_.erase(root->key.id);
    delete root;
    --size_;
}

HeapKey BinomialHeap::extract_min() {
    if (!head_) {
        throw EmptyHeapError{};
    }
    Node* min = detach_min_root();
    HeapKey key = min->key;
    remove_root(min);
    return key;
}

void BinomialHeap::merge(BinomialHeap& other) {
    if (this == &other) {
        return;
    }
    const auto& small = index_.size() <= other.index_.size() ? index_ : other.index_;
    const auto& big = index_.size() <= other.index_.size() ? other.index_ : index_;
    for (const auto& [id, node] : small) {
        if (big.count(id)) {
            throw OverlappingIdsError(id);
        }
    }
    for (const auto& [id, node] : other.index_) {
        index_.emplace(id, node);
    }
    head_ = unite(head_, other.head_);
    size_ += other.size_;
    other.head_ = nullptr;
    other.size_ = 0;
    other.index_.clear();
}

BinomialHeap::Node* BinomialHeap::find_node(EntryHandle h) const {
    auto it = index_.find(h.id);
    if (it == index_.end()) {
        throw StaleHandleError(h.id);
    }
    return it->second;
}

void BinomialHeap::swap_payload(Node* a, Node* b) {
    std::swap(a->key, b->key);
    std::swap(a->sentinel, b->sentinel);
    index_[a->key.id] = a;
    index_[b->key.id] = b;
}

void BinomialHeap::decrease_key(EntryHandle h, HeapKey new_key) {
    Node* n = find_node(h);
    if (new_key.id != h.id) {
        throw HeapError("decrease_key must preserve the entry id");
    }
    ++comparisons_;
    if (new_key >= n->key) {
        throw KeyIncreaseError{};
    }
    n->key = new_key;
    while (n->parent && node_less(n, n->parent)) {
        swap_payload(n, n->parent);
        n = n->parent;
    }
}

void BinomialHeap::erase(EntryHandle h) {
    Node* n = find_node(h);
    // Decrease to the sentinel, which outranks every regular key, then let
    // extract_min remove it. The sentinel dies with the node.
    n->sentinel = true;
    while (n->parent) {
        swap_payload(n, n->parent);
        n = n->parent;
    }
    Node* min = detach_min_root();
    remove_root(min);
}

HeapKey BinomialHeap::key_of(EntryHandle h) const { return find_node(h)->key; }

std::size_t BinomialHeap::check_tree(const Node* n, ValidationReport& report) const {
    std::size_t count = 1;
    unsigned expected_degree = n->degree;
    unsigned seen = 0;
    if (n->sentinel) {
        report.violations.push_back("sentinel key at rest on id " +
                                    std::to_string(n->key.id));
    }
    auto it = index_.find(n->key.id);
    if (it == index_.end() || it->second != n) {
        report.violations.push_back("index inconsistent for id " +
                                    std::to_string(n->key.id));
    }
    for (const Node* c = n->child; c; c = c->sibling) {
        ++seen;
        if (c->parent != n) {
            report.violations.push_back("broken parent link at id " +
                                        std::to_string(c->key.id));
        }
        if (c->degree != expected_degree - seen) {
            report.violations.push_back("child degree out of sequence under id " +
                                        std::to_string(n->key.id));
        }
        if (c->key < n->key) {
            report.violations.push_back(
                "min-heap order violated: id " + std::to_string(c->key.id) +
                " below id " + std::to_string(n->key.id));
        }
        count += check_tree(c, report);
    }
    if (seen != n->degree) {
        report.violations.push_back("degree mismatch at id " +
                                    std::to_string(n->key.id));
    }
    return count;
}

ValidationReport BinomialHeap::validate() const {
    ValidationReport report;
    std::size_t total = 0;
    std::size_t roots = 0;
    int last_degree = -1;
    for (const Node* r = head_; r; r = r->sibling) {
        ++roots;
        if (r->parent) {
            report.violations.push_back("root has a parent: id " +
                                        std::to_string(r->key.id));
        }
        if (static_cast<int>(r->degree) <= last_degree) {
            report.violations.push_back(
                "duplicate or unordered root degree " + std::to_string(r->degree));
        }
        last_degree = static_cast<int>(r->degree);
        std::size_t tree = check_tree(r, report);
        if (tree != (std::size_t{1} << r->degree)) {
            report.violations.push_back("tree of degree " +
                                        std::to_string(r->degree) + " holds " +
                                        std::to_string(tree) + " entries");
        }
        total += tree;
    }
    if (total != size_) {
        report.violations.push_back("entry count " + std::to_string(total) +
                                    " disagrees with size " + std::to_string(size_));
    }
    if (roots != static_cast<std::size_t>(std::popcount(size_))) {
        report.violations.push_back("root count " + std::to_string(roots) +
                                    " != popcount(" + std::to_string(size_) + ")");
    }
    if (index_.size() != size_) {
        report.violations.push_back("index size disagrees with heap size");
    }
    return report;
}

std::string BinomialHeap::dump() const {
    std::ostringstream out;
    for (const Node* r = head_; r; r = r->sibling) {
        out << "degree=" << r->degree << " size=" << (std::size_t{1} << r->degree)
            << " min=(" << r->key.distance << "," << r->key.id << ")\n";
    }
    return out.str();
}

bool HeapFaultInjector::plant_order_violation(BinomialHeap& heap) {
    for (auto* r = heap.head_; r; r = r->sibling) {
        if (r->child) {
            std::swap(r->key, r->child->key);
            return true;
        }
    }
    return false;
}

bool HeapFaultInjector::plant_degree_collision(BinomialHeap& heap) {
    if (heap.head_ && heap.head_->sibling) {
        heap.head_->sibling->degree = heap.head_->degree;
        return true;
    }
    return false;
}

}  // namespace gridrec
