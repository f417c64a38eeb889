#ifndef GRIDREC_BINOMIAL_HEAP_HPP
#define GRIDREC_BINOMIAL_HEAP_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gridrec {

using NodeId = std::uint64_t;

/// Priority key: hop distance first, node id as tie-break.
struct HeapKey {
    std::uint32_t distance = 0;
    NodeId id = 0;

    friend bool operator==(const HeapKey&, const HeapKey&) = default;
    friend std::strong_ordering operator<=>(const HeapKey& a, const HeapKey& b) {
        if (auto c = a.distance <=> b.distance; c != 0) {
            return c;
        }
        return a.id <=> b.id;
    }
};

/// Refers to a live entry by its id. Becomes stale once the entry is removed.
struct EntryHandle {
    NodeId id = 0;
};

struct HeapError : std::logic_error {
    using std::logic_error::logic_error;
};

struct EmptyHeapError : HeapError {
    EmptyHeapError() : HeapError("heap is empty") {}
};

struct DuplicateIdError : HeapError {
    explicit DuplicateIdError(NodeId id)
        : HeapError("id already present in heap: " + std::to_string(id)) {}
};

struct OverlappingIdsError : HeapError {
    explicit OverlappingIdsError(NodeId id)
        : HeapError("heaps share id: " + std::to_string(id)) {}
};

struct KeyIncreaseError : HeapError {
    KeyIncreaseError() : HeapError("new key is not smaller than current key") {}
};

struct StaleHandleError : HeapError {
    explicit StaleHandleError(NodeId id)
        : HeapError("handle refers to a removed entry: " + std::to_string(id)) {}
};

/// Outcome of a structural audit. Violations are data, not exceptions.
struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

struct HeapFaultInjector;

/// Mergeable min-heap of binomial trees keyed by (distance, id).
///
/// Root list is singly linked and sorted by ascending degree; every id is
/// unique among live entries. Move-only: a heap value has exactly one owner.
class BinomialHeap {
public:
    BinomialHeap() = default;
    ~BinomialHeap();
    BinomialHeap(const BinomialHeap&) = delete;
    BinomialHeap& operator=(const BinomialHeap&) = delete;
    BinomialHeap(BinomialHeap&& other) noexcept;
    BinomialHeap& operator=(BinomialHeap&& other) noexcept;

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::size_t root_count() const;
    bool contains(NodeId id) const { return index_.count(id) != 0; }

    /// Inserts a new entry. Throws DuplicateIdError if key.id is live already.
    EntryHandle insert(HeapKey key);

    /// Least key without removal. Throws EmptyHeapError.
    HeapKey minimum() const;

    /// Removes and returns the least key. Throws EmptyHeapError.
    HeapKey extract_min();

    /// Melds `other` into this heap; `other` is left empty.
    /// Throws OverlappingIdsError (before any mutation) if id sets intersect.
    void merge(BinomialHeap& other);

    /// Replaces the entry's key with a strictly smaller one (same id) and
    /// restores min-heap order by bubbling toward the root.
    void decrease_key(EntryHandle h, HeapKey new_key);

    /// Removes the entry behind `h` (decrease-to-sentinel, then extract).
    void erase(EntryHandle h);

    /// Current key of a live entry. Throws StaleHandleError.
    HeapKey key_of(EntryHandle h) const;

    /// Full structural audit: heap order, degree uniqueness, binomial shape,
    /// size law, index consistency. Never mutates.
    ValidationReport validate() const;

    /// One line per root: `degree=<k> size=<2^k> min=(<d>,<id>)`.
    std::string dump() const;

    std::uint64_t comparisons() const { return comparisons_; }
    void reset_comparisons() { comparisons_ = 0; }

private:
    struct Node {
        HeapKey key;
        bool sentinel = false;  // orders below every regular key; never at rest
        unsigned degree = 0;
        Node* parent = nullptr;
        Node* child = nullptr;    // leftmost child (highest degree)
        Node* sibling = nullptr;  // next root, or next younger child
    };

    bool node_less(const Node* a, const Node* b) const;
    static Node* merge_root_lists(Node* a, Node* b);
    Node* unite(Node* h1, Node* h2);
    static void link(Node* child, Node* parent);
    void swap_payload(Node* a, Node* b);
    Node* find_node(EntryHandle h) const;
    Node* detach_min_root();
    void remove_root(Node* root);
    void destroy_all();
    std::size_t check_tree(const Node* n, ValidationReport& report) const;

    Node* head_ = nullptr;
    std::size_t size_ = 0;
    std::unordered_map<NodeId, Node*> index_;
    mutable std::uint64_t comparisons_ = 0;

    friend struct HeapFaultInjector;
};

/// Plants structural defects for exercising validate(). Test/selftest use.
struct HeapFaultInjector {
    /// Swaps a root's key with its first child's. Needs a tree of degree >= 1.
    static bool plant_order_violation(BinomialHeap& heap);
    /// Relabels the second root with the first root's degree. Needs 2+ roots.
    static bool plant_degree_collision(BinomialHeap& heap);
};

}  // namespace gridrec

#endif
