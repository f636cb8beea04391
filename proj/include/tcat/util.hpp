#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tcat {

// string identifiers interned to dense indices
class IdIndex {
public:
    int add(const std::string& id) {
        auto [it, fresh] = pos_.emplace(id, (int)ids_.size());
        if (!fresh) throw std::invalid_argument("duplicate identifier: " + id);
        ids_.push_back(id);
        return it->second;
    }
    int get(const std::string& id) const {
        auto it = pos_.find(id);
        if (it == pos_.end()) throw std::out_of_range("unknown identifier: " + id);
        return it->second;
    }
    int find(const std::string& id) const {
        auto it = pos_.find(id);
        return it == pos_.end() ? -1 : it->second;
    }
    const std::string& name(int i) const { return ids_.at((std::size_t)i); }
    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& names() const { return ids_; }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> pos_;
};

inline std::int64_t pair_key(int a, int b) {
    return ((std::int64_t)a << 32) | (std::uint32_t)b;
}

// union-find over 0..n-1
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = (int)i;
    }
    int find(int x) {
        while (parent_[(std::size_t)x] != x) {
            parent_[(std::size_t)x] = parent_[(std::size_t)parent_[(std::size_t)x]];
            x = parent_[(std::size_t)x];
        }
        return x;
    }
    void join(int a, int b) { parent_[(std::size_t)find(a)] = find(b); }
    // dense class numbering in order of first appearance
    std::vector<int> classes(int* count = nullptr) {
        std::vector<int> cls(parent_.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            int r = find((int)i);
            if (cls[(std::size_t)r] < 0) cls[(std::size_t)r] = next++;
            cls[i] = cls[(std::size_t)r];
        }
        if (count) *count = next;
        return cls;
    }

private:
    std::vector<int> parent_;
};

}  // namespace tcat
