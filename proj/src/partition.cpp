#include "equilog/partition.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace equilog {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

int Partition::size() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

std::string Partition::str() const {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    return s;
}

Partition Partition::parse(const std::string& s) {
    std::vector<int> parts;
    if (!s.empty()) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(std::stoi(tok));
    }
    return Partition(std::move(parts));
}

bool partition_less(const Partition& a, const Partition& b) {
    int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    // reverse-lexicographic: [n] first, [1,...,1] last
    return std::lexicographical_compare(b.parts.begin(), b.parts.end(), a.parts.begin(),
                                        a.parts.end());
}

size_t PartitionHash::operator()(const Partition& p) const {
    size_t h = 1469598103934665603ull;
    for (int v : p.parts) {
        h ^= static_cast<size_t>(v);
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<Partition> partitions(int n) {
    if (n < 0) throw std::invalid_argument("partitions: n must be non-negative");
    std::vector<Partition> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    // descending generation starting from [n]
    std::vector<int> cur{n};
    for (;;) {
        out.push_back(Partition(cur));
        // find rightmost part > 1
        int k = static_cast<int>(cur.size()) - 1;
        while (k >= 0 && cur[k] == 1) --k;
        if (k < 0) break;
        int rem = static_cast<int>(cur.size()) - k;  // cur[k] plus trailing ones
        rem += cur[k] - 1;
        int newv = cur[k] - 1;
        cur.resize(k);
        while (rem > 0) {
            int take = std::min(newv, rem);
            cur.push_back(take);
            rem -= take;
        }
    }
    return out;
}

Int z_factor(const Partition& mu) {
    Int z = 1;
    int run = 0;
    for (size_t i = 0; i < mu.parts.size(); ++i) {
        ++run;
        z *= mu.parts[i];
        if (i + 1 == mu.parts.size() || mu.parts[i + 1] != mu.parts[i]) {
            z *= factorial(run);
            run = 0;
        }
    }
    return z;
}

Int class_size(const Partition& mu) { return factorial(mu.size()) / z_factor(mu); }

}  // namespace equilog
