#pragma once

// Group algebra C[G] of a finite group given by its multiplication table.
// Delta(g) = g (x) g, epsilon(g) = 1, S(g) = g^-1 = g^*.

#include <memory>
#include <string>
#include <vector>

#include "hopfmorita/errors.hpp"
#include "hopfmorita/hopf.hpp"

namespace hopfmorita {

class GroupHopf {
public:
    using Key = int;

    /// table[g][h] = gh. Throws ConstructionError unless the table is a group.
    explicit GroupHopf(std::vector<std::vector<int>> table, std::vector<std::string> names = {})
        : table_(std::move(table)), names_(std::move(names)) {
        const int n = order();
        if (n < 1) throw ConstructionError("group must have at least one element");
        for (const auto& row : table_) {
            if (static_cast<int>(row.size()) != n) throw ConstructionError("group table must be square");
            for (int x : row)
                if (x < 0 || x >= n) throw ConstructionError("group table entry out of range");
        }
        if (!names_.empty() && static_cast<int>(names_.size()) != n)
            throw ConstructionError("need one name per group element");

        identity_ = -1;
        for (int e = 0; e < n && identity_ < 0; ++e) {
            bool ok = true;
            for (int g = 0; g < n && ok; ++g) ok = at(e, g) == g && at(g, e) == g;
            if (ok) identity_ = e;
        }
        if (identity_ < 0) throw ConstructionError("group table has no identity");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (at(at(a, b), c) != at(a, at(b, c)))
                        throw ConstructionError("group table is not associative at (" + label(a) + "," + label(b) +
                                                "," + label(c) + ")");
        inverse_.assign(static_cast<std::size_t>(n), -1);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h)
                if (at(g, h) == identity_) inverse_[static_cast<std::size_t>(g)] = h;
            if (inverse_[static_cast<std::size_t>(g)] < 0) throw ConstructionError("element " + label(g) + " has no inverse");
        }
    }

    /// Z/n with the additive table.
    static GroupHopf cyclic(int n) {
        if (n < 1) throw ConstructionError("cyclic group order must be >= 1");
        std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
        return GroupHopf(std::move(t));
    }

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int at(int g, int h) const { return table_.at(static_cast<std::size_t>(g)).at(static_cast<std::size_t>(h)); }
    int inverse(int g) const { return inverse_.at(static_cast<std::size_t>(g)); }
    const std::vector<std::vector<int>>& table() const { return table_; }

    std::vector<int> basis() const {
        std::vector<int> out;
        for (int g = 0; g < order(); ++g) out.push_back(g);
        return out;
    }
    int unit_key() const { return identity_; }
    int degree(int) const { return 0; }
    int truncation() const { return 0; }

    Linear<int> mul(int g, int h) const { return Linear<int>(at(g, h)); }
    std::vector<SweedlerTerm<int>> coproduct(int g) const { return {{Scalar(1), g, g}}; }
    Scalar counit(int) const { return Scalar(1); }
    Linear<int> antipode(int g) const { return Linear<int>(inverse(g)); }
    Linear<int> star(int g) const { return Linear<int>(inverse(g)); }

    std::string label(int g) const {
        if (!names_.empty()) return names_.at(static_cast<std::size_t>(g));
        return "g" + std::to_string(g);
    }

private:
    std::vector<std::vector<int>> table_;
    std::vector<std::string> names_;
    int identity_ = 0;
    std::vector<int> inverse_;
};

using GroupHopfPtr = std::shared_ptr<const GroupHopf>;

static_assert(HopfStarAlgebra<GroupHopf>);

}  // namespace hopfmorita
