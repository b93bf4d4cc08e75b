#pragma once

#include <cstddef>
#include <string>

#include "povm/errors.hpp"

namespace povm {

/// Which diagonal number operator a truncated phase observable transforms
/// against: the first d levels of the number operator on N, or the 2L+1
/// central modes -L..L on Z. In both schemes consecutive rows carry
/// consecutive integer labels, so a row difference equals a label difference.
class Indexing {
public:
    enum class Kind { nat, integer };

    static Indexing nat_truncated(long d) {
        if (d < 1) throw RangeError("nat indexing needs dimension >= 1");
        return Indexing(Kind::nat, static_cast<std::size_t>(d), 0);
    }

    static Indexing int_truncated(long order) {
        if (order < 0) throw RangeError("int indexing needs order >= 0");
        return Indexing(Kind::integer, static_cast<std::size_t>(2 * order + 1), -order);
    }

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }

    /// Integer label of row i (0..d-1 on N, -L..L on Z).
    long label(std::size_t i) const { return first_ + static_cast<long>(i); }

    bool operator==(const Indexing& o) const {
        return kind_ == o.kind_ && dim_ == o.dim_ && first_ == o.first_;
    }
    bool operator!=(const Indexing& o) const { return !(*this == o); }

    std::string describe() const {
        if (kind_ == Kind::nat) return "nat[0.." + std::to_string(dim_ - 1) + "]";
        return "int[" + std::to_string(first_) + ".." + std::to_string(-first_) + "]";
    }

private:
    Indexing(Kind k, std::size_t dim, long first) : kind_(k), dim_(dim), first_(first) {}

    Kind kind_;
    std::size_t dim_;
    long first_;
};

}  // namespace povm
