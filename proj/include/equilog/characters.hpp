#pragma once

#include <map>
#include <vector>

#include "equilog/arith.hpp"
#include "equilog/errors.hpp"
#include "equilog/partition.hpp"

namespace equilog {

// Rational-valued function on the conjugacy classes of S_n, stored in the
// canonical class order of partitions(n).
struct ClassFunction {
    int n = 0;
    std::vector<Rat> values;

    ClassFunction() = default;
    explicit ClassFunction(int n_);
    Rat& at(const Partition& mu);
    const Rat& at(const Partition& mu) const;
};

// Multiset of irreducibles of S_n; absent key means multiplicity zero.
struct IrrDecomposition {
    int n = 0;
    std::map<Partition, long long, PartitionLess> mult;

    IrrDecomposition() = default;
    explicit IrrDecomposition(int n_) : n(n_) {}

    long long multiplicity(const Partition& lambda) const;
    void add(const Partition& lambda, long long count);
    Int dim() const;
    bool is_zero() const { return mult.empty(); }
    bool operator==(const IrrDecomposition&) const = default;
};

// Character table of S_n, computed once via the Murnaghan-Nakayama recursion
// (border strips removed from the largest cycle first) and safe for
// concurrent read afterwards.
class CharTable {
  public:
    static const CharTable& of(int n);

    int n() const { return n_; }
    const std::vector<Partition>& classes() const { return classes_; }
    int index(const Partition& p) const;
    long long value(int lambda_idx, int mu_idx) const { return chi_[lambda_idx][mu_idx]; }

  private:
    explicit CharTable(int n);
    int n_;
    std::vector<Partition> classes_;
    std::vector<std::vector<long long>> chi_;
};

// chi^lambda evaluated at cycle type mu; requires |lambda| == |mu|.
long long character_value(const Partition& lambda, const Partition& mu);

// Hook length formula; equals character_value(lambda, [1,...,1]).
long long dimension(const Partition& lambda);

// (1/n!) sum_mu |class(mu)| f(mu) g(mu)
Rat inner_product(const ClassFunction& f, const ClassFunction& g);

ClassFunction to_class_function(const IrrDecomposition& a);

// Multiplicity of lambda is <f, chi^lambda>. With honest set, any negative or
// non-integral multiplicity raises.
IrrDecomposition decompose(const ClassFunction& f, bool honest = true);

// Internal tensor product: pointwise product of characters, then decompose.
IrrDecomposition kronecker(const IrrDecomposition& a, const IrrDecomposition& b);

// Branching to S_{n-1}: each V_lambda contributes one V_mu per removable box.
IrrDecomposition restrict_rep(const IrrDecomposition& a);

}  // namespace equilog
