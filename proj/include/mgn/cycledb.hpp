#ifndef MGN_CYCLEDB_HPP
#define MGN_CYCLEDB_HPP

#include "mgn/hurwitz.hpp"
#include "mgn/iso.hpp"

#include <string>
#include <vector>

namespace mgn {

struct CycleRecord {
    HurwitzCycleRef ref;
    TautClass cls;  // the normalized cycle norm * pi_* phi_* [H]
    std::string provenance;
    std::string key() const { return ref.str(); }
};

class CycleDB {
public:
    CycleDB() = default;
    static CycleDB load_dir(const std::string& dir);
    static std::string default_dir();
    void save_dir(const std::string& dir) const;

    void add(CycleRecord r);
    const std::vector<CycleRecord>& records() const { return records_; }

    // stored record matching q up to reordering of branches; fills the label map record -> query
    const CycleRecord* find(const HurwitzCycleRef& q, std::vector<std::pair<int, int>>* labels = nullptr) const;
    // pi_* phi_* [H] (normalization removed) on M_{g,n} with labels 1..n in the query order.
    // Falls back to the pairing solver when allowed; throws std::out_of_range naming the missing cycle.
    TautClass raw_class(const HurwitzCycleRef& q);

    bool auto_solve = true;

private:
    std::vector<CycleRecord> records_;
};

struct HurwitzTerm {
    Lift lift;
    std::vector<int> S;         // gamma edges in the image
    Contraction contraction;    // gamma_S
    IsoMap iso;                 // gamma_S without forgotten legs -> A
    DecSum excess;
    Rational multiplicity;
    HurwitzCycleRef cycle;
    std::string describe() const;
};

std::vector<HurwitzTerm> boundary_pullback(const HurwitzCycleRef& c, const StableGraph& A);
// class on the factors of M_A (labels: legs of A and 1000 + half-edge)
TautClass resolve_terms(const std::vector<HurwitzTerm>& terms, const StableGraph& A, CycleDB& db);

struct Constraints {
    RatMatrix m;
    RatVector rhs;
};
// xi_A^*(sum a_i D_i) = resolved pullback, tested against products of complementary strata on M_A
Constraints boundary_constraints(const HurwitzCycleRef& c, const std::vector<TautClass>& generators,
                                 const std::vector<StableGraph>& As, CycleDB& db);

// glue pairs of labels into edges, then relabel; factor t of x becomes factor fmap[t] of target
TautClass transport(const TautClass& x, const Space& target, const std::vector<int>& fmap,
                    const std::vector<std::pair<int, int>>& relabel_map,
                    const std::vector<std::pair<int, int>>& glue = {});

}  // namespace mgn

#endif
