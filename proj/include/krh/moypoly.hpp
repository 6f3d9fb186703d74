#ifndef KRH_MOYPOLY_HPP
#define KRH_MOYPOLY_HPP

#include "krh/diagram.hpp"
#include "krh/laurent.hpp"

#include <utility>

namespace krh {

struct GraphPoly {
    Laurent2Frac value;
    int strands = 0;
};

// HOMFLY polynomial of a closed braid graph by Wu induction over the MOY
// relations; memoized on the minimal cyclic rotation of the column word.
GraphPoly graph_homfly(const ColumnWord& g);

struct LinkPoly {
    Laurent2Frac unreduced;  // state-sum value P~
    Laurent2Frac reduced;    // P~ / ((a - a^-1)/(q - q^-1)); a polynomial for knots
};

LinkPoly link_homfly_moy(const BraidWord& w);
LinkPoly link_homfly_moy(const TangleDiagram& d);

// Independent oracle: skein-relation recursion over crossing switches and
// smoothings, with descending closed braids (unlinks) as the base case.
Laurent2Frac link_homfly_skein(const BraidWord& w);

// [q_min - 2 pad, q_max + 2 pad] around the support of P
std::pair<int, int> q_support_window(const Laurent2& p, int pad);

// |P(a=1, q=i)| -- the link determinant
long link_determinant(const Laurent2& reduced_p);

} // namespace krh

#endif
