#ifndef KRH_DIAGRAM_HPP
#define KRH_DIAGRAM_HPP

#include "krh/multipoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace krh {

// ---------------------------------------------------------------------------
// Braid words

struct BraidLetter {
    int column;  // 1 .. strands-1
    enum Kind { positive, negative, singular } kind = positive;
    bool operator==(const BraidLetter&) const = default;
};

struct BraidWord {
    int strands = 1;
    std::vector<BraidLetter> letters;

    int writhe() const;
    bool ordinary() const;  // no singular letters
    bool validate() const;

    // text form: "b=<int>; w=<tokens>" with tokens <n>, -<n>, s<n>
    static BraidWord parse(const std::string& text);
    std::string format() const;

    BraidWord mirrored() const;

    // strand permutation of the open braid, bottom to top; every crossing
    // (ordinary or singular) is a transverse strand swap
    std::vector<int> permutation() const;
    int link_components() const;

    bool operator==(const BraidWord&) const = default;
};

// connected sum of braid closures: b1 + b2 - 1 strands, second word shifted
BraidWord connected_sum(const BraidWord& a, const BraidWord& b);

// ---------------------------------------------------------------------------
// Tangle diagrams

struct Vertex {
    enum Kind { mark, crossing_pos, crossing_neg, crossing_sing, crossing_split } kind;
    std::vector<int> in, out;  // edge labels; crossings: in {i,j}, out {k,l}, left first

    bool is_crossing() const { return kind != mark; }
    bool operator==(const Vertex&) const = default;
};

struct TangleDiagram {
    int num_edges = 0;  // labels 1..num_edges
    std::vector<Vertex> vertices;
    std::vector<int> ends_in;   // edges entering the diagram (epsilon = -1)
    std::vector<int> ends_out;  // edges leaving the diagram (epsilon = +1)

    // braid provenance: column of each crossing vertex, in word order
    std::vector<int> braid_columns;
    int braid_strands = 0;

    bool closed() const { return ends_in.empty() && ends_out.empty(); }
    void validate() const;  // valence/orientation constraints
    int num_crossings() const;
    std::vector<int> crossing_vertices() const;

    // connected components of the underlying graph; returns component id per
    // edge (0-based) and the number of closed components
    std::pair<std::vector<int>, int> graph_components() const;
    int closed_graph_components() const;

    // link-level components (tracing through crossings); closed diagrams only
    std::vector<int> link_component_of_edge() const;
    int link_components() const;

    std::string dump_json() const;
};

TangleDiagram close_braid(const BraidWord& w);

// surgeries (Sec. 2.2 operations)
TangleDiagram disjoint_union(const TangleDiagram& a, const TangleDiagram& b);
TangleDiagram identify_ends(const TangleDiagram& d, int out_end, int in_end);
TangleDiagram insert_mark(const TangleDiagram& d, int edge);
TangleDiagram remove_mark(const TangleDiagram& d, int mark_vertex);
TangleDiagram mirror(const TangleDiagram& d);
TangleDiagram connected_sum(const TangleDiagram& a, int ea, const TangleDiagram& b, int eb);

// ---------------------------------------------------------------------------
// Edge ring

struct EdgeRingPresentation {
    std::vector<int> free_vars;          // sorted edge labels kept as generators
    std::map<int, MultiPoly> eliminated;  // edge label -> linear poly in free vars

    MultiPoly to_free(const MultiPoly& p) const { return p.substitute(eliminated); }
    MultiPoly edge_var(int edge) const {
        auto it = eliminated.find(edge);
        return it == eliminated.end() ? MultiPoly::var(edge) : it->second;
    }
};

EdgeRingPresentation edge_ring(const TangleDiagram& d);

// ---------------------------------------------------------------------------
// Braid graphs (all crossings singular) as column words

struct ColumnWord {
    int strands = 0;
    std::vector<int> columns;

    bool empty() const { return strands == 0; }
    std::vector<int> canonical_key() const;  // minimal cyclic rotation, strands prepended
    bool operator==(const ColumnWord&) const = default;
    bool operator<(const ColumnWord& o) const {
        return std::pair(strands, columns) < std::pair(o.strands, o.columns);
    }
};

int wu_complexity(const ColumnWord& g);

TangleDiagram graph_diagram(const ColumnWord& g);  // closure as a tangle diagram

struct MoyMove {
    enum Type { none, O, I, II, III } type = none;
    int strand = 0;                 // move O: deleted strand; move I: deleted strand
    std::vector<int> positions;     // letter positions involved (word indices)
};

// A complexity-decreasing MOY move; O/I anywhere, II/III inside the open word
// (Wu's lemma guarantees one exists for nonempty closures).
MoyMove find_moy_move(const ColumnWord& g);

// Diagrams replacing g under the move, with scalar bookkeeping left to moypoly.
ColumnWord delete_strand(const ColumnWord& g, int strand, const std::vector<int>& drop_positions);
ColumnWord replace_positions(const ColumnWord& g, const std::vector<int>& positions,
                             const std::vector<int>& new_columns_at_first);

// ---------------------------------------------------------------------------
// MOY states

struct MoyState {
    std::vector<bool> singular;  // per ordinary crossing, word order
    int weight = 0;              // mu
    ColumnWord graph;            // resolved braid graph
    TangleDiagram resolved;      // resolved diagram (crossings -> marks or singular)
};

std::vector<MoyState> moy_states(const BraidWord& w);
std::vector<MoyState> moy_states(const TangleDiagram& d);

} // namespace krh

#endif
