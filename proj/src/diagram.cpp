#include "krh/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace krh {

// ---------------------------------------------------------------------------
// BraidWord

int BraidWord::writhe() const {
    int w = 0;
    for (auto& l : letters) {
        if (l.kind == BraidLetter::positive) ++w;
        if (l.kind == BraidLetter::negative) --w;
    }
    return w;
}

bool BraidWord::ordinary() const {
    return std::none_of(letters.begin(), letters.end(),
                        [](const BraidLetter& l) { return l.kind == BraidLetter::singular; });
}

bool BraidWord::validate() const {
    if (strands < 1) return false;
    for (auto& l : letters)
        if (l.column < 1 || l.column >= strands) return false;
    return true;
}

BraidWord BraidWord::parse(const std::string& text) {
    BraidWord w;
    auto bad = [&](const std::string& msg) { throw error("braid parse: " + msg + " in '" + text + "'"); };
    size_t bpos = text.find("b=");
    if (bpos == std::string::npos) bad("missing b=");
    std::istringstream bs(text.substr(bpos + 2));
    if (!(bs >> w.strands) || w.strands < 1) bad("bad strand count");
    size_t wpos = text.find("w=");
    if (wpos != std::string::npos) {
        std::istringstream ws(text.substr(wpos + 2));
        std::string tok;
        while (ws >> tok) {
            BraidLetter l;
            if (tok[0] == 's') {
                l.kind = BraidLetter::singular;
                l.column = std::atoi(tok.c_str() + 1);
            } else {
                int v = std::atoi(tok.c_str());
                if (v == 0) bad("bad token '" + tok + "'");
                l.kind = v > 0 ? BraidLetter::positive : BraidLetter::negative;
                l.column = std::abs(v);
            }
            w.letters.push_back(l);
        }
    }
    if (!w.validate()) bad("letter out of range");
    return w;
}

std::string BraidWord::format() const {
    std::ostringstream os;
    os << "b=" << strands << "; w=";
    bool first = true;
    for (auto& l : letters) {
        if (!first) os << " ";
        first = false;
        if (l.kind == BraidLetter::singular)
            os << "s" << l.column;
        else
            os << (l.kind == BraidLetter::negative ? -l.column : l.column);
    }
    return os.str();
}

BraidWord BraidWord::mirrored() const {
    BraidWord m = *this;
    for (auto& l : m.letters) {
        if (l.kind == BraidLetter::positive)
            l.kind = BraidLetter::negative;
        else if (l.kind == BraidLetter::negative)
            l.kind = BraidLetter::positive;
    }
    return m;
}

std::vector<int> BraidWord::permutation() const {
    std::vector<int> p(strands);
    std::iota(p.begin(), p.end(), 0);
    for (auto& l : letters) std::swap(p[l.column - 1], p[l.column]);
    return p;
}

int BraidWord::link_components() const {
    std::vector<int> p = permutation();
    std::vector<bool> seen(strands, false);
    int n = 0;
    for (int s = 0; s < strands; ++s) {
        if (seen[s]) continue;
        ++n;
        for (int t = s; !seen[t]; t = p[t]) seen[t] = true;
    }
    return n;
}

BraidWord connected_sum(const BraidWord& a, const BraidWord& b) {
    BraidWord r;
    r.strands = a.strands + b.strands - 1;
    r.letters = a.letters;
    for (auto l : b.letters) {
        l.column += a.strands - 1;
        r.letters.push_back(l);
    }
    return r;
}

// ---------------------------------------------------------------------------
// TangleDiagram

void TangleDiagram::validate() const {
    std::vector<int> as_in(num_edges + 1, 0), as_out(num_edges + 1, 0);
    for (auto& v : vertices) {
        if (v.kind == Vertex::mark) {
            if (v.in.size() != 1 || v.out.size() != 1) throw error("mark valence");
        } else {
            if (v.in.size() != 2 || v.out.size() != 2) throw error("crossing valence");
        }
        for (int e : v.in) ++as_in[e];
        for (int e : v.out) ++as_out[e];
    }
    for (int e : ends_out) ++as_in[e];  // edge terminates at a free end
    for (int e : ends_in) ++as_out[e];  // edge originates at a free end
    for (int e = 1; e <= num_edges; ++e)
        if (as_in[e] != 1 || as_out[e] != 1)
            throw error("edge " + std::to_string(e) + " has inconsistent endpoints");
}

int TangleDiagram::num_crossings() const {
    int n = 0;
    for (auto& v : vertices)
        if (v.is_crossing()) ++n;
    return n;
}

std::vector<int> TangleDiagram::crossing_vertices() const {
    std::vector<int> ids;
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].is_crossing()) ids.push_back(static_cast<int>(i));
    return ids;
}

namespace {
struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};
} // namespace

std::pair<std::vector<int>, int> TangleDiagram::graph_components() const {
    UnionFind uf(num_edges + 1);
    for (auto& v : vertices) {
        int base = v.in.empty() ? (v.out.empty() ? 0 : v.out[0]) : v.in[0];
        for (int e : v.in) uf.unite(e, base);
        for (int e : v.out) uf.unite(e, base);
    }
    std::vector<int> comp(num_edges + 1, -1);
    std::map<int, int> roots;
    for (int e = 1; e <= num_edges; ++e) {
        int r = uf.find(e);
        auto it = roots.find(r);
        if (it == roots.end()) {
            int id = static_cast<int>(roots.size());
            roots[r] = id;
            comp[e] = id;
        } else {
            comp[e] = it->second;
        }
    }
    std::vector<bool> open(roots.size(), false);
    for (int e : ends_in) open[comp[e]] = true;
    for (int e : ends_out) open[comp[e]] = true;
    int closed_count = 0;
    for (bool o : open)
        if (!o) ++closed_count;
    return {comp, closed_count};
}

int TangleDiagram::closed_graph_components() const { return graph_components().second; }

std::vector<int> TangleDiagram::link_component_of_edge() const {
    if (!closed()) throw error("link components need a closed diagram");
    // successor of each edge under the flow through vertices
    std::vector<int> succ(num_edges + 1, 0);
    for (auto& v : vertices) {
        if (v.kind == Vertex::mark) {
            succ[v.in[0]] = v.out[0];
        } else if (v.kind == Vertex::crossing_split) {
            succ[v.in[0]] = v.out[0];
            succ[v.in[1]] = v.out[1];
        } else {
            // transverse double point: strands swap sides
            succ[v.in[0]] = v.out[1];
            succ[v.in[1]] = v.out[0];
        }
    }
    std::vector<int> comp(num_edges + 1, -1);
    int n = 0;
    for (int e = 1; e <= num_edges; ++e) {
        if (comp[e] >= 0) continue;
        for (int t = e; comp[t] < 0; t = succ[t]) comp[t] = n;
        ++n;
    }
    return comp;
}

int TangleDiagram::link_components() const {
    auto comp = link_component_of_edge();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin() + 1, comp.end());
}

std::string TangleDiagram::dump_json() const {
    std::ostringstream os;
    os << "{\"edges\":" << num_edges << ",\"vertices\":[";
    for (size_t i = 0; i < vertices.size(); ++i) {
        auto& v = vertices[i];
        const char* kinds[] = {"mark", "+", "-", "singular", "split"};
        if (i) os << ",";
        os << "{\"kind\":\"" << kinds[v.kind] << "\",\"in\":[";
        for (size_t j = 0; j < v.in.size(); ++j) os << (j ? "," : "") << v.in[j];
        os << "],\"out\":[";
        for (size_t j = 0; j < v.out.size(); ++j) os << (j ? "," : "") << v.out[j];
        os << "]}";
    }
    os << "]}";
    return os.str();
}

TangleDiagram close_braid(const BraidWord& w) {
    if (!w.validate()) throw error("close_braid: invalid braid word");
    TangleDiagram d;
    d.braid_strands = w.strands;
    std::vector<int> first(w.strands), cur(w.strands);
    for (int s = 0; s < w.strands; ++s) first[s] = cur[s] = ++d.num_edges;
    for (auto& l : w.letters) {
        int c = l.column - 1;
        Vertex v;
        v.kind = l.kind == BraidLetter::positive   ? Vertex::crossing_pos
                 : l.kind == BraidLetter::negative ? Vertex::crossing_neg
                                                   : Vertex::crossing_sing;
        v.in = {cur[c], cur[c + 1]};
        int k = ++d.num_edges, m = ++d.num_edges;
        v.out = {k, m};
        cur[c] = k;
        cur[c + 1] = m;
        d.vertices.push_back(v);
        d.braid_columns.push_back(l.column);
    }
    // one mark per closure arc, so every closed component has a vertex
    for (int s = 0; s < w.strands; ++s)
        d.vertices.push_back(Vertex{Vertex::mark, {cur[s]}, {first[s]}});
    d.validate();
    return d;
}

TangleDiagram disjoint_union(const TangleDiagram& a, const TangleDiagram& b) {
    TangleDiagram d = a;
    d.braid_columns.clear();
    d.braid_strands = 0;
    int off = a.num_edges;
    d.num_edges += b.num_edges;
    for (auto v : b.vertices) {
        for (int& e : v.in) e += off;
        for (int& e : v.out) e += off;
        d.vertices.push_back(v);
    }
    for (int e : b.ends_in) d.ends_in.push_back(e + off);
    for (int e : b.ends_out) d.ends_out.push_back(e + off);
    return d;
}

TangleDiagram identify_ends(const TangleDiagram& d, int out_end, int in_end) {
    auto has = [](const std::vector<int>& v, int e) {
        return std::find(v.begin(), v.end(), e) != v.end();
    };
    if (out_end == in_end) throw error("identify_ends: same edge");
    if (!has(d.ends_out, out_end) || !has(d.ends_in, in_end))
        throw error("identify_ends: ends missing or orientations incompatible");
    TangleDiagram r = d;
    r.ends_out.erase(std::find(r.ends_out.begin(), r.ends_out.end(), out_end));
    r.ends_in.erase(std::find(r.ends_in.begin(), r.ends_in.end(), in_end));
    r.vertices.push_back(Vertex{Vertex::mark, {out_end}, {in_end}});
    r.validate();
    return r;
}

TangleDiagram insert_mark(const TangleDiagram& d, int edge) {
    if (edge < 1 || edge > d.num_edges) throw error("insert_mark: no such edge");
    TangleDiagram r = d;
    int fresh = ++r.num_edges;
    // edge keeps its source; fresh takes over the old target
    bool retargeted = false;
    for (auto& v : r.vertices) {
        for (int& e : v.in)
            if (e == edge && !retargeted) {
                e = fresh;
                retargeted = true;
            }
    }
    if (!retargeted) {
        for (int& e : r.ends_out)
            if (e == edge && !retargeted) {
                e = fresh;
                retargeted = true;
            }
    }
    if (!retargeted) throw error("insert_mark: dangling edge");
    r.vertices.push_back(Vertex{Vertex::mark, {edge}, {fresh}});
    r.validate();
    return r;
}

TangleDiagram remove_mark(const TangleDiagram& d, int mark_vertex) {
    if (mark_vertex < 0 || mark_vertex >= static_cast<int>(d.vertices.size()) ||
        d.vertices[mark_vertex].kind != Vertex::mark)
        throw error("remove_mark: not a mark");
    const Vertex& mv = d.vertices[mark_vertex];
    int i = mv.in[0], j = mv.out[0];
    if (i == j) throw error("remove_mark: the only vertex of a circle");
    TangleDiagram r;
    r.num_edges = d.num_edges - 1;
    auto relabel = [&](int e) {
        if (e == j) e = i;
        return e > j ? e - 1 : e;
    };
    for (size_t vi = 0; vi < d.vertices.size(); ++vi) {
        if (static_cast<int>(vi) == mark_vertex) continue;
        Vertex v = d.vertices[vi];
        for (int& e : v.in) e = relabel(e);
        for (int& e : v.out) e = relabel(e);
        r.vertices.push_back(v);
    }
    for (int e : d.ends_in) r.ends_in.push_back(relabel(e));
    for (int e : d.ends_out) r.ends_out.push_back(relabel(e));
    r.validate();
    return r;
}

TangleDiagram mirror(const TangleDiagram& d) {
    TangleDiagram r = d;
    for (auto& v : r.vertices) {
        if (v.kind == Vertex::crossing_pos)
            v.kind = Vertex::crossing_neg;
        else if (v.kind == Vertex::crossing_neg)
            v.kind = Vertex::crossing_pos;
    }
    return r;
}

TangleDiagram connected_sum(const TangleDiagram& a, int ea, const TangleDiagram& b, int eb) {
    TangleDiagram d = disjoint_union(a, b);
    int e2 = eb + a.num_edges;
    // splice: swap the targets of the two edges
    auto retarget = [&](int from, int to) {
        for (auto& v : d.vertices)
            for (int& e : v.in)
                if (e == from) {
                    e = to;
                    return;
                }
        throw error("connected_sum: open edge");
    };
    // find targets first
    retarget(ea, -1);
    retarget(e2, -2);
    for (auto& v : d.vertices)
        for (int& e : v.in) {
            if (e == -1) e = e2;
            if (e == -2) e = ea;
        }
    d.validate();
    return d;
}

// ---------------------------------------------------------------------------
// Edge rings

EdgeRingPresentation edge_ring(const TangleDiagram& d) {
    EdgeRingPresentation pres;
    std::vector<MultiPoly> relators;
    for (auto& v : d.vertices) {
        MultiPoly r;
        for (int e : v.out) r += MultiPoly::var(e);
        for (int e : v.in) r += -MultiPoly::var(e);
        relators.push_back(r);
    }
    for (auto& rel : relators) {
        MultiPoly r = rel.substitute(pres.eliminated);
        if (r.is_zero()) continue;
        auto vars = r.variables();
        if (vars.empty()) throw error("edge_ring: inconsistent relators");
        int v = vars.back();  // highest-numbered variable
        Rational c = r.coefficient_of(v, 1).constant_term();
        MultiPoly image = (MultiPoly::var(v) - r.scaled(Rational(1) / c));
        // image is r solved for v: v = v - r/c
        std::map<int, MultiPoly> rule{{v, image}};
        for (auto& [w, img] : pres.eliminated) img = img.substitute(rule);
        pres.eliminated[v] = image;
    }
    for (int e = 1; e <= d.num_edges; ++e)
        if (!pres.eliminated.count(e)) pres.free_vars.push_back(e);
    // Lemma: the edge ring is free on E - V + C variables
    int expect = d.num_edges - static_cast<int>(d.vertices.size()) + d.closed_graph_components();
    if (static_cast<int>(pres.free_vars.size()) != expect)
        throw error("edge_ring: free variable count mismatch");
    return pres;
}

// ---------------------------------------------------------------------------
// Braid graphs

std::vector<int> ColumnWord::canonical_key() const {
    std::vector<int> best;
    size_t n = columns.size();
    if (n == 0) {
        best = {strands};
        return best;
    }
    for (size_t s = 0; s < n; ++s) {
        std::vector<int> rot(n);
        for (size_t i = 0; i < n; ++i) rot[i] = columns[(s + i) % n];
        if (best.empty() || rot < best) best = rot;
    }
    best.insert(best.begin(), strands);
    return best;
}

int wu_complexity(const ColumnWord& g) {
    int c = g.strands;
    for (int col : g.columns) c += col;
    return c;
}

TangleDiagram graph_diagram(const ColumnWord& g) {
    BraidWord w;
    w.strands = g.strands;
    for (int c : g.columns) w.letters.push_back({c, BraidLetter::singular});
    return close_braid(w);
}

MoyMove find_moy_move(const ColumnWord& g) {
    MoyMove best;
    long best_gain = -1;
    long first_pos = 1 << 30;
    auto consider = [&](const MoyMove& m, long gain, long pos) {
        if (gain > best_gain || (gain == best_gain && pos < first_pos)) {
            best = m;
            best_gain = gain;
            first_pos = pos;
        }
    };
    const auto& cols = g.columns;
    const int n = static_cast<int>(cols.size());

    // O: an untouched strand is a disjoint circle
    for (int s = 1; s <= g.strands; ++s) {
        bool touched = false;
        for (int c : cols)
            if (c == s - 1 || c == s) touched = true;
        if (!touched) {
            long gain = 1;
            for (int c : cols)
                if (c > s) ++gain;
            consider(MoyMove{MoyMove::O, s, {}}, gain, s);
        }
    }
    // I: a crossing that is the only one on its right (or left) strand
    for (int t = 0; t < n; ++t) {
        int c = cols[t];
        bool right_alone = true, left_alone = true;
        for (int u = 0; u < n; ++u) {
            if (u == t) continue;
            if (cols[u] == c || cols[u] == c + 1) right_alone = false;
            if (cols[u] == c || cols[u] == c - 1) left_alone = false;
        }
        if (right_alone) {
            long gain = 1 + c;
            for (int u = 0; u < n; ++u)
                if (u != t && cols[u] > c + 1) ++gain;
            consider(MoyMove{MoyMove::I, c + 1, {t}}, gain, t);
        } else if (left_alone) {
            long gain = 1 + c;
            for (int u = 0; u < n; ++u)
                if (u != t && cols[u] > c) ++gain;
            consider(MoyMove{MoyMove::I, c, {t}}, gain, t);
        }
    }
    // II: two crossings in one column bounding a bigon (open word)
    for (int t1 = 0; t1 < n; ++t1) {
        int c = cols[t1];
        for (int t2 = t1 + 1; t2 < n; ++t2) {
            if (cols[t2] == c) {
                bool clean = true;
                for (int u = t1 + 1; u < t2; ++u)
                    if (std::abs(cols[u] - c) <= 1) clean = false;
                if (clean) consider(MoyMove{MoyMove::II, 0, {t1, t2}}, c, t1);
                break;  // nearest same-column partner only
            }
            if (std::abs(cols[t2] - c) <= 1) break;
        }
    }
    // III: pattern (c+1, c, c+1) with clean connecting edges (open word)
    for (int t1 = 0; t1 < n; ++t1) {
        int c1 = cols[t1];
        if (c1 < 2) continue;
        int c = c1 - 1;
        for (int t3 = t1 + 2; t3 < n; ++t3) {
            if (cols[t3] != c1) continue;
            int mid = -1;
            bool ok = true;
            for (int u = t1 + 1; u < t3 && ok; ++u) {
                if (cols[u] == c + 2) ok = false;
                else if (cols[u] == c || cols[u] == c + 1) {
                    if (mid >= 0 || cols[u] != c) ok = false;
                    else mid = u;
                }
            }
            if (ok && mid >= 0) consider(MoyMove{MoyMove::III, 0, {t1, mid, t3}}, 1, t1);
        }
    }
    return best;
}

ColumnWord delete_strand(const ColumnWord& g, int strand, const std::vector<int>& drop_positions) {
    ColumnWord r;
    r.strands = g.strands - 1;
    for (int i = 0; i < static_cast<int>(g.columns.size()); ++i) {
        if (std::find(drop_positions.begin(), drop_positions.end(), i) != drop_positions.end())
            continue;
        int c = g.columns[i];
        if (c == strand || c == strand - 1) throw error("delete_strand: strand in use");
        r.columns.push_back(c > strand ? c - 1 : c);
    }
    return r;
}

ColumnWord replace_positions(const ColumnWord& g, const std::vector<int>& positions,
                             const std::vector<int>& new_columns_at_first) {
    ColumnWord r;
    r.strands = g.strands;
    int anchor = positions.empty() ? -1 : positions[static_cast<int>(positions.size()) / 2];
    for (int i = 0; i < static_cast<int>(g.columns.size()); ++i) {
        if (i == anchor)
            for (int c : new_columns_at_first) r.columns.push_back(c);
        if (std::find(positions.begin(), positions.end(), i) != positions.end()) continue;
        r.columns.push_back(g.columns[i]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// MOY states

std::vector<MoyState> moy_states(const BraidWord& w) {
    if (!w.ordinary()) throw error("moy_states: ordinary crossings only");
    const int n = static_cast<int>(w.letters.size());
    std::vector<MoyState> states;
    states.reserve(1u << n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        MoyState st;
        st.singular.resize(n);
        st.graph.strands = w.strands;
        for (int i = 0; i < n; ++i) {
            bool sing = (mask >> i) & 1;
            st.singular[i] = sing;
            if (sing) {
                st.weight += (w.letters[i].kind == BraidLetter::positive) ? 1 : -1;
                st.graph.columns.push_back(w.letters[i].column);
            }
        }
        // resolved diagram: oriented resolutions become pairs of marks
        TangleDiagram d = close_braid(w);
        TangleDiagram res;
        res.num_edges = d.num_edges;
        res.braid_strands = d.braid_strands;
        int crossing_idx = 0;
        for (auto& v : d.vertices) {
            if (!v.is_crossing()) {
                res.vertices.push_back(v);
                continue;
            }
            if (st.singular[crossing_idx]) {
                Vertex s = v;
                s.kind = Vertex::crossing_sing;
                res.vertices.push_back(s);
                res.braid_columns.push_back(d.braid_columns[crossing_idx]);
            } else {
                res.vertices.push_back(Vertex{Vertex::mark, {v.in[0]}, {v.out[0]}});
                res.vertices.push_back(Vertex{Vertex::mark, {v.in[1]}, {v.out[1]}});
            }
            ++crossing_idx;
        }
        res.validate();
        st.resolved = std::move(res);
        states.push_back(std::move(st));
    }
    return states;
}

std::vector<MoyState> moy_states(const TangleDiagram& d) {
    if (d.braid_strands == 0) throw error("moy_states: need a braid closure");
    BraidWord w;
    w.strands = d.braid_strands;
    size_t ci = 0;
    for (auto& v : d.vertices) {
        if (!v.is_crossing()) continue;
        BraidLetter l;
        l.column = d.braid_columns[ci++];
        switch (v.kind) {
            case Vertex::crossing_pos: l.kind = BraidLetter::positive; break;
            case Vertex::crossing_neg: l.kind = BraidLetter::negative; break;
            default: throw error("moy_states: ordinary crossings only");
        }
        w.letters.push_back(l);
    }
    return moy_states(w);
}

} // namespace krh
