"""Small shared utilities for the test modules."""
from matchforest import MixedGraph
from matchforest.graph_core import ElementId

ACCEPTANCE_LINES = []


def record(number, title, ok, detail=""):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def ids(*names):
    """``ids("E0", "A1")`` -> frozenset of ElementIds."""
    return frozenset(ElementId(n[0], int(n[1:])) for n in names)


def names(F):
    return sorted(repr(e) for e in F)


def graph(n, edges=(), arcs=()):
    return MixedGraph(n, tuple(edges), tuple(arcs))


def mixed_graphs(max_vertices=6, max_elements=9, min_vertices=2):
    """Hypothesis strategy for small mixed graphs."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(min_vertices, max_vertices))
        pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
        m = draw(st.integers(0, max_elements))
        ne = draw(st.integers(0, m))
        edges = draw(st.lists(pair, min_size=ne, max_size=ne))
        arcs = draw(st.lists(pair, min_size=m - ne, max_size=m - ne))
        return MixedGraph(n, tuple(edges), tuple(arcs))

    return build()


def subsets_of(g):
    """Hypothesis strategy for element subsets of ``g``."""
    from hypothesis import strategies as st

    return st.integers(0, (1 << g.num_elements) - 1).map(g.from_mask)


def graph_and_subset(max_vertices=6, max_elements=9):
    from hypothesis import strategies as st

    return mixed_graphs(max_vertices, max_elements).flatmap(lambda g: st.tuples(st.just(g), subsets_of(g)))


def achievable_root_pairs(g):
    """Brute force over all 2-colorings of the arcs of an arc-only graph:
    ``{(first decomposition mask), ...}`` and the set of (R1, R2) root-set
    pairs that some decomposition into two branchings realizes."""
    from matchforest import kernels

    m = len(g.arcs)
    table = kernels.structure_table(kernels.BRANCHING, g.num_vertices, *g.kernel_arrays)
    full = (1 << m) - 1
    every = (1 << g.num_vertices) - 1
    head_mask = [0] * (1 << m)
    for mask in range(1, 1 << m):
        low = mask & -mask
        head_mask[mask] = head_mask[mask ^ low] | (1 << g.arcs[low.bit_length() - 1][1])
    pairs = set()
    decompositions = []
    for mask in range(1 << m):
        if table[mask] and table[full ^ mask]:
            decompositions.append(mask)
            pairs.add((every ^ head_mask[mask], every ^ head_mask[full ^ mask]))
    return decompositions, pairs


def vertex_mask(S):
    out = 0
    for v in S:
        out |= 1 << v
    return out


def vertices_of(mask):
    return frozenset(v for v in range(mask.bit_length()) if mask >> v & 1)


def admissible_targets(R1, R2):
    """Every (R1p, R2p) keeping the union and intersection of (R1, R2)."""
    common = R1 & R2
    free = sorted(R1 ^ R2)
    for bits in range(1 << len(free)):
        S = frozenset(v for i, v in enumerate(free) if bits >> i & 1)
        yield common | S, common | (frozenset(free) - S)
