"""
Cycle Lattice Module
Integer cycles on resolution dual graphs: intersection pairing, arithmetic
genus, Laufer's fundamental cycle, the Z-perp component B and the
cone-like vanishing predicate
"""

import itertools
import json
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from checks import Check, equality_check, predicate_check, require
from curve_invariants import CASE_ZE0_NEGATIVE, PlaneCurve, upper_bracket
from errors import (
    NonNegativeDefiniteError,
    NotNefError,
    ParameterRangeError,
    PreconditionError,
    RingMismatchError,
)

DEFAULT_BOX = 6
DEFAULT_CYCLE_CAP = 100_000


class DualGraph:
    """Weighted resolution graph: genus and self-intersection per vertex, edge multiplicities"""

    def __init__(self, vertices, edges, cycles=None):
        """
        Args:
            vertices: list of dicts {id, genus, self_int}
            edges: list of [id, id, mult]
            cycles: optional {name: {id: coeff}}
        """
        self.graph = nx.Graph()
        self.ids = tuple(v['id'] for v in vertices)
        if len(set(self.ids)) != len(self.ids):
            raise ParameterRangeError("vertex ids must be unique")
        self.index = {vid: i for i, vid in enumerate(self.ids)}
        for v in vertices:
            if v['genus'] < 0 or v['self_int'] > -1:
                raise ParameterRangeError(f"vertex {v['id']}: need genus >= 0 and self_int <= -1")
            self.graph.add_node(v['id'], genus=int(v['genus']), self_int=int(v['self_int']))
        self.edges = []
        n = len(self.ids)
        self.matrix = np.zeros((n, n), dtype=np.int64)
        for i, vid in enumerate(self.ids):
            self.matrix[i, i] = self.graph.nodes[vid]['self_int']
        for a, b, mult in edges:
            if a == b or a not in self.index or b not in self.index or mult < 0:
                raise ParameterRangeError(f"bad edge {[a, b, mult]}")
            self.edges.append((a, b, int(mult)))
            weight = self.graph.edges[a, b]['weight'] + mult if self.graph.has_edge(a, b) else mult
            self.graph.add_edge(a, b, weight=weight)
            self.matrix[self.index[a], self.index[b]] = weight
            self.matrix[self.index[b], self.index[a]] = weight
        self.genera = np.array([self.graph.nodes[vid]['genus'] for vid in self.ids], dtype=np.int64)
        self.cycles = {name: self.cycle(coeffs) for name, coeffs in (cycles or {}).items()}

    def __len__(self):
        return len(self.ids)

    @property
    def key(self):
        return (self.ids, tuple(self.genera.tolist()), tuple(map(tuple, self.matrix.tolist())))

    def __eq__(self, other):
        return isinstance(other, DualGraph) and self.key == other.key and self.cycles == other.cycles

    def __hash__(self):
        return hash(self.key)

    def genus(self, vid):
        return int(self.graph.nodes[vid]['genus'])

    @property
    def canonical_numbers(self):
        """K.E_i = -E_i^2 + 2 g_i - 2 (adjunction)"""
        return -np.diag(self.matrix) + 2 * self.genera - 2

    def cycle(self, coefficients) -> 'Cycle':
        vec = np.zeros(len(self.ids), dtype=np.int64)
        if isinstance(coefficients, dict):
            lookup = {str(vid): i for i, vid in enumerate(self.ids)}
            for vid, coeff in coefficients.items():
                i = self.index.get(vid, lookup.get(str(vid)))
                if i is None:
                    raise ParameterRangeError(f"unknown vertex {vid}")
                vec[i] = int(coeff)
        else:
            vec[:] = list(coefficients)
        return Cycle(self, tuple(int(c) for c in vec))

    def vertex(self, vid) -> 'Cycle':
        return self.cycle({vid: 1})

    def is_connected(self):
        return len(self.ids) > 0 and nx.is_connected(self.graph)

    def is_negative_definite(self) -> bool:
        """Exact test: the k-th leading principal minor has sign (-1)^k"""
        rows = self.matrix.tolist()
        for k in range(1, len(rows) + 1):
            minor = DomainMatrix([[ZZ(v) for v in row[:k]] for row in rows[:k]], (k, k), ZZ).det()
            if minor == 0 or (minor > 0) != (k % 2 == 0):
                return False
        return True

    def validate(self):
        if not self.is_connected():
            raise PreconditionError("dual graph must be connected")
        if not self.is_negative_definite():
            raise NonNegativeDefiniteError("intersection matrix is not negative definite")
        return self

    def subgraph(self, ids) -> 'DualGraph':
        keep = [vid for vid in self.ids if vid in set(ids)]
        vertices = [{'id': vid, 'genus': self.genus(vid), 'self_int': int(self.matrix[self.index[vid], self.index[vid]])}
                    for vid in keep]
        edges = [[a, b, m] for a, b, m in self.edges if a in keep and b in keep]
        return DualGraph(vertices, edges)

    def to_dict(self):
        vertices = [{'id': vid, 'genus': self.genus(vid), 'self_int': int(self.matrix[i, i])}
                    for i, vid in enumerate(self.ids)]
        cycles = {name: cycle.to_dict() for name, cycle in self.cycles.items()}
        return {'vertices': vertices, 'edges': [list(e) for e in self.edges], 'cycles': cycles}

    @classmethod
    def from_dict(cls, data):
        return cls(data['vertices'], data.get('edges', []), data.get('cycles', {}))


@dataclass(frozen=True)
class Cycle:
    """Integer combination of the exceptional curves"""

    graph: DualGraph = field(compare=False, repr=False)
    coefficients: Tuple[int, ...]

    def _check(self, other: 'Cycle'):
        if other.graph is not self.graph and other.graph.key != self.graph.key:
            raise RingMismatchError("cycles live on different graphs")

    @property
    def vector(self):
        return np.array(self.coefficients, dtype=np.int64)

    def __add__(self, other):
        self._check(other)
        return Cycle(self.graph, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._check(other)
        return Cycle(self.graph, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __rmul__(self, k):
        return Cycle(self.graph, tuple(int(k) * a for a in self.coefficients))

    def __le__(self, other):
        self._check(other)
        return all(a <= b for a, b in zip(self.coefficients, other.coefficients))

    @property
    def is_effective(self):
        return all(c >= 0 for c in self.coefficients)

    @property
    def is_positive(self):
        return self.is_effective and any(self.coefficients)

    def support(self):
        return [vid for vid, c in zip(self.graph.ids, self.coefficients) if c]

    def coefficient(self, vid):
        return self.coefficients[self.graph.index[vid]]

    def intersection_numbers(self) -> np.ndarray:
        return self.graph.matrix @ self.vector

    def is_anti_nef(self):
        return bool((self.intersection_numbers() <= 0).all())

    def to_dict(self):
        return {str(vid): c for vid, c in zip(self.graph.ids, self.coefficients) if c}


def intersect(Y: Cycle, W) -> int:
    """Y.W for a cycle W or a vertex id"""
    if not isinstance(W, Cycle):
        W = Y.graph.vertex(W)
    Y._check(W)
    return int(Y.vector @ Y.graph.matrix @ W.vector)


def pa(Y: Cycle) -> int:
    """Arithmetic genus (Y^2 + K.Y)/2 + 1 of a positive cycle"""
    if not Y.is_positive:
        raise PreconditionError("p_a is defined for positive cycles")
    twice = intersect(Y, Y) + int(Y.graph.canonical_numbers @ Y.vector)
    return twice // 2 + 1


@dataclass(frozen=True)
class LauferResult:
    cycle: Cycle
    sequence: Tuple[object, ...]


def laufer_fundamental_cycle(G: DualGraph, start=None) -> LauferResult:
    """
    Fundamental cycle by Laufer's algorithm.

    Starts at one curve and adds E_j while Y.E_j > 0; the sequence lists the
    curve added at each step.
    """
    G.validate()
    start = G.ids[0] if start is None else start
    vec = np.zeros(len(G.ids), dtype=np.int64)
    vec[G.index[start]] = 1
    sequence = [start]
    while True:
        numbers = G.matrix @ vec
        positive = np.flatnonzero(numbers > 0)
        if positive.size == 0:
            break
        j = int(positive[0])
        vec[j] += 1
        sequence.append(G.ids[j])
    return LauferResult(Cycle(G, tuple(int(c) for c in vec)), tuple(sequence))


_BOX_CACHE: Dict[Tuple[int, int], np.ndarray] = {}


def _box(n, box):
    grid = _BOX_CACHE.get((n, box))
    if grid is None:
        grid = np.array(list(itertools.product(range(box + 1), repeat=n)), dtype=np.int64)[1:]
        _BOX_CACHE[(n, box)] = grid
    return grid


def brute_force_fundamental_cycle(G: DualGraph, box=DEFAULT_BOX) -> Optional[Cycle]:
    """
    Minimal positive anti-nef cycle among those with coefficients <= box.

    Returns None when no positive anti-nef cycle fits in the box.
    """
    candidates = _box(len(G.ids), box)
    anti_nef = candidates[((candidates @ G.matrix) <= 0).all(axis=1)]
    if anti_nef.shape[0] == 0:
        return None
    minimum = anti_nef.min(axis=0)
    if not (anti_nef == minimum).all(axis=1).any():
        return None
    return Cycle(G, tuple(int(c) for c in minimum))


@dataclass
class PerpResult:
    """Z-perp, the component B through E_0, its fundamental cycle and the derived checks"""

    z_perp: Tuple[object, ...]
    B: Tuple[object, ...]
    Z_B: Cycle
    minus_zb_e0: int
    s_star: int
    checks: List[Check] = field(default_factory=list)


def z_perp_and_B(G: DualGraph, Z: Cycle, e0) -> PerpResult:
    """
    Z-perp = sum of E_i with Z.E_i = 0 and B, its connected component through E_0.

    Raises PreconditionError when Z.E_0 < 0, which is the ZE_0 < 0 case of
    the br bound.
    """
    if not Z.is_anti_nef():
        raise PreconditionError("Z must be anti-nef")
    if intersect(Z, e0) != 0:
        raise PreconditionError(f"{CASE_ZE0_NEGATIVE} branch of the br bound: Z-perp misses E0, only the gonality bound applies")
    numbers = Z.intersection_numbers()
    z_perp = tuple(vid for vid, v in zip(G.ids, numbers) if v == 0)
    component = nx.node_connected_component(G.graph.subgraph(z_perp), e0)
    B = tuple(vid for vid in G.ids if vid in component)
    local = laufer_fundamental_cycle(G.subgraph(B)).cycle
    Z_B = G.cycle({vid: local.coefficient(vid) for vid in B})
    Z_X = laufer_fundamental_cycle(G).cycle
    minus_zb_e0 = -intersect(Z_B, e0)
    genus = G.genus(e0)
    s_star = upper_bracket(Fraction(2 * genus - 2, minus_zb_e0))
    attachments = sorted({nb for vid in B for nb in G.graph.neighbors(vid) if nb not in component}, key=G.index.get)
    checks = [
        predicate_check('perp.sum_anti_nef', "Z + Z_B anti-nef", (Z + Z_B).is_anti_nef()),
        equality_check('perp.attachments', "Z_B.E_i = 1 at the attachment curves",
                       [intersect(Z_B, vid) for vid in attachments], [1] * len(attachments)),
        predicate_check('perp.degree_bound', "-Z_B.E0 >= -Z_X^2",
                        minus_zb_e0 >= -intersect(Z_X, Z_X), [minus_zb_e0, -intersect(Z_X, Z_X)]),
    ]
    return PerpResult(z_perp, B, Z_B, minus_zb_e0, s_star, checks)


def computation_sequence_cycles(G: DualGraph, cap=DEFAULT_CYCLE_CAP) -> Tuple[List[Cycle], bool]:
    """
    Every cycle met along computation sequences towards Z_X, from any start.

    Returns:
        (cycles, cap_exceeded)
    """
    G.validate()
    seen = set()
    queue = deque()
    for i in range(len(G.ids)):
        start = tuple(1 if k == i else 0 for k in range(len(G.ids)))
        seen.add(start)
        queue.append(start)
    while queue:
        current = queue.popleft()
        numbers = G.matrix @ np.array(current, dtype=np.int64)
        for j in np.flatnonzero(numbers > 0):
            nxt = tuple(c + 1 if k == j else c for k, c in enumerate(current))
            if nxt not in seen:
                if len(seen) >= cap:
                    return [Cycle(G, c) for c in sorted(seen)], True
                seen.add(nxt)
                queue.append(nxt)
    return [Cycle(G, c) for c in sorted(seen)], False


@dataclass(frozen=True)
class RohrVerdict:
    shortcut: str
    full_criterion: Optional[bool] = None
    cycles_checked: int = 0
    cap_exceeded: bool = False
    case_split_ok: Optional[bool] = None

    @property
    def consistent(self):
        return self.shortcut != 'vanishes' or self.full_criterion is not False


def rohr_conelike_predicate(G: DualGraph, e0, D: Sequence[int], enumerate_cycles=False,
                            cap=DEFAULT_CYCLE_CAP) -> RohrVerdict:
    """
    Vanishing of H^1(O_X(D)) on a cone-like resolution.

    Args:
        G: dual graph with central curve e0
        e0: id of the central curve
        D: intersection numbers D.E_i in vertex order (or {id: value})
        enumerate_cycles: also test Y.D > 2 p_a(Y) - 2 on every cycle of
            the computation sequences
        cap: limit of that enumeration

    Returns:
        RohrVerdict with shortcut 'vanishes' iff D.E0 > 2g - 2
    """
    if isinstance(D, dict):
        D = [D.get(vid, D.get(str(vid), 0)) for vid in G.ids]
    D = np.array(D, dtype=np.int64)
    if (D < 0).any():
        raise NotNefError(f"D has negative intersection numbers: {D.tolist()}")
    genus = G.genus(e0)
    shortcut = 'vanishes' if D[G.index[e0]] > 2 * genus - 2 else "no verdict"
    if not enumerate_cycles:
        return RohrVerdict(shortcut)
    cycles, exceeded = computation_sequence_cycles(G, cap)
    full = True
    split = True
    for Y in cycles:
        arithmetic_genus = pa(Y)
        if int(Y.vector @ D) <= 2 * arithmetic_genus - 2:
            full = False
        expected = genus if Y.coefficient(e0) > 0 else 0
        if arithmetic_genus != expected:
            split = False
    return RohrVerdict(shortcut, full, len(cycles), exceeded, split)


def cone_graph(d) -> DualGraph:
    """Minimal resolution of the cone over a smooth plane curve of degree d"""
    genus = PlaneCurve(d).genus
    return DualGraph([{'id': 'E0', 'genus': genus, 'self_int': -d}], [])


@dataclass
class StarGraph:
    graph: DualGraph
    Z_r: Cycle
    C_r: Cycle
    Z_X: Cycle
    checks: List[Check]


def arm_id(i, j):
    return f"E{i},{j}"


def build_star_graph(d, r) -> StarGraph:
    """
    Resolution graph of the blowup family: E0 of genus (d-1)(d-2)/2 and
    self-intersection -2d with d arms of r rational curves (-2, ..., -2, -1).
    """
    if d < 3 or r < 1:
        raise ParameterRangeError(f"star graph needs d >= 3, r >= 1 (got d={d}, r={r})")
    genus = PlaneCurve(d).genus
    vertices = [{'id': 'E0', 'genus': genus, 'self_int': -2 * d}]
    edges = []
    for i in range(1, d + 1):
        previous = 'E0'
        for j in range(1, r + 1):
            vertices.append({'id': arm_id(i, j), 'genus': 0, 'self_int': -1 if j == r else -2})
            edges.append([previous, arm_id(i, j), 1])
            previous = arm_id(i, j)
    G = DualGraph(vertices, edges)
    Z_r = G.cycle({'E0': 1, **{arm_id(i, j): j + 1 for i in range(1, d + 1) for j in range(1, r + 1)}})
    C_r = G.cycle({'E0': d - 2, **{arm_id(i, j): max(d - 2 - j, 0) for i in range(1, d + 1) for j in range(1, r + 1)}})
    Z_X = laufer_fundamental_cycle(G).cycle
    G.cycles = {'Z_r': Z_r, 'C_r': C_r, 'Z_X': Z_X}
    checks = [
        predicate_check('star.z_anti_nef', "Z_r anti-nef", Z_r.is_anti_nef()),
        equality_check('star.z_e0', "Z_r.E0 = 0", intersect(Z_r, 'E0'), 0),
        equality_check('star.z_arm_ends', "Z_r.E_{i,r} = -1",
                       [intersect(Z_r, arm_id(i, r)) for i in range(1, d + 1)], [-1] * d),
        equality_check('star.cohomological', "Z_r.C_r = 0 iff r >= d-2",
                       intersect(Z_r, C_r) == 0, r >= d - 2),
        equality_check('star.fundamental', "Z_X = E0 + sum of all arm curves",
                       list(Z_X.coefficients), [1] * len(G)),
        equality_check('star.self_intersection', "Z_X^2 = -d", intersect(Z_X, Z_X), -d),
        equality_check('star.genus', "p_a(Z_X) = (d-1)(d-2)/2", pa(Z_X), genus),
    ]
    require(checks)
    return StarGraph(G, Z_r, C_r, Z_X, checks)


def load_graph_file(path) -> DualGraph:
    with open(path, 'r', encoding='utf-8') as f:
        return DualGraph.from_dict(json.load(f))


def dump_graph(G: DualGraph) -> str:
    return json.dumps(G.to_dict(), indent=2) + "\n"


def save_graph_file(G: DualGraph, path):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dump_graph(G))
    return path


def small_graph_sweep(max_vertices=5, weights=range(-4, 0), box=DEFAULT_BOX):
    """
    Laufer against brute force on every connected graph with at most
    max_vertices vertices, self-intersections in weights and every
    assignment of genera in {0, 1}.

    Genera leave the fundamental cycle unchanged and shift p_a by
    sum z_i g_i; both are checked against the genus-zero graph.

    Returns:
        (graphs_checked, mismatches) with mismatches a list of descriptions
    """
    checked = 0
    mismatches = []
    for shape in nx.graph_atlas_g():
        n = shape.number_of_nodes()
        if n == 0 or n > max_vertices or not nx.is_connected(shape):
            continue
        edges = [[a, b, 1] for a, b in shape.edges()]
        for selfs in itertools.product(list(weights), repeat=n):
            base = DualGraph([{'id': v, 'genus': 0, 'self_int': s} for v, s in zip(range(n), selfs)], edges)
            if not base.is_negative_definite():
                continue
            base_cycle = laufer_fundamental_cycle(base).cycle
            brute = brute_force_fundamental_cycle(base, box)
            if max(base_cycle.coefficients) <= box:
                if brute is None or brute.coefficients != base_cycle.coefficients or not base_cycle.is_anti_nef():
                    mismatches.append(f"edges={edges} selfs={selfs}: laufer={base_cycle.coefficients}")
            elif brute is not None:
                mismatches.append(f"edges={edges} selfs={selfs}: box holds {brute.coefficients}")
            for genera in itertools.product((0, 1), repeat=n):
                checked += 1
                if not any(genera):
                    continue
                vertices = [{'id': v, 'genus': g, 'self_int': s} for v, g, s in zip(range(n), genera, selfs)]
                laufer = laufer_fundamental_cycle(DualGraph(vertices, edges)).cycle
                # genus only enters K.Z
                shift = sum(c * g for c, g in zip(laufer.coefficients, genera))
                if laufer.coefficients != base_cycle.coefficients or pa(laufer) != pa(base_cycle) + shift:
                    mismatches.append(f"edges={edges} selfs={selfs} genera={genera}: laufer={laufer.coefficients}")
    return checked, mismatches
