"""Recursive evaluation graphs for products of pooled one-particle features.

The graph holds one node per basis tuple.  Order-1 nodes are the atomic
base (every one-particle label within the degree cap) and have no parents;
every node of order >= 2 has exactly two parents whose tuples union to its
own, so its value is a single product of the parent values.

Two insertion heuristics are provided.  ``insert_original`` first looks for
any split of the tuple whose two parts are already present; failing that it
splits off the highest-degree label (ties broken towards the largest label),
recursively inserts the remainder and retries.  ``insert_generalized(t, n)``
instead splits off the degree-maximal sub-multiset of size min(n, order-1);
the sub-tuple itself is inserted with the original rule, the remainder again
with parameter n.  With n = 1 the two are identical, node for node.

A node is *auxiliary* when its tuple is not a target of the build, i.e. it
violates the symmetry constraints, exceeds the degree cap, or exceeds the
build's maximum order.  Auxiliary nodes exist purely to enable two-factor
recursion and carry zero coefficient in any model.  Order-1 nodes are never
flagged auxiliary: the pooled features they stand for are computed during
pooling, not by graph products, and they are not counted in node totals.

Graph construction is sequential by design (insertion order is meaningful);
a finished graph is immutable in practice and safe to share across threads.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator

from acedag.dependency import is_dependent, proper_splits
from acedag.indexsets import (
    DegreeSpec,
    Group,
    element_degree,
    enumerate_tuples,
    format_elements,
    is_canonical,
    one_particle_indices,
    parse_elements,
    satisfies_constraints,
    validate_element,
)

ALGORITHMS = ("orig", "gen")


class GraphFormatError(ValueError):
    """Malformed graph file; ``offset`` is the byte position of the bad line."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class UnsupportedVersionError(GraphFormatError):
    pass


@dataclass(frozen=True)
class GraphNode:
    id: int
    elements: tuple
    parents: tuple[int, int] | None
    auxiliary: bool

    @property
    def order(self) -> int:
        return len(self.elements)


class EvalGraph:
    """DAG of basis tuples with dense ids, topological by construction."""

    def __init__(self, group: Group, spec: DegreeSpec, nu_max: int | None = None,
                 alg: str = "orig", n: int = 1):
        if alg not in ALGORITHMS:
            raise ValueError(f"alg must be one of {ALGORITHMS}, got {alg!r}")
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n!r}")
        self.group = group
        self.spec = spec
        self.nu_max = nu_max
        self.alg = alg
        self.n = n
        self.nodes: list[GraphNode] = []
        self._ids: dict[tuple, int] = {}

    # -- basic container behaviour

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, elements) -> bool:
        return tuple(elements) in self._ids

    def __iter__(self) -> Iterator[GraphNode]:
        return iter(self.nodes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EvalGraph):
            return NotImplemented
        return (
            self.group is other.group
            and self.spec == other.spec
            and self.nu_max == other.nu_max
            and self.alg == other.alg
            and self.n == other.n
            and self.nodes == other.nodes
        )

    def id_of(self, elements) -> int:
        return self._ids[tuple(elements)]

    def is_target(self, elements) -> bool:
        """Tuple indexes a basis function of this build (may carry a coefficient)."""
        if self.nu_max is not None and len(elements) > self.nu_max:
            return False
        return satisfies_constraints(elements, self.group) and self.spec.within(elements)

    # -- construction

    def _seed(self) -> None:
        assert not self.nodes
        for e in one_particle_indices(self.group, self.spec.int_cap()):
            self._add((e,), None)

    def _add(self, elements: tuple, parents: tuple[int, int] | None) -> int:
        aux = False if len(elements) == 1 else not self.is_target(elements)
        node = GraphNode(len(self.nodes), elements, parents, aux)
        self.nodes.append(node)
        self._ids[elements] = node.id
        return node.id

    def _find_present_split(self, elements) -> tuple[int, int] | None:
        ids = self._ids
        for left, right in proper_splits(elements):
            li = ids.get(left)
            if li is None:
                continue
            ri = ids.get(right)
            if ri is not None:
                return li, ri
        return None

    def insert_original(self, elements) -> int:
        """Insert a tuple, splitting off the max-degree label when needed.

        Returns the node id; a no-op for tuples already present.
        """
        elements = tuple(elements)
        ident = self._ids.get(elements)
        if ident is not None:
            return ident
        if len(elements) == 1:
            raise ValueError(f"one-particle label outside the seeded range: {elements!r}")
        parents = self._find_present_split(elements)
        if parents is not None:
            return self._add(elements, parents)
        head = max(elements, key=lambda e: (element_degree(e), e))
        rest = _multiset_minus(elements, (head,))
        self.insert_original(rest)
        return self.insert_original(elements)

    def insert_generalized(self, elements, n: int) -> int:
        """Insert a tuple, splitting off the degree-maximal block of size <= n."""
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n!r}")
        elements = tuple(elements)
        ident = self._ids.get(elements)
        if ident is not None:
            return ident
        if len(elements) == 1:
            raise ValueError(f"one-particle label outside the seeded range: {elements!r}")
        parents = self._find_present_split(elements)
        if parents is not None:
            return self._add(elements, parents)
        size = min(n, len(elements) - 1)
        block = self._max_block(elements, size)
        rest = _multiset_minus(elements, block)
        self.insert_original(block)
        self.insert_generalized(rest, n)
        return self.insert_generalized(elements, n)

    def _max_block(self, elements, size: int) -> tuple:
        """Sub-multiset of the given size with maximal p-degree.

        Ties go to the largest block in canonical order, so size 1 matches
        the max-degree label choice of ``insert_original``.
        """
        key = self.spec.power_key
        best = None
        best_key = -1
        for block in set(itertools.combinations(elements, size)):
            k = key(block)
            if k > best_key or (k == best_key and block > best):
                best, best_key = block, k
        return best

    def validate(self) -> None:
        """Check structural invariants; raises ValueError on violation."""
        for node in self.nodes:
            if self._ids.get(node.elements) != node.id:
                raise ValueError(f"index map out of sync at node {node.id}")
            if not is_canonical(node.elements):
                raise ValueError(f"node {node.id} tuple not canonical: {node.elements!r}")
            if node.order == 1:
                if node.parents is not None:
                    raise ValueError(f"order-1 node {node.id} has parents")
                if node.auxiliary:
                    raise ValueError(f"order-1 node {node.id} flagged auxiliary")
                continue
            if node.parents is None:
                raise ValueError(f"node {node.id} of order {node.order} lacks parents")
            a, b = node.parents
            if a >= node.id or b >= node.id:
                raise ValueError(f"node {node.id} has a non-topological parent")
            merged = tuple(sorted(self.nodes[a].elements + self.nodes[b].elements))
            if merged != node.elements:
                raise ValueError(f"parents of node {node.id} do not union to its tuple")
            if node.auxiliary == self.is_target(node.elements):
                raise ValueError(f"auxiliary flag wrong on node {node.id}")


def _multiset_minus(elements: tuple, removed) -> tuple:
    rest = list(elements)
    for e in removed:
        rest.remove(e)
    return tuple(rest)


def seed_graph(group: Group, spec: DegreeSpec, nu_max: int | None = None) -> EvalGraph:
    """Graph holding exactly the order-1 nodes for labels within the cap."""
    g = EvalGraph(group, spec, nu_max)
    g._seed()
    return g


def build_graph(group: Group, spec: DegreeSpec, nu_max: int, alg: str = "orig",
                n: int = 1) -> EvalGraph:
    """Build the full graph for all invariant tuples of order <= nu_max.

    Targets are inserted in increasing order, then increasing p-degree, then
    canonical tuple order, which makes the result deterministic.  ``alg``
    selects the insertion heuristic ("orig" or "gen"); ``n`` is the block
    size for "gen".
    """
    if nu_max < 1:
        raise ValueError(f"nu_max must be >= 1, got {nu_max!r}")
    if alg == "orig":
        n = 1
    g = EvalGraph(group, spec, nu_max, alg, n)
    g._seed()
    for order in range(2, nu_max + 1):
        targets = enumerate_tuples(group, order, spec)
        targets.sort(key=lambda t: (spec.power_key(t), t))
        if alg == "orig":
            for t in targets:
                g.insert_original(t)
        else:
            for t in targets:
                g.insert_generalized(t, n)
    g.validate()
    return g


# --------------------------------------------------------------------------
# Node accounting


@dataclass(frozen=True)
class OrderCounts:
    order: int
    targets: int
    dependent: int
    independent: int
    auxiliary: int


@dataclass(frozen=True)
class GraphStats:
    """Node census of a built graph.

    ``num_total`` counts targets plus auxiliaries, which is the basis-function
    total the auxiliary ratio is measured against.  Non-invariant order-1
    nodes belong to the pooled atomic base, are counted in ``num_base`` only,
    and appear in ``num_nodes = len(graph)`` alongside everything else.
    """

    group: Group
    p: float
    max_degree: float
    nu_max: int | None
    alg: str
    n: int
    per_order: tuple[OrderCounts, ...]
    num_targets: int
    num_dependent: int
    num_independent: int
    num_aux: int
    num_base: int
    num_total: int
    num_nodes: int
    ratio_dep: float
    ratio_aux: float


def graph_stats(graph: EvalGraph) -> GraphStats:
    orders: dict[int, list[int]] = {}  # order -> [targets, dep, indep, aux]
    num_base = 0
    for node in graph.nodes:
        row = orders.setdefault(node.order, [0, 0, 0, 0])
        if node.auxiliary:
            row[3] += 1
        elif graph.is_target(node.elements):
            row[0] += 1
            if is_dependent(node.elements, graph.group, validate=False):
                row[1] += 1
            else:
                row[2] += 1
        else:
            num_base += 1
    per_order = tuple(
        OrderCounts(o, *orders[o]) for o in sorted(orders)
    )
    num_targets = sum(c.targets for c in per_order)
    num_dep = sum(c.dependent for c in per_order)
    num_indep = sum(c.independent for c in per_order)
    num_aux = sum(c.auxiliary for c in per_order)
    num_total = num_targets + num_aux
    return GraphStats(
        group=graph.group,
        p=graph.spec.p,
        max_degree=graph.spec.max_degree,
        nu_max=graph.nu_max,
        alg=graph.alg,
        n=graph.n,
        per_order=per_order,
        num_targets=num_targets,
        num_dependent=num_dep,
        num_independent=num_indep,
        num_aux=num_aux,
        num_base=num_base,
        num_total=num_total,
        num_nodes=len(graph),
        ratio_dep=num_dep / num_targets if num_targets else 0.0,
        ratio_aux=num_aux / num_total if num_total else 0.0,
    )


# --------------------------------------------------------------------------
# File format: versioned, line oriented, bit-exact.
#
#   ACEDAG v1 group=<T|SO2|O3|O3F> p=<1|2|inf> D=<number> numax=<int> alg=<orig|gen> n=<int>
#   <id> <aux:0|1> <comma-separated components> <parent parent | ->
#
# numax=0 encodes an uncapped graph (no maximum order was fixed).

_HEADER_RE = re.compile(
    r"^ACEDAG v(\d+) group=(T|SO2|O3|O3F) p=(1|2|inf) D=([0-9.]+) "
    r"numax=(\d+) alg=(orig|gen) n=(\d+)$"
)


def _format_number(x) -> str:
    xf = float(x)
    return str(int(xf)) if xf.is_integer() else repr(xf)


def serialize_graph(graph: EvalGraph) -> bytes:
    p = "inf" if graph.spec.p == math.inf else str(int(graph.spec.p))
    header = (
        f"ACEDAG v1 group={graph.group.value} p={p} D={_format_number(graph.spec.max_degree)} "
        f"numax={graph.nu_max or 0} alg={graph.alg} n={graph.n}"
    )
    lines = [header]
    for node in graph.nodes:
        par = f"{node.parents[0]} {node.parents[1]}" if node.parents else "-"
        lines.append(f"{node.id} {int(node.auxiliary)} {format_elements(node.elements)} {par}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def deserialize_graph(data: bytes) -> EvalGraph:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise GraphFormatError("graph data is not valid UTF-8", exc.start) from None
    offset = 0
    lines = text.split("\n")
    header = lines[0]
    m = _HEADER_RE.match(header)
    if m is None:
        vm = re.match(r"^ACEDAG v(\d+)\b", header)
        if vm and vm.group(1) != "1":
            raise UnsupportedVersionError(f"unsupported graph format version {vm.group(1)}", 0)
        raise GraphFormatError(f"bad header line: {header!r}", 0)
    if m.group(1) != "1":
        raise UnsupportedVersionError(f"unsupported graph format version {m.group(1)}", 0)
    group = Group(m.group(2))
    p = math.inf if m.group(3) == "inf" else int(m.group(3))
    try:
        d_raw = float(m.group(4))
    except ValueError:
        raise GraphFormatError(f"bad degree cap {m.group(4)!r}", 0) from None
    spec = DegreeSpec(p, int(d_raw) if d_raw.is_integer() else d_raw)
    numax = int(m.group(5))
    graph = EvalGraph(group, spec, numax if numax else None, m.group(6), int(m.group(7)))

    offset += len(lines[0].encode("utf-8")) + 1
    for raw in lines[1:]:
        line_offset = offset
        offset += len(raw.encode("utf-8")) + 1
        if not raw:
            continue
        parts = raw.split(" ")
        if len(parts) not in (4, 5):
            raise GraphFormatError(f"bad node line: {raw!r}", line_offset)
        try:
            ident = int(parts[0])
            aux = int(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad node line: {raw!r}", line_offset) from None
        if ident != len(graph.nodes):
            raise GraphFormatError(f"node ids must be dense and ascending, got {ident}", line_offset)
        if aux not in (0, 1):
            raise GraphFormatError(f"auxiliary flag must be 0 or 1, got {parts[1]!r}", line_offset)
        try:
            elements = parse_elements(group, parts[2])
        except ValueError as exc:
            raise GraphFormatError(str(exc), line_offset) from None
        if parts[3] == "-":
            if len(parts) != 4:
                raise GraphFormatError(f"bad parent field: {raw!r}", line_offset)
            parents = None
            if len(elements) != 1:
                raise GraphFormatError("only order-1 nodes may lack parents", line_offset)
        else:
            if len(parts) != 5:
                raise GraphFormatError(f"bad parent field: {raw!r}", line_offset)
            try:
                parents = (int(parts[3]), int(parts[4]))
            except ValueError:
                raise GraphFormatError(f"bad parent ids: {raw!r}", line_offset) from None
            if not all(0 <= q < ident for q in parents):
                raise GraphFormatError(f"parent ids must precede node {ident}", line_offset)
            merged = tuple(sorted(graph.nodes[parents[0]].elements + graph.nodes[parents[1]].elements))
            if merged != elements:
                raise GraphFormatError(f"parents do not union to node {ident}", line_offset)
        if len(elements) == 1 and aux:
            raise GraphFormatError("order-1 nodes cannot be auxiliary", line_offset)
        if len(elements) > 1 and bool(aux) == graph.is_target(elements):
            raise GraphFormatError(f"auxiliary flag inconsistent on node {ident}", line_offset)
        node = GraphNode(ident, elements, parents, bool(aux))
        if elements in graph._ids:
            raise GraphFormatError(f"duplicate tuple at node {ident}", line_offset)
        graph.nodes.append(node)
        graph._ids[elements] = ident
    if not graph.nodes:
        raise GraphFormatError("graph has no nodes; order-1 seeds are mandatory", offset)
    return graph


def write_graph(graph: EvalGraph, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_graph(graph))


def read_graph(path) -> EvalGraph:
    with open(path, "rb") as fh:
        return deserialize_graph(fh.read())
