"""Layered search for dense configurations, and an independent verifier.

Descent: starting from S_0, repeatedly take the product vector y with the
largest q, keep a pairwise-disjoint family of its quadruples, and restrict
the system to the vertices those quadruples use on each side, dropping every
edge whose product is a component of any y chosen so far. After t-1 rounds,
one good quadruple of the last system is the base.

Expansion: each quadruple of a layer pulls in, from the family one level
down, the members whose first coordinate is its a or c and whose second
coordinate is its b or d. The elements of all layers together with the y
components span at least ceil(4(nu - 3t)/3 * (1 - 4^-t)) triples of S_0.

Dense regular blocks are not located; the restriction goes straight to the
family's vertex sets, and soundness rests on :func:`verify_configuration`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from tripleconf.errors import ConfigurationNotFound, InvalidSpecification, ParseError, ValidationError
from tripleconf.group import GroupSpec, format_group, parse_group
from tripleconf.quadruples import (
    GoodQuadruple,
    ProductVector,
    disjoint,
    disjoint_subfamily,
    enumerate_good_quadruples,
    q_max,
)
from tripleconf.triples import TripleSystem, restrict


@dataclass(frozen=True)
class SearchParams:
    t: int = 2
    min_bucket: int = 3
    min_edges: int = 8
    workers: int = 1

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        if self.min_bucket < 1 or self.min_edges < 1:
            raise ValueError("min_bucket and min_edges must be >= 1")


@dataclass
class LayerContext:
    """One level of the descent: y chosen in ``source``, its disjoint family, and the restriction."""

    level: int
    source: TripleSystem
    y: ProductVector
    q: int
    family: list[GoodQuadruple]
    restricted: TripleSystem | None = None
    forbidden: frozenset = frozenset()

    @property
    def edges(self):
        return [(f.a, f.b) for f in self.family]

    @property
    def left(self):
        return sorted({f.a for f in self.family})

    @property
    def right(self):
        return sorted({f.b for f in self.family})


@dataclass(frozen=True)
class Configuration:
    group: GroupSpec
    t: int
    y_vectors: tuple  # y_vectors[0] is y^(1), chosen in S_0
    layers: tuple  # layers[0] is L_1 = (base,), layers[i] is L_{i+1}
    elements: tuple
    triples: tuple
    contexts: tuple = field(default=(), compare=False, repr=False)

    @property
    def nu(self) -> int:
        return len(self.elements)

    @property
    def spanned(self) -> int:
        return len(self.triples)


@dataclass
class VerifyReport:
    nu: int
    spanned: int
    required: int
    layer_bounds_ok: bool
    passed: bool
    problems: list = field(default_factory=list)

    def summary(self) -> str:
        return (
            f"nu={self.nu}, spanned={self.spanned}, required={self.required}, "
            f"pass={'true' if self.passed else 'false'}"
        )


def element_disjoint(x, y) -> bool:
    return not set(x) & set(y)


def required_triples(nu: int, t: int) -> int:
    """ceil((4(nu - 3t)/3) * (1 - 4^-t)), computed exactly."""
    return math.ceil(Fraction(4 * (nu - 3 * t) * (4**t - 1), 3 * 4**t))


def descend(S0: TripleSystem, params: SearchParams) -> list[LayerContext]:
    """Run the descent and base selection; returns contexts for levels 1..t."""
    t = params.t
    current = S0
    forbidden = set()
    contexts = []
    for level in range(1, t):
        index = enumerate_good_quadruples(current, workers=params.workers)
        if not index:
            raise ConfigurationNotFound("no-quadruples", level, f"|S|={len(current)}")
        y, q = q_max(index)
        if q < params.min_bucket:
            raise ConfigurationNotFound("bucket-too-small", level, f"q_max={q} < {params.min_bucket}")
        family = disjoint_subfamily(index.bucket(y))
        forbidden.update(y)
        ctx = LayerContext(level, current, y, q, family, forbidden=frozenset(forbidden))
        nxt = restrict(current, ctx.left, ctx.right, forbidden)
        if len(nxt) < params.min_edges:
            raise ConfigurationNotFound(
                "restricted-too-sparse", level, f"|S|={len(nxt)} < {params.min_edges}"
            )
        ctx.restricted = nxt
        contexts.append(ctx)
        current = nxt

    index = enumerate_good_quadruples(current, workers=params.workers)
    if not index:
        reason = "no-quadruples" if t == 1 else "base-quadruple-missing"
        raise ConfigurationNotFound(reason, t, f"|S|={len(current)}")
    y, q = q_max(index)
    base = index.bucket(y)[0]
    contexts.append(LayerContext(t, current, y, q, [base], forbidden=frozenset(forbidden)))
    return contexts


def expand(contexts: list[LayerContext]) -> list[list[GoodQuadruple]]:
    """Build L_1..L_t from the base down through the families of levels t-1..1."""
    t = len(contexts)
    layers = [list(contexts[-1].family)]
    for i in range(1, t):
        ctx = contexts[t - i - 1]
        by_first = {f.a: f for f in ctx.family}
        by_second = {f.b: f for f in ctx.family}
        attached = set()
        for a, b, c, d in layers[-1]:
            for key, table in ((a, by_first), (c, by_first), (b, by_second), (d, by_second)):
                if key not in table:
                    raise ConfigurationNotFound(
                        "base-quadruple-missing", ctx.level, f"no family member at coordinate {key}"
                    )
                attached.add(table[key])
        layers.append(sorted(attached))
    return layers


def _elements_of(layers, y_vectors):
    elems = set()
    for layer in layers:
        for q in layer:
            elems.update(q)
    for y in y_vectors:
        elems.update(y)
    return elems


def _spanned_scan(S0: TripleSystem, elements):
    """Every triple of S_0 inside ``elements``, found by scanning all edges of S_0."""
    inside = np.zeros(S0.n, dtype=bool)
    inside[list(elements)] = True
    e = S0.edge_array()
    if len(e) == 0:
        return []
    prod = S0.group.add_table[e[:, 0], e[:, 1]]
    keep = inside[e[:, 0]] & inside[e[:, 1]] & inside[prod]
    return [(int(a), int(b), int(p)) for (a, b), p in zip(e[keep], prod[keep])]


def find_configuration(S0: TripleSystem, params: SearchParams | None = None) -> Configuration:
    """Run the layered construction; raises :class:`ConfigurationNotFound` on failure."""
    params = params or SearchParams()
    contexts = descend(S0, params)
    layers = expand(contexts)
    y_vectors = tuple(ctx.y for ctx in contexts)
    elements = tuple(sorted(_elements_of(layers, y_vectors)))
    cfg = Configuration(
        group=S0.group,
        t=params.t,
        y_vectors=y_vectors,
        layers=tuple(tuple(layer) for layer in layers),
        elements=elements,
        triples=tuple(_spanned_scan(S0, elements)),
        contexts=tuple(contexts),
    )
    report = verify_configuration(S0, cfg)
    if not report.passed:
        raise RuntimeError(f"finder produced a configuration that fails verification: {report.problems}")
    return cfg


def verify_configuration(S0: TripleSystem, cfg: Configuration) -> VerifyReport:
    """Recheck a configuration against S_0 from scratch.

    Raises :class:`ValidationError` when the configuration names ranks outside
    the group; every other defect shows up as ``passed=False``.
    """
    g = S0.group
    n = g.order
    t = cfg.t
    problems = []

    def in_range(v):
        return isinstance(v, (int, np.integer)) and 0 <= v < n

    ranks = list(cfg.elements)
    for y in cfg.y_vectors:
        ranks.extend(y)
    for layer in cfg.layers:
        for q in layer:
            ranks.extend(q)
    for tr in cfg.triples:
        ranks.extend(tr)
    bad = [v for v in ranks if not in_range(v)]
    if bad:
        raise ValidationError(f"ranks outside group of order {n}: {sorted(set(bad))[:5]}")
    if cfg.group != g:
        problems.append(f"configuration group {format_group(cfg.group)} != {format_group(g)}")

    elements = set(cfg.elements)
    nu = len(elements)
    spanned = len(_spanned_scan(S0, elements)) if elements else 0
    required = required_triples(nu, t)

    if t < 1 or len(cfg.y_vectors) != t or len(cfg.layers) != t:
        problems.append("expected t product vectors and t layers")
    if len(cfg.elements) != nu:
        problems.append("duplicate entries in element list")
    if elements != _elements_of(cfg.layers, cfg.y_vectors):
        problems.append("element list differs from layer coordinates plus y components")

    add, adj = g.add_table, S0.adjacency
    for a, b, p in cfg.triples:
        if not adj[a, b] or add[a, b] != p:
            problems.append(f"triple ({a}, {b}, {p}) is not in S_0")
        elif not {a, b, p} <= elements:
            problems.append(f"triple ({a}, {b}, {p}) leaves the element set")

    for i, layer in enumerate(cfg.layers, start=1):
        if len(cfg.y_vectors) != t or len(cfg.layers) != t:
            break
        y = tuple(cfg.y_vectors[t - i])
        for q in layer:
            a, b, c, d = q
            good = a != c and add[a, b] == add[c, d] and adj[a, b] and adj[a, d] and adj[c, b] and adj[c, d]
            if not good:
                problems.append(f"layer {i}: {tuple(q)} is not S_0-good")
            elif (int(add[c, b]), int(add[a, b]), int(add[a, d])) != y:
                problems.append(f"layer {i}: {tuple(q)} does not have product vector {y}")
        if i >= 2:
            for j, q in enumerate(layer):
                for r in layer[j + 1 :]:
                    if not disjoint(q, r):
                        problems.append(f"layer {i}: {tuple(q)} and {tuple(r)} are not disjoint")

    for i, x in enumerate(cfg.y_vectors):
        for y in cfg.y_vectors[i + 1 :]:
            if not element_disjoint(x, y):
                problems.append(f"product vectors {tuple(x)} and {tuple(y)} share an element")

    layer_bounds_ok = 2 ** (t + 1) <= nu <= 4**t + 3 * t
    if not layer_bounds_ok:
        problems.append(f"nu={nu} outside [{2 ** (t + 1)}, {4**t + 3 * t}]")
    for i, layer in enumerate(cfg.layers, start=1):
        if i < 2:
            continue
        count = len({v for q in layer for v in q})
        if not 2 ** (i + 1) <= count <= 4**i:
            layer_bounds_ok = False
            problems.append(f"layer {i} has {count} elements, outside [{2 ** (i + 1)}, {4**i}]")

    if spanned < required:
        problems.append(f"spanned={spanned} < required={required}")

    return VerifyReport(nu, spanned, required, layer_bounds_ok, not problems, problems)


# configuration file format


def dumps_configuration(cfg: Configuration, report: VerifyReport | None = None) -> str:
    out = [f"GROUP {format_group(cfg.group)}", f"T {cfg.t}", "Y_VECTORS"]
    out.extend(" ".join(map(str, y)) for y in cfg.y_vectors)
    out.append("LAYERS")
    for i, layer in enumerate(cfg.layers, start=1):
        out.append(f"LAYER {i}")
        out.extend(" ".join(map(str, q)) for q in layer)
    out.append("ELEMENTS")
    out.append(" ".join(map(str, cfg.elements)))
    out.append("TRIPLES")
    out.extend(" ".join(map(str, tr)) for tr in cfg.triples)
    out.append("SUMMARY")
    if report is None:
        out.append(f"nu={cfg.nu}, spanned={cfg.spanned}")
    else:
        out.append(report.summary())
    return "\n".join(out) + "\n"


_SECTIONS = ("Y_VECTORS", "LAYERS", "ELEMENTS", "TRIPLES", "SUMMARY")


def loads_configuration(text: str) -> Configuration:
    lines = [
        (no, raw.split("#", 1)[0].strip())
        for no, raw in enumerate(text.splitlines(), start=1)
    ]
    lines = [(no, s) for no, s in lines if s]
    if len(lines) < 2:
        raise ParseError("configuration file is truncated", len(lines) + 1)

    def ints(no, s, width=None):
        try:
            vals = [int(tok) for tok in s.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {s!r}", no) from None
        if width is not None and len(vals) != width:
            raise ParseError(f"expected {width} integers, got {len(vals)}", no)
        return vals

    no, s = lines[0]
    if not s.startswith("GROUP "):
        raise ParseError("expected GROUP line", no)
    try:
        group = parse_group(s[6:])
    except InvalidSpecification as exc:
        raise ParseError(str(exc), no) from None
    no, s = lines[1]
    if not s.startswith("T "):
        raise ParseError("expected T line", no)
    t = ints(no, s[2:], 1)[0]

    sections = {}
    current = None
    for no, s in lines[2:]:
        head = s.split()[0]
        if head in _SECTIONS:
            if head in sections:
                raise ParseError(f"repeated section {head}", no)
            current = head
            sections[head] = []
        elif current is None:
            raise ParseError(f"unexpected line {s!r}", no)
        else:
            sections[current].append((no, s))
    missing = [name for name in _SECTIONS if name not in sections]
    if missing:
        raise ParseError(f"configuration file is truncated: missing {', '.join(missing)}", lines[-1][0])

    y_vectors = tuple(ProductVector(*ints(no, s, 3)) for no, s in sections["Y_VECTORS"])
    layers = []
    for no, s in sections["LAYERS"]:
        if s.startswith("LAYER"):
            if ints(no, s[5:], 1)[0] != len(layers) + 1:
                raise ParseError("layers out of order", no)
            layers.append([])
        elif not layers:
            raise ParseError("quadruple before any LAYER header", no)
        else:
            layers[-1].append(GoodQuadruple(*ints(no, s, 4)))
    elements = []
    for no, s in sections["ELEMENTS"]:
        elements.extend(ints(no, s))
    triples = tuple(tuple(ints(no, s, 3)) for no, s in sections["TRIPLES"])
    if len(y_vectors) != t or len(layers) != t:
        raise ParseError(f"expected {t} product vectors and {t} layers", lines[-1][0])
    return Configuration(
        group=group,
        t=t,
        y_vectors=y_vectors,
        layers=tuple(tuple(layer) for layer in layers),
        elements=tuple(elements),
        triples=triples,
    )


def save_configuration(cfg, path, report=None):
    Path(path).write_text(dumps_configuration(cfg, report))


def load_configuration(path) -> Configuration:
    return loads_configuration(Path(path).read_text())
