# -*- coding: utf-8 -*-
"""Modelo combinatório das arestas D do diagrama D_∞ de Floyd-Hatcher.

Arestas D: pares de racionais reduzidos com denominadores pares (1/0 conta como
par) e determinante cruzado ±2. Só caminhos de comprimento 1 ou 2 são
enumerados; comprimentos maiores são rejeitados.
"""
from __future__ import annotations
import logging
import sys
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from common import InvalidInput, NotApplicable
from modules.notation import (
    CanonicalLink,
    Slope,
    canonicalize_link,
    cf_to_slope,
    class_representative,
    is_hyperbolic,
    mirror_link,
)

log = logging.getLogger(__name__)

MERIDIANO = Slope(1, 0)

# ──────────────────────────────────────────────────────────────────────────────
# Tipos

@dataclass(frozen=True)
class DPath:
    vertices: Tuple[Slope, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidInput("bad_path", "Caminho sem vértices.")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not is_d_edge(a, b):
                raise InvalidInput("bad_path", f"{a} -> {b} não é uma aresta D.")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def endpoint(self) -> Slope:
        return self.vertices[-1]

    def endpoint_link(self) -> CanonicalLink:
        """Forma canônica (mod 1) do enlace no ponto final."""
        return canonicalize_link(self.endpoint)

    def __str__(self) -> str:
        return " -> ".join(str(v) for v in self.vertices)


@dataclass
class LemmaReport:
    ok: bool
    n_bound: int
    denominator_bound: int
    endpoints: List[str] = field(default_factory=list)
    family: List[str] = field(default_factory=list)
    only_in_endpoints: List[str] = field(default_factory=list)
    only_in_family: List[str] = field(default_factory=list)
    length_one_endpoints: List[str] = field(default_factory=list)
    length_one_non_hyperbolic: bool = True

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "n_bound": self.n_bound,
            "denominator_bound": self.denominator_bound,
            "endpoints": self.endpoints,
            "family": self.family,
            "only_in_endpoints": self.only_in_endpoints,
            "only_in_family": self.only_in_family,
            "length_one_endpoints": self.length_one_endpoints,
            "length_one_non_hyperbolic": self.length_one_non_hyperbolic,
        }

# ──────────────────────────────────────────────────────────────────────────────
# Predicados de aresta

def _det(a: Slope, b: Slope) -> int:
    return a.p * b.q - b.p * a.q


def is_farey_edge(a: Slope, b: Slope) -> bool:
    return abs(_det(a, b)) == 1


def is_d_edge(a: Slope, b: Slope) -> bool:
    return a.q % 2 == 0 and b.q % 2 == 0 and abs(_det(a, b)) == 2

# ──────────────────────────────────────────────────────────────────────────────
# Região finita de busca

def _window(anchors: Sequence[Slope], denominator_bound: int) -> int:
    return denominator_bound + max((abs(s.p) for s in anchors), default=0)


def _d_neighbors(x: Slope, denominator_bound: int, window: int) -> Iterator[Slope]:
    """Vizinhos D de x com denominador <= bound e |numerador| <= window.

    Para x = p/(2j) e y = m/(2k): |p(2k) - m(2j)| = 2 equivale a |pk - mj| = 1,
    então k percorre as classes ±p⁻¹ (mod j).
    """
    if x.q == 0:
        # 1/0 -> a/2 com a ímpar, os de menor |a| primeiro
        for a in range(1, window + 1, 2):
            yield Slope(a, 2)
            yield Slope(-a, 2)
        return
    if x.q % 2:
        return
    if x.q == 2:
        yield MERIDIANO
    p, j = x.p, x.q // 2
    k_max = denominator_bound // 2
    for eps in (1, -1):
        if j == 1:
            inicio = 1
        else:
            inicio = (eps * pow(p, -1, j)) % j
        for k in range(inicio, k_max + 1, j):
            m, resto = divmod(p * k - eps, j)
            if resto or m % 2 == 0 or abs(m) > window:
                continue
            yield Slope(m, 2 * k)


def d_region(anchors: Sequence[Slope], denominator_bound: int) -> nx.Graph:
    """Grafo D completo da região (denominador <= bound, janela de numeradores)."""
    window = _window(anchors, denominator_bound)
    g = nx.Graph()
    g.add_node(MERIDIANO)
    for q in range(2, denominator_bound + 1, 2):
        for p in range(-window, window + 1):
            if p % 2 and gcd(p, q) == 1:
                g.add_node(Slope(p, q))
    for x in list(g.nodes):
        for y in _d_neighbors(x, denominator_bound, window):
            g.add_edge(x, y)
    log.debug("região D: bound=%s janela=%s vértices=%s arestas=%s",
              denominator_bound, window, g.number_of_nodes(), g.number_of_edges())
    return g


def _check_even(s: Slope) -> None:
    if s.q % 2:
        raise NotApplicable("odd_denominator", f"{s} tem denominador ímpar: não é vértice de D_∞.")

# ──────────────────────────────────────────────────────────────────────────────
# Distância e caminhos

def d_distance(a: Slope, b: Slope, denominator_bound: int) -> Optional[int]:
    """Menor número de arestas D entre a e b na região; None se inalcançável."""
    _check_even(a)
    _check_even(b)
    if denominator_bound < max(a.q, b.q):
        raise InvalidInput("bad_bound", f"Limite {denominator_bound} menor que os denominadores de {a} e {b}.")
    if a == b:
        return 0
    window = _window((a, b), denominator_bound)
    # o grafo só fornece a origem; os vizinhos vêm de _d_neighbors, sob demanda
    semente = nx.Graph()
    semente.add_node(a)
    profundidade: Dict[Slope, int] = {a: 0}
    vizinhos = lambda x: _d_neighbors(x, denominator_bound, window)  # noqa: E731
    for pai, filho in nx.generic_bfs_edges(semente, a, neighbors=vizinhos, depth_limit=sys.maxsize):
        profundidade[filho] = profundidade[pai] + 1
        if filho == b:
            return profundidade[filho]
    return None


def enumerate_d_paths(length: int, denominator_bound: int) -> FrozenSet[DPath]:
    """Todos os caminhos D simples a partir de 1/0 com exatamente `length` arestas."""
    if length not in (1, 2):
        raise InvalidInput("unsupported_length", f"Comprimento {length} não suportado (use 1 ou 2).")
    if denominator_bound < 2:
        raise InvalidInput("bad_bound", "O limite de denominador deve ser >= 2.")
    window = _window((MERIDIANO,), denominator_bound)
    caminhos = set()
    for v1 in _d_neighbors(MERIDIANO, denominator_bound, window):
        if length == 1:
            caminhos.add(DPath((MERIDIANO, v1)))
            continue
        for v2 in _d_neighbors(v1, denominator_bound, window):
            if v2 != MERIDIANO:
                caminhos.add(DPath((MERIDIANO, v1, v2)))
    return frozenset(caminhos)


def _rotulos(links) -> List[str]:
    return [str(l) for l in sorted(links, key=lambda l: (l.q, l.p))]


def lemma_family_check(n_bound: int) -> Tuple[bool, LemmaReport]:
    """Extremos hiperbólicos de caminhos D de comprimento 2 == família [2,n,-2], |n| >= 2."""
    if n_bound < 2:
        raise InvalidInput("bad_bound", "n_bound deve ser >= 2.")
    bound = 4 * n_bound

    extremos = set()
    for caminho in enumerate_d_paths(2, bound):
        link = caminho.endpoint_link()
        if is_hyperbolic(link):
            extremos.add(class_representative(link))

    familia = set()
    for n in range(2, n_bound + 1):
        for sinal in (1, -1):
            link = canonicalize_link(cf_to_slope((2, sinal * n, -2)))
            familia.add(class_representative(link))
            familia.add(class_representative(mirror_link(link)))

    # comprimento 1: só L_{1/2}, que não é hiperbólico
    um = {caminho.endpoint_link() for caminho in enumerate_d_paths(1, bound)}

    report = LemmaReport(
        ok=False,
        n_bound=n_bound,
        denominator_bound=bound,
        endpoints=_rotulos(extremos),
        family=_rotulos(familia),
        only_in_endpoints=_rotulos(extremos - familia),
        only_in_family=_rotulos(familia - extremos),
        length_one_endpoints=_rotulos(um),
        length_one_non_hyperbolic=not any(is_hyperbolic(l) for l in um),
    )
    report.ok = extremos == familia and report.length_one_non_hyperbolic
    if not report.ok:
        log.warning("lemma_family_check(%s) falhou: %s", n_bound, report.to_dict())
    return report.ok, report
