# -*- coding: utf-8 -*-
"""Slopes, frações contínuas e a forma canônica dos enlaces de duas pontes.

Convenção das frações contínuas: [b1, ..., bn] vale 1/(b1 + 1/(b2 + ... + 1/bn)),
de modo que [n] = 1/n e L_{[n]} = L_{1/n}.
"""
from __future__ import annotations
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Tuple

import numpy as np

from common import InvalidInput, NotApplicable

log = logging.getLogger(__name__)

_RE_SLOPE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")
_RE_CF = re.compile(r"^\s*\[\s*([+-]?\d+(?:\s*,\s*[+-]?\d+)*)?\s*\]\s*$")

# ──────────────────────────────────────────────────────────────────────────────
# Tipos

@dataclass(frozen=True)
class Slope:
    """Racional reduzido p/q; q = 0 só para o meridiano 1/0."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0:
            raise InvalidInput("malformed_slope", f"Denominador negativo em {self.p}/{self.q}.")
        if self.q == 0 and self.p != 1:
            raise InvalidInput("zero_denominator", f"{self.p}/0 não é um slope (use 1/0).")
        if gcd(self.p, self.q) != 1:
            raise InvalidInput("malformed_slope", f"{self.p}/{self.q} não está reduzido.")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        """Reduz e normaliza o sinal (q > 0, ou 1/0)."""
        p, q = int(p), int(q)
        if q == 0:
            if p in (1, -1):
                return cls(1, 0)
            raise InvalidInput("zero_denominator", f"{p}/0 não é um slope.")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0:
            p, q = -p, -q
        return cls(p, q)

    @property
    def is_meridian(self) -> bool:
        return self.q == 0

    @property
    def is_integer(self) -> bool:
        return self.q == 1

    def fraction(self) -> Fraction:
        if self.q == 0:
            raise NotApplicable("meridian_slope", "O meridiano 1/0 não tem valor racional.")
        return Fraction(self.p, self.q)

    def sort_key(self) -> Tuple[int, Fraction]:
        # meridiano por último
        return (1, Fraction(0)) if self.q == 0 else (0, Fraction(self.p, self.q))

    def __neg__(self) -> "Slope":
        return self if self.q == 0 else Slope(-self.p, self.q)

    def __str__(self) -> str:
        return format_slope(self)


@dataclass(frozen=True)
class ContinuedFraction:
    entries: Tuple[int, ...]

    def __post_init__(self):
        if not self.entries:
            raise InvalidInput("empty_cf", "Fração contínua vazia.")
        object.__setattr__(self, "entries", tuple(int(b) for b in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def negated(self) -> "ContinuedFraction":
        return ContinuedFraction(tuple(-b for b in self.entries))

    def __str__(self) -> str:
        return "[" + ",".join(str(b) for b in self.entries) + "]"


@dataclass(frozen=True)
class CanonicalLink:
    """Enlace de duas componentes L_{p/q} na forma 0 < p < q, q par."""

    slope: Slope

    def __post_init__(self):
        p, q = self.slope.p, self.slope.q
        if q < 2 or q % 2 or not 0 < p < q:
            raise InvalidInput("malformed_slope", f"{p}/{q} não é a forma canônica de um enlace.")

    @property
    def p(self) -> int:
        return self.slope.p

    @property
    def q(self) -> int:
        return self.slope.q

    @property
    def hyperbolic(self) -> bool:
        return is_hyperbolic(self)

    def __str__(self) -> str:
        return format_slope(self.slope)

# ──────────────────────────────────────────────────────────────────────────────
# Parsing / formatação

def format_slope(s: Slope) -> str:
    return f"{s.p}/{s.q}"


def parse_slope(text: str) -> Slope:
    m = _RE_SLOPE.match(text or "")
    if not m:
        raise InvalidInput("malformed_slope", f"Slope inválido: {text!r} (use p/q ou um inteiro).")
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) is not None else 1
    if p == 0 and q == 0:
        raise InvalidInput("zero_denominator", "0/0 não é um slope.")
    return Slope.of(p, q)


def parse_continued_fraction(text: str) -> ContinuedFraction:
    m = _RE_CF.match(text or "")
    if not m:
        raise InvalidInput("malformed_cf", f"Fração contínua inválida: {text!r} (use [b1,b2,...]).")
    if m.group(1) is None:
        raise InvalidInput("empty_cf", "Fração contínua vazia.")
    return ContinuedFraction(tuple(int(b) for b in m.group(1).split(",")))


def parse_link(text: str) -> CanonicalLink:
    """Aceita "[b1,...,bn]" ou "p/q" e devolve a forma canônica."""
    if (text or "").strip().startswith("["):
        return canonicalize_link(cf_to_slope(parse_continued_fraction(text)))
    return canonicalize_link(parse_slope(text))

# ──────────────────────────────────────────────────────────────────────────────
# Frações contínuas

def _continuant(b: int) -> np.ndarray:
    return np.array([[b, 1], [1, 0]], dtype=object)


@lru_cache(maxsize=65536)
def _cf_pair(entries: Tuple[int, ...]) -> Tuple[int, int]:
    m = np.array([[1, 0], [0, 1]], dtype=object)
    for b in entries:
        m = m @ _continuant(b)
    # m = [[P_n, P_{n-1}], [Q_n, Q_{n-1}]] com P_n/Q_n = b1 + 1/(b2 + ...); o valor é o inverso
    return int(m[1, 0]), int(m[0, 0])


def cf_to_slope(cf: ContinuedFraction | Tuple[int, ...] | list) -> Slope:
    if not isinstance(cf, ContinuedFraction):
        cf = ContinuedFraction(tuple(cf))
    num, den = _cf_pair(cf.entries)
    return Slope.of(num, den)


def slope_to_cf(s: Slope) -> ContinuedFraction:
    """Expansão positiva canônica de s mod 1 (última entrada >= 2)."""
    if s.q == 0:
        raise InvalidInput("zero_denominator", "1/0 não tem expansão em fração contínua.")
    a, b = s.q, s.p % s.q
    if b == 0:
        raise InvalidInput("integral_slope", f"{s} é inteiro: 0 não tem expansão finita nesta convenção.")
    entries = []
    while b:
        k, r = divmod(a, b)
        entries.append(k)
        a, b = b, r
    return ContinuedFraction(tuple(entries))

# ──────────────────────────────────────────────────────────────────────────────
# Enlaces de duas pontes

def canonicalize_link(s: Slope) -> CanonicalLink:
    if s.q < 2:
        raise NotApplicable("degenerate_denominator", f"L_{{{s}}} não é um enlace de duas componentes (q < 2).")
    if s.q % 2:
        raise NotApplicable("odd_denominator", f"L_{{{s}}} tem denominador ímpar: é um nó, não um enlace.")
    return CanonicalLink(Slope(s.p % s.q, s.q))


def equivalent_links(a: CanonicalLink, b: CanonicalLink) -> bool:
    if a.q != b.q:
        return False
    q = a.q
    return (b.p - a.p) % q == 0 or (a.p * b.p) % q == 1


def mirror_link(a: CanonicalLink) -> CanonicalLink:
    return CanonicalLink(Slope(a.q - a.p, a.q))


def inverse_link(a: CanonicalLink) -> CanonicalLink:
    return CanonicalLink(Slope(pow(a.p, -1, a.q), a.q))


def class_representative(a: CanonicalLink) -> CanonicalLink:
    """Representante da classe de equivalência com menor numerador."""
    inv = inverse_link(a)
    return inv if inv.p < a.p else a


def is_hyperbolic(a: CanonicalLink) -> bool:
    # Menasco: hiperbólico sse não equivalente a L_{1/n}
    return a.p % a.q not in (1, a.q - 1)
