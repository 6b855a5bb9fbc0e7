# -*- coding: utf-8 -*-
"""Classificação das cirurgias excepcionais numa componente de um enlace de duas pontes.

Famílias:
  T2a [2w,v,2u], r = -w-u, w = 1, u = -1, |v| >= 2      (tórica, variedade-grafo)
  T2b [2w,v,2u], r = -w-u, w >= 2, |u| >= 2, |v| = 1    (tórica, variedade-grafo)
  T2c [2w,v,2u], r = -w-u, w >= 2, |u| >= 2, |v| >= 2   (tórica, não-grafo)
  S3a [3,2u+1],  r = u,      u != 0, -1                 (Seifert pequena)
  S3b [2w+1,3],  r = -w-1,   w >= 1
  S3c [3,-3],    r = -1
  S3d [2w+1,2u+1], r = -w+u, w >= 1, u != 0, -1

Cada família lista um representante por par de imagens espelhadas; o espelho
(p -> q-p, r -> -r) é casado numa segunda passada.
"""
from __future__ import annotations
import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from common import (
    FAMILIAS,
    FAMILIAS_GRAFO,
    FAMILIAS_TOROIDAIS,
    ConsistencyFault,
    InvalidInput,
    NotApplicable,
)
from modules.notation import (
    CanonicalLink,
    ContinuedFraction,
    Slope,
    canonicalize_link,
    cf_to_slope,
    equivalent_links,
    is_hyperbolic,
    mirror_link,
)

log = logging.getLogger(__name__)

# ──────────────────────────────────────────────────────────────────────────────
# Tipos

class SurgeryKind(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    TOROIDAL = "toroidal"
    SMALL_SEIFERT = "small_seifert"


@dataclass(frozen=True)
class FamilyWitness:
    family: str
    w: Optional[int] = None
    v: Optional[int] = None
    u: Optional[int] = None
    mirrored: bool = False

    def params(self) -> Dict[str, int]:
        return {k: getattr(self, k) for k in ("w", "v", "u") if getattr(self, k) is not None}

    def to_dict(self) -> dict:
        d: dict = dict(self.params())
        d["mirrored"] = self.mirrored
        return d

    def __str__(self) -> str:
        pars = ",".join(f"{k}={v}" for k, v in self.params().items())
        espelho = " (espelho)" if self.mirrored else ""
        return f"{self.family}({pars}){espelho}"


@dataclass(frozen=True)
class SurgeryClass:
    kind: SurgeryKind
    graph_manifold: Optional[bool] = None
    witness: Optional[FamilyWitness] = None

    @classmethod
    def hyperbolic(cls) -> "SurgeryClass":
        return cls(SurgeryKind.HYPERBOLIC)

    @classmethod
    def from_witness(cls, witness: FamilyWitness) -> "SurgeryClass":
        if witness.family in FAMILIAS_TOROIDAIS:
            return cls(SurgeryKind.TOROIDAL, witness.family in FAMILIAS_GRAFO, witness)
        return cls(SurgeryKind.SMALL_SEIFERT, None, witness)

    @property
    def family(self) -> Optional[str]:
        return self.witness.family if self.witness else None

    def signature(self) -> Tuple[str, Optional[bool]]:
        """(kind, graph_manifold): o que é invariante por equivalência e espelho."""
        return self.kind.value, self.graph_manifold

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind.value}
        if self.kind is SurgeryKind.TOROIDAL:
            d["graph_manifold"] = bool(self.graph_manifold)
        if self.witness is not None:
            d["family"] = self.witness.family
            d["witness"] = self.witness.to_dict()
        return d

# ──────────────────────────────────────────────────────────────────────────────
# Famílias: fração contínua, slope e restrições

def witness_cf(witness: FamilyWitness) -> ContinuedFraction:
    f, w, v, u = witness.family, witness.w, witness.v, witness.u
    if f in FAMILIAS_TOROIDAIS:
        return ContinuedFraction((2 * w, v, 2 * u))
    if f == "S3a":
        return ContinuedFraction((3, 2 * u + 1))
    if f == "S3b":
        return ContinuedFraction((2 * w + 1, 3))
    if f == "S3c":
        return ContinuedFraction((3, -3))
    if f == "S3d":
        return ContinuedFraction((2 * w + 1, 2 * u + 1))
    raise InvalidInput("bad_family", f"Família desconhecida: {f!r}.")


def family_slope(witness: FamilyWitness) -> int:
    """Slope da família, antes do espelho."""
    f, w, u = witness.family, witness.w, witness.u
    if f in FAMILIAS_TOROIDAIS:
        return -w - u
    if f == "S3a":
        return u
    if f == "S3b":
        return -w - 1
    if f == "S3c":
        return -1
    if f == "S3d":
        return -w + u
    raise InvalidInput("bad_family", f"Família desconhecida: {f!r}.")


_PARAMS_DA_FAMILIA = {
    "T2a": ("w", "v", "u"), "T2b": ("w", "v", "u"), "T2c": ("w", "v", "u"),
    "S3a": ("u",), "S3b": ("w",), "S3c": (), "S3d": ("w", "u"),
}


def validate_witness(witness: FamilyWitness) -> None:
    f = witness.family
    if f not in FAMILIAS:
        raise InvalidInput("bad_family", f"Família desconhecida: {f!r}.")
    esperados = _PARAMS_DA_FAMILIA[f]
    for nome in ("w", "v", "u"):
        presente = getattr(witness, nome) is not None
        if presente != (nome in esperados):
            raise InvalidInput("bad_parameters", f"{f} usa exatamente os parâmetros {esperados}.")
    w, v, u = witness.w, witness.v, witness.u
    ok = {
        "T2a": lambda: w == 1 and u == -1 and abs(v or 0) >= 2,
        "T2b": lambda: w >= 2 and abs(u) >= 2 and abs(v) == 1,
        "T2c": lambda: w >= 2 and abs(u) >= 2 and abs(v) >= 2,
        "S3a": lambda: u not in (0, -1),
        "S3b": lambda: w >= 1,
        "S3c": lambda: True,
        "S3d": lambda: w >= 1 and u not in (0, -1),
    }[f]()
    if not ok:
        raise InvalidInput("bad_parameters", f"Parâmetros fora das restrições da família: {witness}.")


def family_instance(witness: FamilyWitness) -> Tuple[CanonicalLink, Slope]:
    """Reconstrói (enlace canônico, slope inteiro) a partir de uma testemunha."""
    validate_witness(witness)
    link, r = _instancia_direta(witness)
    if witness.mirrored:
        return mirror_link(link), -r
    return link, r


def _instancia_direta(witness: FamilyWitness) -> Tuple[CanonicalLink, Slope]:
    s = cf_to_slope(witness_cf(witness))
    try:
        link = canonicalize_link(s)
    except NotApplicable as e:
        raise ConsistencyFault("constraint_gap", f"{witness} reconstrói {s}: {e.message}") from e
    if not is_hyperbolic(link):
        raise ConsistencyFault("constraint_gap", f"{witness} reconstrói o enlace não hiperbólico {link}.")
    return link, Slope(family_slope(witness), 1)

# ──────────────────────────────────────────────────────────────────────────────
# Geração das instâncias (busca exaustiva limitada)
#
# Podas exatas pelo denominador q da fração reconstruída:
#   [2w,v,2u]: q = |4wuv + 2w + 2u| >= 2|w||u||v| nas três famílias tóricas
#   [a,b]:     q = |ab + 1| >= |a||b| - 1

def iter_family_witnesses(param_bound: int, max_q: Optional[int] = None,
                          families: Optional[List[str]] = None) -> Iterator[FamilyWitness]:
    """Testemunhas diretas válidas com |parâmetros| <= param_bound (e q <= max_q, se dado)."""
    fams = families or FAMILIAS
    cabe = (lambda minimo: True) if max_q is None else (lambda minimo: minimo <= max_q)
    b = param_bound
    if "T2a" in fams:
        for v in _inteiros(2, b):
            if cabe(2 * abs(v)):
                yield FamilyWitness("T2a", 1, v, -1)
    for fam, v_min, v_max in (("T2b", 1, 1), ("T2c", 2, b)):
        if fam not in fams:
            continue
        for w in range(2, b + 1):
            for u in _inteiros(2, b):
                if not cabe(2 * w * abs(u)):
                    continue
                for v in _inteiros(v_min, v_max):
                    if cabe(2 * w * abs(u) * abs(v)):
                        yield FamilyWitness(fam, w, v, u)
    if "S3a" in fams:
        for u in _inteiros(1, b):
            if u != -1 and cabe(3 * abs(2 * u + 1) - 1):
                yield FamilyWitness("S3a", u=u)
    if "S3b" in fams:
        for w in range(1, b + 1):
            if cabe(3 * (2 * w + 1) - 1):
                yield FamilyWitness("S3b", w=w)
    if "S3c" in fams:
        yield FamilyWitness("S3c")
    if "S3d" in fams:
        for w in range(1, b + 1):
            for u in _inteiros(1, b):
                if u != -1 and cabe((2 * w + 1) * abs(2 * u + 1) - 1):
                    yield FamilyWitness("S3d", w=w, u=u)


def _inteiros(minimo: int, maximo: int) -> Iterator[int]:
    """Inteiros com minimo <= |n| <= maximo, na ordem 2, -2, 3, -3, ..."""
    for n in range(minimo, maximo + 1):
        yield n
        yield -n


@lru_cache(maxsize=256)
def instances_with_denominator(q: int, param_bound: int) -> Tuple[Tuple[FamilyWitness, CanonicalLink, Slope], ...]:
    """Todas as instâncias diretas cuja fração reconstruída tem denominador exatamente q."""
    saida = []
    for witness in iter_family_witnesses(param_bound, max_q=q):
        s = cf_to_slope(witness_cf(witness))
        if s.q != q:
            continue
        link, r = _instancia_direta(witness)
        saida.append((witness, link, r))
    log.debug("instâncias com q=%s (bound=%s): %s", q, param_bound, len(saida))
    return tuple(saida)

# ──────────────────────────────────────────────────────────────────────────────
# Casamento

def _confere(witness: FamilyWitness, link: CanonicalLink) -> bool:
    s = cf_to_slope(witness_cf(witness))
    if s.q != link.q:
        return False
    candidato = canonicalize_link(s)
    return is_hyperbolic(candidato) and equivalent_links(candidato, link)


def match_toroidal(link: CanonicalLink, r: Slope, param_bound: Optional[int] = None) -> Optional[FamilyWitness]:
    if not r.is_integer:
        return None
    q, b, n = link.q, link.q if param_bound is None else param_bound, r.p

    if n == 0:  # T2a: r = -1 - (-1)
        for v in _inteiros(2, b):
            if 2 * abs(v) > q:
                break
            witness = FamilyWitness("T2a", 1, v, -1)
            if _confere(witness, link):
                return witness

    for fam, v_min, v_max in (("T2b", 1, 1), ("T2c", 2, b)):
        for w in range(2, min(b, q // 4) + 1):  # |u| >= 2 => 4w <= q
            u = -w - n
            if not 2 <= abs(u) <= b:
                continue
            for v in _inteiros(v_min, v_max):
                if 2 * w * abs(u) * abs(v) > q:
                    break
                witness = FamilyWitness(fam, w, v, u)
                if _confere(witness, link):
                    return witness
    return None


def match_small_sfs(link: CanonicalLink, r: Slope, param_bound: Optional[int] = None) -> Optional[FamilyWitness]:
    if not r.is_integer:
        return None
    q, b, n = link.q, link.q if param_bound is None else param_bound, r.p

    if n not in (0, -1) and abs(n) <= b:
        witness = FamilyWitness("S3a", u=n)
        if _confere(witness, link):
            return witness
    if 1 <= -n - 1 <= b:
        witness = FamilyWitness("S3b", w=-n - 1)
        if _confere(witness, link):
            return witness
    if n == -1:
        witness = FamilyWitness("S3c")
        if _confere(witness, link):
            return witness
    for w in range(1, min(b, (q - 2) // 6) + 1):  # |2u+1| >= 3
        u = n + w
        if u in (0, -1) or abs(u) > b:
            continue
        if (2 * w + 1) * abs(2 * u + 1) - 1 > q:
            continue
        witness = FamilyWitness("S3d", w=w, u=u)
        if _confere(witness, link):
            return witness
    return None


def check_query(link: CanonicalLink, r: Slope) -> None:
    if not is_hyperbolic(link):
        raise NotApplicable("not_hyperbolic",
                            f"L_{{{link}}} não é hiperbólico (equivalente a L_{{1/n}}, critério de Menasco).")
    if r.is_meridian:
        raise NotApplicable("meridian_slope", "O slope 1/0 é o preenchimento trivial; não é uma cirurgia.")


def classify(link: CanonicalLink, r: Slope, param_bound: Optional[int] = None) -> SurgeryClass:
    check_query(link, r)
    if not r.is_integer:
        return SurgeryClass.hyperbolic()
    espelho = mirror_link(link)
    for alvo, slope, espelhado in ((link, r, False), (espelho, -r, True)):
        for matcher in (match_toroidal, match_small_sfs):
            witness = matcher(alvo, slope, param_bound)
            if witness is not None:
                if espelhado:
                    witness = FamilyWitness(witness.family, witness.w, witness.v, witness.u, mirrored=True)
                log.debug("classify(%s, %s) -> %s", link, r, witness)
                return SurgeryClass.from_witness(witness)
    return SurgeryClass.hyperbolic()


def exceptional_slopes(link: CanonicalLink, param_bound: Optional[int] = None) -> List[Tuple[Slope, SurgeryClass]]:
    """Todos os slopes excepcionais de um enlace hiperbólico, ordenados."""
    if not is_hyperbolic(link):
        raise NotApplicable("not_hyperbolic", f"L_{{{link}}} não é hiperbólico.")
    espelho = mirror_link(link)
    slopes = set()
    for _, candidato, r in instances_with_denominator(link.q, link.q if param_bound is None else param_bound):
        if equivalent_links(candidato, link):
            slopes.add(r)
        if equivalent_links(candidato, espelho):
            slopes.add(-r)
    return [(r, classify(link, r, param_bound)) for r in sorted(slopes, key=Slope.sort_key)]
