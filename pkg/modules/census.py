# -*- coding: utf-8 -*-
"""Censo das cirurgias excepcionais, auditorias e o oráculo de força bruta."""
from __future__ import annotations
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import pandas as pd

from common import (
    DEFAULT_PARAM_BOUND,
    DEFAULT_WIDEN,
    FAMILIAS,
    ConsistencyFault,
    InvalidInput,
)
from modules.classifier import (
    FamilyWitness,
    SurgeryClass,
    SurgeryKind,
    check_query,
    classify,
    family_instance,
    instances_with_denominator,
    iter_family_witnesses,
)
from modules.notation import (
    CanonicalLink,
    Slope,
    canonicalize_link,
    cf_to_slope,
    class_representative,
    equivalent_links,
    is_hyperbolic,
    mirror_link,
)

log = logging.getLogger(__name__)

# ──────────────────────────────────────────────────────────────────────────────
# Tipos

@dataclass(frozen=True)
class CensusEntry:
    link: CanonicalLink
    slope: Slope
    surgery: SurgeryClass

    def sort_key(self) -> Tuple[int, int, Fraction]:
        return self.link.q, self.link.p, self.slope.fraction()

    def to_dict(self) -> dict:
        return {
            "input": {"link": str(self.link), "slope": str(self.slope)},
            "canonical_link": str(self.link),
            "hyperbolic_link": True,
            "classification": self.surgery.to_dict(),
        }


@dataclass
class DisjointnessReport:
    ok: bool
    param_bound: int
    instances: int = 0
    collisions: List[dict] = field(default_factory=list)
    constraint_gaps: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "param_bound": self.param_bound,
            "instances": self.instances,
            "collisions": self.collisions,
            "constraint_gaps": self.constraint_gaps,
        }


@dataclass
class NoteReport:
    ok: bool
    bound: int
    checked: int = 0
    failures: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "bound": self.bound, "checked": self.checked, "failures": self.failures}


@dataclass
class ExpansionReport:
    ok: bool
    max_q: int
    small_seifert_checked: int = 0
    toroidal_checked: int = 0
    offenders: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "max_q": self.max_q,
            "small_seifert_checked": self.small_seifert_checked,
            "toroidal_checked": self.toroidal_checked,
            "offenders": self.offenders,
        }

# ──────────────────────────────────────────────────────────────────────────────
# Enumeração

Chave = Tuple[int, int, int]  # (p do representante, q, r)


def _chaves_da_familia(family: str, max_q: int, param_bound: int) -> List[Chave]:
    """Pares (representante, slope) diretos e espelhados de uma família com q <= max_q."""
    saida: List[Chave] = []
    for witness in iter_family_witnesses(param_bound, max_q=max_q, families=[family]):
        link, r = family_instance(witness)
        if link.q > max_q:
            continue
        for alvo, slope in ((link, r), (mirror_link(link), -r)):
            rep = class_representative(alvo)
            saida.append((rep.p, rep.q, slope.p))
    return saida


def enumerate_census(max_q: int, workers: int = 1, param_bound: Optional[int] = None) -> List[CensusEntry]:
    """Todos os pares excepcionais com q(enlace) <= max_q, ordenados por (q, p, slope)."""
    if max_q < 8 or max_q % 2:
        raise InvalidInput("bad_bound", f"max_q deve ser par e >= 8 (recebido {max_q}).")
    if workers < 1:
        raise InvalidInput("bad_bound", "workers deve ser >= 1.")
    bound = param_bound or max_q

    chaves: Set[Chave] = set()
    if workers == 1:
        for family in FAMILIAS:
            chaves.update(_chaves_da_familia(family, max_q, bound))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futuros = [pool.submit(_chaves_da_familia, f, max_q, bound) for f in FAMILIAS]
            for futuro in futuros:
                chaves.update(futuro.result())

    entries = []
    for p, q, r in chaves:
        link = CanonicalLink(Slope(p, q))
        slope = Slope(r, 1)
        entries.append(CensusEntry(link, slope, classify(link, slope)))
    entries.sort(key=CensusEntry.sort_key)
    log.info("censo: max_q=%s bound=%s workers=%s entradas=%s", max_q, bound, workers, len(entries))
    return entries


def census_frame(entries: Iterable[CensusEntry]) -> pd.DataFrame:
    linhas = []
    for e in entries:
        w = e.surgery.witness
        linhas.append({
            "q": e.link.q,
            "p": e.link.p,
            "link": str(e.link),
            "slope": str(e.slope),
            "kind": e.surgery.kind.value,
            "graph_manifold": "" if e.surgery.graph_manifold is None else bool(e.surgery.graph_manifold),
            "family": e.surgery.family or "",
            "witness": str(w) if w else "",
        })
    colunas = ["q", "p", "link", "slope", "kind", "graph_manifold", "family", "witness"]
    return pd.DataFrame(linhas, columns=colunas)

# ──────────────────────────────────────────────────────────────────────────────
# Auditoria de disjunção

def check_disjointness(param_bound: int = DEFAULT_PARAM_BOUND,
                       injected: Optional[Sequence[Tuple[str, CanonicalLink, Slope]]] = None
                       ) -> Tuple[bool, DisjointnessReport]:
    """Nenhum par (classe do enlace, slope) vem de duas famílias distintas.

    `injected` acrescenta instâncias artificiais (família, enlace, slope) ao
    conjunto auditado; serve de controle negativo.
    """
    if param_bound < 2:
        raise InvalidInput("bad_bound", "param_bound deve ser >= 2.")
    report = DisjointnessReport(ok=False, param_bound=param_bound)
    origens: Dict[Tuple[CanonicalLink, Slope], Set[str]] = {}

    def registrar(family: str, link: CanonicalLink, r: Slope) -> None:
        for alvo, slope in ((link, r), (mirror_link(link), -r)):
            origens.setdefault((class_representative(alvo), slope), set()).add(family)

    for witness in iter_family_witnesses(param_bound):
        try:
            link, r = family_instance(witness)
        except ConsistencyFault as e:
            report.constraint_gaps.append(e.message)
            continue
        report.instances += 1
        registrar(witness.family, link, r)
    for family, link, r in injected or ():
        registrar(family, link, r)

    for (link, r), familias in sorted(origens.items(), key=lambda kv: (kv[0][0].q, kv[0][0].p, kv[0][1].p)):
        if len(familias) > 1:
            report.collisions.append({"link": str(link), "slope": str(r), "families": sorted(familias)})

    report.ok = not report.collisions and not report.constraint_gaps
    if report.collisions:
        log.warning("colisões entre famílias: %s", report.collisions)
    if report.constraint_gaps:
        log.warning("lacunas de restrição: %s", report.constraint_gaps)
    return report.ok, report

# ──────────────────────────────────────────────────────────────────────────────
# Oráculo de força bruta

@lru_cache(maxsize=256)
def _tabela_oraculo(q: int, param_bound: int) -> Dict[Tuple[int, int], Tuple[FamilyWitness, ...]]:
    """(p do representante, r) -> testemunhas (diretas e espelhadas) com denominador q."""
    tabela: Dict[Tuple[int, int], List[FamilyWitness]] = {}
    for witness, link, r in instances_with_denominator(q, param_bound):
        espelhada = FamilyWitness(witness.family, witness.w, witness.v, witness.u, mirrored=True)
        for alvo, slope, w in ((link, r, witness), (mirror_link(link), -r, espelhada)):
            tabela.setdefault((class_representative(alvo).p, slope.p), []).append(w)
    return {k: tuple(v) for k, v in tabela.items()}


def brute_force_classify(link: CanonicalLink, r: Slope, widen: int = DEFAULT_WIDEN) -> SurgeryClass:
    """Mesmo contrato de classify, sem ordem de famílias: reúne todos os casamentos."""
    check_query(link, r)
    if widen < 1:
        raise InvalidInput("bad_bound", "widen deve ser >= 1.")
    if not r.is_integer:
        return SurgeryClass.hyperbolic()
    tabela = _tabela_oraculo(link.q, widen * (link.q + 2))
    achados = tabela.get((class_representative(link).p, r.p), ())
    if not achados:
        return SurgeryClass.hyperbolic()
    classes = {SurgeryClass.from_witness(w) for w in achados}
    if len({(c.signature(), c.family) for c in classes}) > 1:
        raise ConsistencyFault("ambiguous_match",
                               f"L_{{{link}}}({r}) casa com mais de uma classe: {sorted(str(w) for w in achados)}")
    primeiro = sorted(achados, key=lambda w: (w.mirrored, str(w)))[0]
    return SurgeryClass.from_witness(primeiro)


def same_outcome(a: SurgeryClass, b: SurgeryClass) -> bool:
    """Igualdade de (kind, graph_manifold, família); o lado do espelho não conta."""
    return a.signature() == b.signature() and a.family == b.family

# ──────────────────────────────────────────────────────────────────────────────
# Identidade da observação [2w,1,2u] = [2w+1,-2u-1]

def note_identity_check(bound: int) -> Tuple[bool, NoteReport]:
    if bound < 2:
        raise InvalidInput("bad_bound", "bound deve ser >= 2.")
    report = NoteReport(ok=False, bound=bound)
    faixa = [n for n in range(-bound, bound + 1) if n != 0]
    for w in faixa:
        for u in faixa:
            report.checked += 1
            w2, u2 = w, -u - 1
            esquerda = cf_to_slope((2 * w, 1, 2 * u))
            direita = cf_to_slope((2 * w2 + 1, 2 * u2 + 1))
            slope_ok = -w - u == -w2 + u2 + 1
            if esquerda != direita or not slope_ok:
                report.failures.append({
                    "w": w, "u": u,
                    "left": str(esquerda), "right": str(direita),
                    "slope_ok": slope_ok,
                })
    report.ok = not report.failures
    if not report.ok:
        log.warning("note_identity_check(%s): %s falhas", bound, len(report.failures))
    return report.ok, report

# ──────────────────────────────────────────────────────────────────────────────
# Comprimento das expansões

def _tem_expansao_curta(link: CanonicalLink) -> bool:
    """Existe [b1,b2], |b1|,|b2| <= q, equivalente ao enlace ou ao seu espelho?"""
    q = link.q
    espelho = mirror_link(link)
    for b1 in range(-q, q + 1):
        if b1 == 0:
            continue
        # |b1*b2 + 1| = q
        for produto in (q - 1, -q - 1):
            if produto % b1:
                continue
            b2 = produto // b1
            if b2 == 0 or abs(b2) > q:
                continue
            candidato = canonicalize_link(cf_to_slope((b1, b2)))
            if equivalent_links(candidato, link) or equivalent_links(candidato, espelho):
                return True
    return False


def check_expansion_lengths(max_q: int) -> Tuple[bool, ExpansionReport]:
    """Seifert pequenas vêm de expansões [b1,b2]; T2b/T2c nunca são L_{1/n}."""
    report = ExpansionReport(ok=False, max_q=max_q)
    for e in enumerate_census(max_q):
        if e.surgery.kind is SurgeryKind.SMALL_SEIFERT:
            report.small_seifert_checked += 1
            if not _tem_expansao_curta(e.link):
                report.offenders.append({"link": str(e.link), "slope": str(e.slope), "problem": "no_length_two_cf"})
        elif e.surgery.family in ("T2b", "T2c"):
            report.toroidal_checked += 1
            if not is_hyperbolic(e.link):
                report.offenders.append({"link": str(e.link), "slope": str(e.slope), "problem": "torus_link"})
    report.ok = not report.offenders
    return report.ok, report


def agreement_sweep(max_q: int, max_abs_r: int, widen: int = DEFAULT_WIDEN) -> List[dict]:
    """Compara classify com o oráculo em todo p/q (q par <= max_q) e |r| <= max_abs_r."""
    divergencias = []
    for q in range(4, max_q + 1, 2):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            link = CanonicalLink(Slope(p, q))
            if not is_hyperbolic(link):
                continue
            for n in range(-max_abs_r, max_abs_r + 1):
                r = Slope(n, 1)
                try:
                    esperado = classify(link, r)
                    obtido = brute_force_classify(link, r, widen)
                except ConsistencyFault as e:
                    divergencias.append({"link": str(link), "slope": str(r), "error": e.reason})
                    continue
                if not same_outcome(esperado, obtido):
                    divergencias.append({
                        "link": str(link), "slope": str(r),
                        "classify": esperado.to_dict(), "oracle": obtido.to_dict(),
                    })
    return divergencias
