# -*- coding: utf-8 -*-
"""Bateria de autoverificação (níveis quick e full) com falhas injetáveis."""
from __future__ import annotations
import contextlib
import io
import json
import logging
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, List, Optional, Tuple

from common import (
    EXIT_NOT_APPLICABLE,
    EXIT_OK,
    FALHAS_INJETAVEIS,
    NIVEIS_SELFTEST,
    SELFTEST_LIMITES,
    InvalidInput,
    NotApplicable,
    SurgeryError,
)
from modules.census import (
    agreement_sweep,
    check_disjointness,
    check_expansion_lengths,
    enumerate_census,
    note_identity_check,
)
from modules.classifier import classify
from modules.fh_diagram import MERIDIANO, d_distance, lemma_family_check
from modules.notation import (
    CanonicalLink,
    Slope,
    canonicalize_link,
    cf_to_slope,
    inverse_link,
    mirror_link,
    parse_link,
    parse_slope,
    slope_to_cf,
)

log = logging.getLogger(__name__)

# (enlace, slope, kind, graph_manifold, família); None em kind = not_applicable
CASOS_DOURADOS: List[Tuple[str, str, Optional[str], Optional[bool], Optional[str]]] = [
    ("[2,3,-2]", "0", "toroidal", True, "T2a"),
    ("[4,1,4]", "-4", "toroidal", True, "T2b"),
    ("[6,3,6]", "-6", "toroidal", False, "T2c"),
    ("[3,-3]", "-1", "small_seifert", None, "S3c"),
    ("[3,5]", "2", "small_seifert", None, "S3a"),
    ("[5,3]", "-3", "small_seifert", None, "S3b"),
    ("[5,7]", "1", "small_seifert", None, "S3d"),
    ("5/24", "-5", "small_seifert", None, "S3d"),
    ("[2,3,-2]", "7", "hyperbolic", None, None),
    ("[2,3,-2]", "1/2", "hyperbolic", None, None),
    ("1/2", "3", None, None, None),
]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class SelftestReport:
    level: str
    ok: bool
    injected_fault: Optional[str] = None
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "ok": self.ok,
            "injected_fault": self.injected_fault,
            "failed": self.failed,
            "checks": [c.to_dict() for c in self.checks],
        }

# ──────────────────────────────────────────────────────────────────────────────
# Verificações

def check_round_trip(max_q: int, fault: Optional[str] = None) -> CheckResult:
    falhas = []
    for q in range(2, max_q + 1):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            s = Slope(p, q)
            cf = slope_to_cf(s)
            if fault == "broken_round_trip":
                cf = cf.negated()
            volta = cf_to_slope(cf)
            if volta != s:
                falhas.append(f"{s} -> {cf} -> {volta}")
    return CheckResult("round_trip", not falhas, {"max_q": max_q, "failures": falhas[:10]})


def check_convention(n_bound: int) -> CheckResult:
    falhas = []
    for n in range(2, n_bound + 1):
        for sinal in (1, -1):
            s = cf_to_slope((2, sinal * n, -2))
            if s.q % 2:
                falhas.append(f"[2,{sinal * n},-2] = {s}: denominador ímpar")
                continue
            alvo = canonicalize_link(s).slope
            dist = d_distance(MERIDIANO, alvo, alvo.q)
            if dist != 2:
                falhas.append(f"[2,{sinal * n},-2] = {alvo}: distância {dist}")
    ok_lemma, lemma = lemma_family_check(n_bound)
    detail = {"n_bound": n_bound, "failures": falhas, "lemma": lemma.to_dict() if not ok_lemma else {"ok": True}}
    return CheckResult("convention", not falhas and ok_lemma, detail)


def check_golden(fault: Optional[str] = None) -> CheckResult:
    falhas = []
    casos = list(CASOS_DOURADOS)
    if fault == "corrupt_classification":
        link, slope, _, _, _ = casos[0]
        casos[0] = (link, slope, "small_seifert", None, "S3a")
    for link_txt, slope_txt, kind, grafo, familia in casos:
        rotulo = f"{link_txt} ({slope_txt})"
        try:
            c = classify(parse_link(link_txt), parse_slope(slope_txt))
        except NotApplicable as e:
            if kind is not None:
                falhas.append(f"{rotulo}: not_applicable inesperado ({e.reason})")
            continue
        if kind is None:
            falhas.append(f"{rotulo}: esperado not_applicable, obtido {c.kind.value}")
            continue
        obtido = (c.kind.value, c.graph_manifold, c.family)
        if obtido != (kind, grafo, familia):
            falhas.append(f"{rotulo}: esperado {(kind, grafo, familia)}, obtido {obtido}")
    return CheckResult("golden", not falhas, {"cases": len(casos), "failures": falhas})


def check_disjoint(param_bound: int, fault: Optional[str] = None) -> CheckResult:
    injected = None
    if fault == "duplicate_census_entry":
        # L_{5/12}(0) é T2a; a mesma entrada rotulada como S3d
        injected = [("S3d", CanonicalLink(Slope(5, 12)), Slope(0, 1))]
    ok, report = check_disjointness(param_bound, injected=injected)
    return CheckResult("disjointness", ok, report.to_dict() if not ok else
                       {"param_bound": param_bound, "instances": report.instances})


def check_note(bound: int) -> CheckResult:
    ok, report = note_identity_check(bound)
    return CheckResult("note_identity", ok, report.to_dict())


def check_oracle(max_q: int, max_abs_r: int) -> CheckResult:
    divergencias = agreement_sweep(max_q, max_abs_r)
    return CheckResult("oracle", not divergencias,
                       {"max_q": max_q, "max_abs_r": max_abs_r, "disagreements": divergencias[:10]})


def check_symmetry(max_q: int, fault: Optional[str] = None) -> CheckResult:
    falhas = []
    entries = enumerate_census(max_q)
    for e in entries:
        base = e.surgery.signature()
        inverso = classify(inverse_link(e.link), e.slope).signature()
        r_espelho = e.slope if fault == "flipped_mirror" else -e.slope
        try:
            espelho = classify(mirror_link(e.link), r_espelho).signature()
        except SurgeryError as err:
            espelho = (err.reason, None)
        if inverso != base:
            falhas.append(f"{e.link} ({e.slope}): equivalência muda {base} -> {inverso}")
        if espelho != base:
            falhas.append(f"{e.link} ({e.slope}): espelho muda {base} -> {espelho}")
    return CheckResult("symmetry", not falhas, {"entries": len(entries), "failures": falhas[:10]})


def check_expansions(max_q: int) -> CheckResult:
    ok, report = check_expansion_lengths(max_q)
    return CheckResult("expansion_lengths", ok, report.to_dict())


def _executa_cli(argv: List[str]) -> Tuple[int, str]:
    from twobridge import run

    raiz = logging.getLogger()
    nivel = raiz.level
    buffer = io.StringIO()
    try:
        with contextlib.redirect_stdout(buffer):
            code = run(argv)
    finally:
        raiz.setLevel(nivel)
    return code, buffer.getvalue()


def check_cli_contract() -> CheckResult:
    falhas = []
    exemplos = [
        (["classify", "--link", "[2,3,-2]", "--slope", "0", "--format", "json"], EXIT_OK,
         lambda d: d["status"] == "ok" and d["result"]["classification"]["kind"] == "toroidal"
         and d["result"]["classification"]["graph_manifold"] is True
         and d["result"]["classification"]["family"] == "T2a"),
        (["convert", "--cf", "[6,3,6]"], EXIT_OK,
         lambda d: d["status"] == "ok" and d["result"]["slope"] == "19/120"),
        (["classify", "--link", "1/2", "--slope", "3"], EXIT_NOT_APPLICABLE,
         lambda d: d["status"] == "not_applicable" and d["error"]["reason"] == "not_hyperbolic"),
    ]
    for argv, esperado, valida in exemplos:
        code1, out1 = _executa_cli(argv)
        code2, out2 = _executa_cli(argv)
        rotulo = " ".join(argv)
        if code1 != esperado:
            falhas.append(f"{rotulo}: código {code1}, esperado {esperado}")
        if out1 != out2 or code1 != code2:
            falhas.append(f"{rotulo}: saída não determinística")
        try:
            if not valida(json.loads(out1)):
                falhas.append(f"{rotulo}: documento fora do esquema")
        except (ValueError, KeyError, TypeError) as e:
            falhas.append(f"{rotulo}: JSON inválido ({e})")
    return CheckResult("cli_contract", not falhas, {"examples": len(exemplos), "failures": falhas})

# ──────────────────────────────────────────────────────────────────────────────
# Orquestração

def _plano(level: str, fault: Optional[str]) -> List[Tuple[str, Callable[[], CheckResult]]]:
    lim = SELFTEST_LIMITES[level]
    plano = [
        ("round_trip", lambda: check_round_trip(lim["round_trip_q"], fault)),
        ("convention", lambda: check_convention(lim["lemma_n"])),
        ("golden", lambda: check_golden(fault)),
        ("disjointness", lambda: check_disjoint(lim["disjoint_bound"], fault)),
    ]
    if level == "full":
        plano += [
            ("note_identity", lambda: check_note(lim["note_bound"])),
            ("oracle", lambda: check_oracle(lim["oracle_q"], lim["oracle_r"])),
            ("symmetry", lambda: check_symmetry(lim["symmetry_q"], fault)),
            ("expansion_lengths", lambda: check_expansions(lim["symmetry_q"])),
            ("cli_contract", check_cli_contract),
        ]
    elif fault == "flipped_mirror":
        plano.append(("symmetry", lambda: check_symmetry(16, fault)))
    return plano


def run_selftest(level: str = "quick", inject_fault: Optional[str] = None) -> Tuple[bool, SelftestReport]:
    if level not in NIVEIS_SELFTEST:
        raise InvalidInput("bad_parameters", f"Nível desconhecido: {level!r} (use {NIVEIS_SELFTEST}).")
    if inject_fault is not None and inject_fault not in FALHAS_INJETAVEIS:
        raise InvalidInput("bad_parameters",
                           f"Falha desconhecida: {inject_fault!r} (use {sorted(FALHAS_INJETAVEIS)}).")
    report = SelftestReport(level=level, ok=False, injected_fault=inject_fault)
    for nome, executa in _plano(level, inject_fault):
        inicio = time.perf_counter()
        resultado = executa()
        log.info("selftest %s: %s em %.2fs", nome, "ok" if resultado.ok else "FALHOU",
                 time.perf_counter() - inicio)
        if not resultado.ok:
            log.warning("selftest %s falhou: %s", nome, resultado.detail)
        report.checks.append(resultado)
    report.ok = all(c.ok for c in report.checks)
    return report.ok, report
