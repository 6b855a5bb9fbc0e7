# -*- coding: utf-8 -*-
from __future__ import annotations
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import pandas as pd
from tabulate import tabulate

# =========================================================
# Configurações
# =========================================================
APP_NAME = "Cirurgias excepcionais em enlaces de duas pontes"
APP_VERSION = "1.0.0"

# Limites padrão das operações limitadas
DEFAULT_PARAM_BOUND = 10          # check_disjointness
DEFAULT_LEMMA_BOUND = 10          # lemma_family_check
DEFAULT_NOTE_BOUND = 20           # note_identity_check
DEFAULT_CENSUS_Q = 40             # enumerate_census
DEFAULT_WIDEN = 2                 # brute_force_classify
DEFAULT_DIST_BOUND = 64           # dist (CLI), quando --bound não é informado

FAMILIAS_TOROIDAIS = ["T2a", "T2b", "T2c"]
FAMILIAS_SEIFERT = ["S3a", "S3b", "S3c", "S3d"]
FAMILIAS = FAMILIAS_TOROIDAIS + FAMILIAS_SEIFERT
FAMILIAS_GRAFO = ["T2a", "T2b"]   # tóricas cujo resultado é variedade-grafo

FORMATOS = ["json", "table"]
NIVEIS_SELFTEST = ["quick", "full"]

# Limites de cada verificação do selftest, por nível
SELFTEST_LIMITES = {
    "quick": {"round_trip_q": 60, "lemma_n": 12, "disjoint_bound": 6},
    "full": {"round_trip_q": 200, "lemma_n": 50, "disjoint_bound": 10,
             "note_bound": 20, "oracle_q": 60, "oracle_r": 30, "symmetry_q": 40},
}

# Falhas semeadas (controle negativo) -> verificação que deve acusá-las
FALHAS_INJETAVEIS = {
    "broken_round_trip": "round_trip",
    "corrupt_classification": "golden",
    "duplicate_census_entry": "disjointness",
    "flipped_mirror": "symmetry",
}

# Códigos de saída do CLI
EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_APPLICABLE = 3
EXIT_INTERNAL = 4

STATUS_OK = "ok"
STATUS_INVALID = "invalid_input"
STATUS_NOT_APPLICABLE = "not_applicable"
STATUS_INTERNAL = "internal_fault"

# =========================================================
# Erros
# =========================================================
class SurgeryError(ValueError):
    """Erro de domínio com código legível por máquina (`reason`)."""

    status = STATUS_INVALID
    exit_code = EXIT_INVALID

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason
        self.message = message

    def to_dict(self) -> Dict[str, str]:
        return {"reason": self.reason, "message": self.message}


class InvalidInput(SurgeryError):
    status = STATUS_INVALID
    exit_code = EXIT_INVALID


class NotApplicable(SurgeryError):
    status = STATUS_NOT_APPLICABLE
    exit_code = EXIT_NOT_APPLICABLE


class ConsistencyFault(SurgeryError):
    """Falha interna: oráculo divergente, casamento ambíguo, lacuna de restrição."""

    status = STATUS_INTERNAL
    exit_code = EXIT_INTERNAL

# =========================================================
# Logging
# =========================================================
def configure_logging(verbosity: int = 0) -> None:
    """Logs vão sempre para stderr; stdout fica reservado aos documentos."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )

# =========================================================
# Saída (JSON / tabela / Excel)
# =========================================================
def dump_json(payload: Any) -> str:
    """JSON determinístico: chaves ordenadas, sem floats no domínio."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def render_table(rows: List[Dict[str, Any]] | pd.DataFrame, columns: Optional[List[str]] = None) -> str:
    df = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame(rows, columns=columns)
    if df.empty:
        return "(vazio)"
    # tudo como texto: evita que o tabulate formate inteiros/booleanos como números
    df = df.astype(str)
    return tabulate(df.values.tolist(), headers=list(df.columns), tablefmt="simple",
                    disable_numparse=True)


def render_record(record: Dict[str, Any]) -> str:
    """Tabela de duas colunas (campo, valor) para um único documento."""
    linhas = []
    for chave, valor in _flatten(record):
        linhas.append({"campo": chave, "valor": valor})
    return render_table(linhas, columns=["campo", "valor"])


def _flatten(record: Dict[str, Any], prefixo: str = "") -> List[tuple]:
    saida: List[tuple] = []
    for chave in sorted(record):
        valor = record[chave]
        nome = f"{prefixo}{chave}"
        if isinstance(valor, dict):
            saida.extend(_flatten(valor, prefixo=f"{nome}."))
        elif isinstance(valor, list):
            saida.append((nome, ", ".join(str(v) for v in valor)))
        elif isinstance(valor, bool):
            saida.append((nome, "true" if valor else "false"))
        else:
            saida.append((nome, "" if valor is None else str(valor)))
    return saida


def xlsx_save(df: pd.DataFrame, path: str, sheet_name: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with pd.ExcelWriter(path, engine="xlsxwriter") as writer:
        (df if isinstance(df, pd.DataFrame) else pd.DataFrame())\
            .to_excel(writer, index=False, sheet_name=sheet_name[:31])

# =========================================================
# Resultado de um comando
# =========================================================
@dataclass
class CommandResult:
    """Documento de saída de um subcomando e o código de saída associado."""

    status: str
    payload: Dict[str, Any]
    exit_code: int = EXIT_OK
    table: Optional[pd.DataFrame] = None

    @classmethod
    def ok(cls, result: Dict[str, Any], table: Optional[pd.DataFrame] = None) -> "CommandResult":
        return cls(STATUS_OK, {"status": STATUS_OK, "result": result}, EXIT_OK, table)

    @classmethod
    def falha(cls, erro: SurgeryError, result: Optional[Dict[str, Any]] = None) -> "CommandResult":
        payload: Dict[str, Any] = {"status": erro.status, "error": erro.to_dict()}
        if result is not None:
            payload["result"] = result
        return cls(erro.status, payload, erro.exit_code)

    def render(self, formato: str = "json") -> str:
        if formato == "json":
            return dump_json(self.payload)
        if self.table is not None:
            return render_table(self.table)
        return render_record(self.payload)
