# -*- coding: utf-8 -*-
from __future__ import annotations
import argparse

import pandas as pd

from common import CommandResult, ConsistencyFault
from modules.selftest import run_selftest


def aba_selftest(args: argparse.Namespace) -> CommandResult:
    ok, report = run_selftest(args.level, inject_fault=args.inject_fault)
    tabela = pd.DataFrame(
        [{"check": c.name, "ok": c.ok} for c in report.checks],
        columns=["check", "ok"],
    )
    if not ok:
        falha = CommandResult.falha(
            ConsistencyFault("selftest_failed", f"Verificações com falha: {', '.join(report.failed)}."),
            result=report.to_dict(),
        )
        falha.table = tabela
        return falha
    return CommandResult.ok(report.to_dict(), table=tabela)
