# -*- coding: utf-8 -*-
from __future__ import annotations
import argparse
import logging

from common import CommandResult, ConsistencyFault, xlsx_save
from modules.census import census_frame, enumerate_census, note_identity_check

log = logging.getLogger(__name__)


def aba_census(args: argparse.Namespace) -> CommandResult:
    entries = enumerate_census(args.max_q, workers=args.workers)
    df = census_frame(entries)
    if args.xlsx:
        xlsx_save(df, args.xlsx, sheet_name=f"censo_q{args.max_q}")
        log.info("censo exportado para %s", args.xlsx)
    return CommandResult.ok(
        {"max_q": args.max_q, "count": len(entries), "entries": [e.to_dict() for e in entries]},
        table=df,
    )


def aba_note_check(args: argparse.Namespace) -> CommandResult:
    ok, report = note_identity_check(args.bound)
    if not ok:
        return CommandResult.falha(
            ConsistencyFault("note_identity_failed", "A identidade [2w,1,2u] = [2w+1,-2u-1] falhou."),
            result=report.to_dict(),
        )
    return CommandResult.ok(report.to_dict())
