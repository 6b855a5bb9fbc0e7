# -*- coding: utf-8 -*-
from __future__ import annotations
import argparse

from common import DEFAULT_DIST_BOUND, CommandResult, ConsistencyFault
from modules.fh_diagram import d_distance, lemma_family_check
from modules.notation import parse_slope


def aba_dist(args: argparse.Namespace) -> CommandResult:
    a = parse_slope(args.source)
    b = parse_slope(args.target)
    bound = args.bound if args.bound is not None else max(DEFAULT_DIST_BOUND, a.q, b.q)
    return CommandResult.ok({
        "from": str(a),
        "to": str(b),
        "bound": bound,
        "distance": d_distance(a, b, bound),
    })


def aba_lemma_check(args: argparse.Namespace) -> CommandResult:
    ok, report = lemma_family_check(args.n_bound)
    if not ok:
        return CommandResult.falha(
            ConsistencyFault("lemma_mismatch", "Extremos de caminhos D de comprimento 2 divergem da família [2,n,-2]."),
            result=report.to_dict(),
        )
    return CommandResult.ok(report.to_dict())
