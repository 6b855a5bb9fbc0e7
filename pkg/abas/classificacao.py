# -*- coding: utf-8 -*-
from __future__ import annotations
import argparse

import pandas as pd

from common import CommandResult
from modules.classifier import classify, exceptional_slopes
from modules.notation import is_hyperbolic, parse_link, parse_slope


def aba_classify(args: argparse.Namespace) -> CommandResult:
    link = parse_link(args.link)
    r = parse_slope(args.slope)
    c = classify(link, r)
    return CommandResult.ok({
        "input": {"link": args.link.strip(), "slope": args.slope.strip()},
        "canonical_link": str(link),
        "hyperbolic_link": is_hyperbolic(link),
        "classification": c.to_dict(),
    })


def aba_slopes(args: argparse.Namespace) -> CommandResult:
    link = parse_link(args.link)
    pares = exceptional_slopes(link)
    linhas = []
    for r, c in pares:
        w = c.witness
        linhas.append({
            "slope": str(r),
            "kind": c.kind.value,
            "graph_manifold": "" if c.graph_manifold is None else c.graph_manifold,
            "family": c.family or "",
            "witness": str(w) if w else "",
        })
    return CommandResult.ok(
        {
            "canonical_link": str(link),
            "slopes": [{"slope": str(r), "classification": c.to_dict()} for r, c in pares],
        },
        table=pd.DataFrame(linhas, columns=["slope", "kind", "graph_manifold", "family", "witness"]),
    )
