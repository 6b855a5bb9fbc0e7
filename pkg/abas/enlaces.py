# -*- coding: utf-8 -*-
from __future__ import annotations
import argparse

from common import CommandResult
from modules.notation import (
    class_representative,
    equivalent_links,
    is_hyperbolic,
    mirror_link,
    parse_link,
)


def aba_equiv(args: argparse.Namespace) -> CommandResult:
    a, b = parse_link(args.a), parse_link(args.b)
    return CommandResult.ok({
        "a": str(a),
        "b": str(b),
        "equivalent": equivalent_links(a, b),
        "representative_a": str(class_representative(a)),
        "representative_b": str(class_representative(b)),
    })


def aba_mirror(args: argparse.Namespace) -> CommandResult:
    link = parse_link(args.link)
    espelho = mirror_link(link)
    return CommandResult.ok({
        "link": str(link),
        "mirror": str(espelho),
        "amphicheiral": equivalent_links(link, espelho),
        "hyperbolic_link": is_hyperbolic(link),
    })
