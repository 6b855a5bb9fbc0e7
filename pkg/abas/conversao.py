# -*- coding: utf-8 -*-
from __future__ import annotations
import argparse

from common import CommandResult, InvalidInput
from modules.notation import cf_to_slope, parse_continued_fraction, parse_slope, slope_to_cf


def aba_convert(args: argparse.Namespace) -> CommandResult:
    """[b1,...,bn] -> p/q, ou p/q -> expansão canônica de p/q mod 1."""
    if (args.cf is None) == (args.slope is None):
        raise InvalidInput("bad_arguments", "Informe exatamente um de --cf ou --slope.")
    if args.cf is not None:
        cf = parse_continued_fraction(args.cf)
        return CommandResult.ok({"cf": str(cf), "slope": str(cf_to_slope(cf))})
    s = parse_slope(args.slope)
    return CommandResult.ok({"slope": str(s), "cf": str(slope_to_cf(s))})
