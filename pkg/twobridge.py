# -*- coding: utf-8 -*-
from __future__ import annotations
import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from abas.autoteste import aba_selftest
from abas.censo import aba_census, aba_note_check
from abas.classificacao import aba_classify, aba_slopes
from abas.conversao import aba_convert
from abas.diagrama import aba_dist, aba_lemma_check
from abas.enlaces import aba_equiv, aba_mirror
from common import (
    APP_NAME,
    APP_VERSION,
    DEFAULT_CENSUS_Q,
    DEFAULT_LEMMA_BOUND,
    DEFAULT_NOTE_BOUND,
    FALHAS_INJETAVEIS,
    FORMATOS,
    NIVEIS_SELFTEST,
    CommandResult,
    InvalidInput,
    SurgeryError,
    configure_logging,
)

log = logging.getLogger("twobridge")


class _Parser(argparse.ArgumentParser):
    """Erros de uso viram InvalidInput em vez de sys.exit(2)."""

    def error(self, message: str):
        raise InvalidInput("bad_arguments", message)


def _globais(p: argparse.ArgumentParser, padrao=None) -> argparse.ArgumentParser:
    """--format e -v antes ou depois do subcomando; nos subcomandos o padrão é SUPPRESS."""
    p.add_argument("--format", choices=FORMATOS, default="json" if padrao is None else padrao)
    p.add_argument("-v", "--verbose", action="count", default=0 if padrao is None else padrao)
    return p


def _comuns() -> argparse.ArgumentParser:
    return _globais(argparse.ArgumentParser(add_help=False), argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    comuns = _comuns()
    parser = _Parser(prog="twobridge", description=APP_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    _globais(parser)
    sub = parser.add_subparsers(dest="comando", metavar="COMANDO")
    sub.required = True

    p = sub.add_parser("classify", parents=[comuns], help="classifica L_{p/q}(r)")
    p.add_argument("--link", required=True, help='"p/q" ou "[b1,...,bn]"')
    p.add_argument("--slope", required=True, help='"p/q" ou inteiro')

    p = sub.add_parser("slopes", parents=[comuns], help="lista os slopes excepcionais de um enlace")
    p.add_argument("--link", required=True)

    p = sub.add_parser("convert", parents=[comuns], help="fração contínua <-> racional")
    p.add_argument("--cf")
    p.add_argument("--slope")

    p = sub.add_parser("equiv", parents=[comuns], help="testa equivalência de dois enlaces")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("mirror", parents=[comuns], help="imagem espelhada de um enlace")
    p.add_argument("--link", required=True)

    p = sub.add_parser("dist", parents=[comuns], help="distância por arestas D")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--bound", type=int, default=None)

    p = sub.add_parser("lemma-check", parents=[comuns], help="extremos de comprimento 2 vs. família [2,n,-2]")
    p.add_argument("--n-bound", type=int, default=DEFAULT_LEMMA_BOUND)

    p = sub.add_parser("census", parents=[comuns], help="censo dos pares excepcionais")
    p.add_argument("--max-q", type=int, default=DEFAULT_CENSUS_Q)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--xlsx", default=None, help="exporta o censo para Excel")

    p = sub.add_parser("note-check", parents=[comuns], help="identidade [2w,1,2u] = [2w+1,-2u-1]")
    p.add_argument("--bound", type=int, default=DEFAULT_NOTE_BOUND)

    p = sub.add_parser("selftest", parents=[comuns], help="bateria de autoverificação")
    p.add_argument("--level", choices=NIVEIS_SELFTEST, default="quick")
    p.add_argument("--inject-fault", choices=sorted(FALHAS_INJETAVEIS), default=None)
    return parser


ABAS: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "classify": aba_classify,
    "slopes": aba_slopes,
    "convert": aba_convert,
    "equiv": aba_equiv,
    "mirror": aba_mirror,
    "dist": aba_dist,
    "lemma-check": aba_lemma_check,
    "census": aba_census,
    "note-check": aba_note_check,
    "selftest": aba_selftest,
}


def _formato_pedido(argv: Sequence[str]) -> str:
    """--format mesmo quando o parsing falha em outro argumento."""
    for i, arg in enumerate(argv):
        if arg == "--format" and i + 1 < len(argv) and argv[i + 1] in FORMATOS:
            return argv[i + 1]
        if arg.startswith("--format=") and arg.split("=", 1)[1] in FORMATOS:
            return arg.split("=", 1)[1]
    return "json"


def execute(argv: Sequence[str]) -> tuple[CommandResult, str]:
    formato = _formato_pedido(argv)
    try:
        args = build_parser().parse_args(list(argv))
    except SurgeryError as e:
        return CommandResult.falha(e), formato
    configure_logging(args.verbose)
    log.debug("comando %s: %s", args.comando, vars(args))
    try:
        return ABAS[args.comando](args), args.format
    except SurgeryError as e:
        log.info("%s: %s (%s)", args.comando, e.reason, e.message)
        return CommandResult.falha(e), args.format


def run(argv: Optional[List[str]] = None) -> int:
    resultado, formato = execute(sys.argv[1:] if argv is None else argv)
    print(resultado.render(formato))
    return resultado.exit_code


if __name__ == "__main__":
    sys.exit(run())
