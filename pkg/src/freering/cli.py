"""Command-line front end.  Every command prints exactly one JSON document.

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import codec, geometry, groupring, laurent
from .coeffs import as_coeff, coeff_to_json, coeff_from_json
from .errors import FreeRingError
from .expr import parse_elem, parse_word
from .groupring import GroupRingElem
from .laurent import LaurentPoly, TupleCode
from .magnus import bergman_cmp
from .words import Word


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would print text and exit 2
        raise UsageError(message)


def _emit(doc: Any, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(doc) + "\n")


def _error_doc(kind: str, detail: str) -> dict:
    return {"error": {"kind": kind, "detail": detail}}


# -- argument decoding ----------------------------------------------------------

def _elem(text: str, rank: int) -> GroupRingElem:
    return parse_elem(text, rank)


def _letters(value: Any) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(type(a) is int for a in value):
        raise ValueError(f"expected a JSON array of integer letters, got {value!r}")
    return tuple(value)


def _word(text: str, rank: int) -> Word:
    text = text.strip()
    if text.startswith("["):
        return Word(rank, _letters(json.loads(text)))
    return parse_word(text, rank)


def _laurent(text: str) -> LaurentPoly:
    """Single-variable Laurent polynomials are written as rank-1 expressions in x1."""
    return groupring.specialize_abelian(parse_elem(text, 1))


def _rational(value: Any):
    if isinstance(value, dict):
        return coeff_from_json(value)
    if isinstance(value, float):
        raise ValueError(f"floating-point coefficient {value!r}; use an integer or 'p/q' string")
    return as_coeff(value if not isinstance(value, str) else Fraction(value))


def _load_json(path: Optional[str]) -> Any:
    if path is None or path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _samples(n: int, seed: Optional[int]) -> list[int]:
    if seed is None:
        return list(range(1, n + 1))
    rng = random.Random(seed)
    return rng.sample([a for a in range(-10 * n, 10 * n + 1) if a], n)


# -- commands -----------------------------------------------------------------

def cmd_eval(a) -> dict:
    f = _elem(a.expr, a.rank)
    return {"result": f.to_json(), "text": str(f)}


def _divide(a, side: str) -> dict:
    q = groupring.divide_exact(_elem(a.w, a.rank), _elem(a.d, a.rank), side, a.budget)
    if q is None:
        return {"verdict": "NotDivisible"}
    return {"verdict": "Divisible", "quotient": q.to_json(), "text": str(q)}


def cmd_divl(a) -> dict:
    return _divide(a, "left")


def cmd_divr(a) -> dict:
    return _divide(a, "right")


def cmd_unit(a) -> dict:
    u = groupring.is_trivial_unit(_elem(a.expr, a.rank))
    if u is None:
        return {"unit": False}
    alpha, g = u
    return {"unit": True, "alpha": coeff_to_json(alpha), "word": list(g.letters)}


def cmd_irred(a) -> dict:
    return groupring.irreducibility_certificate(_elem(a.expr, a.rank)).to_json()


def cmd_rigid(a) -> dict:
    return {"rigid": groupring.rigidity_certificate([_word(w, a.rank) for w in a.words])}


def cmd_centralizer(a) -> dict:
    r, k = groupring.centralizer_root(_word(a.word, a.rank))
    return {"root": list(r.letters), "k": k}


def cmd_order_cmp(a) -> dict:
    v = bergman_cmp(_word(a.u, a.rank), _word(a.v, a.rank))
    return {"order": v.order, "degree": v.degree}


def cmd_encode_word(a) -> dict:
    return codec.encode_word(_letters(json.loads(a.tuple)), a.rank).to_json()


def cmd_decode_word(a) -> dict:
    code = codec.WordCode.from_json(_load_json(a.infile))
    if code.rank != a.rank:
        raise FreeRingError(f"code has rank {code.rank}, not {a.rank}", kind="RankMismatch")
    return {"tuple": list(codec.decode_word(code, a.budget))}


def cmd_pack_fq(a) -> dict:
    return codec.pack_element(_elem(a.expr, a.rank)).to_json()


def cmd_check_fq(a) -> dict:
    code = codec.FqCode.from_json(_load_json(a.infile))
    f = _elem(a.expr, a.rank)
    ok = f.constant_term() == code.const and codec.check_fq(code.w, f - f.constant_term(), a.budget)
    return {"valid": ok}


def cmd_am_chain(a) -> dict:
    w = codec.am_chain(a.m, a.rank)
    out = {"m": a.m, "factors": w.to_json()}
    if w.expanded_size_bound() <= codec.EXPAND_LIMIT:
        out["w"] = w.expand().to_json()
    if a.verify is not None:
        out["verified"] = codec.am_chain_verify(w, a.verify, a.budget)
    return out


def cmd_tuple_encode(a) -> dict:
    alphas = [_rational(x) for x in json.loads(a.alphas)]
    return laurent.tuple_encode(alphas, _laurent(a.base)).to_json()


def cmd_tuple_decode(a) -> dict:
    code = TupleCode.from_json(_load_json(a.infile))
    return {"tuple": [coeff_to_json(c) for c in laurent.tuple_decode(code)]}


def cmd_nu(a) -> dict:
    code = TupleCode.from_json(_load_json(a.infile))
    return laurent.nu_transport(code, _laurent(a.target)).to_json()


def cmd_psi_check(a) -> dict:
    res = laurent.psi_check(_laurent(a.q), _laurent(a.p), _samples(a.samples, a.seed))
    out: dict = {"verdict": res.verdict}
    if res.witness is not None:
        out["witness"] = coeff_to_json(res.witness)
    return out


def cmd_in_kp(a) -> dict:
    coeffs = laurent.in_KP(_laurent(a.q), _laurent(a.p))
    if coeffs is None:
        return {"member": False}
    return {"member": True, "coeffs": [coeff_to_json(c) for c in coeffs]}


def cmd_metric(a) -> dict:
    return {"distance": geometry.word_metric(_word(a.g, a.rank), _word(a.h, a.rank))}


def cmd_geodesic(a) -> dict:
    return {"geodesic": list(geometry.geodesic(_word(a.g, a.rank), _word(a.h, a.rank)))}


def _words(a) -> list[Word]:
    return [_word(w, a.rank) for w in a.words]


def cmd_fold(a) -> dict:
    return geometry.fold(_words(a), a.rank).to_json()


def cmd_member(a) -> dict:
    return {"member": geometry.member(_word(a.h, a.rank), _words(a))}


def cmd_is_basis(a) -> dict:
    return {"basis": geometry.is_free_basis(_words(a), a.rank)}


def cmd_qc_probe(a) -> dict:
    return geometry.quasiconvexity_probe(_words(a), a.k, a.radius, a.rank).to_json()


def cmd_mal_probe(a) -> dict:
    return geometry.malnormality_probe(_words(a), a.radius, a.rank).to_json()


# -- parser ---------------------------------------------------------------------

def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="freering", description="Exact computations in free group algebras.")
    parser.add_argument("--json", action="store_true", help="JSON output (the default and only mode)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def command(name: str, fn: Callable, help: str, rank: bool = True, budget: bool = False):
        p = sub.add_parser(name, help=help)
        if rank:
            p.add_argument("--rank", type=_positive, required=True)
        if budget:
            p.add_argument("--budget", type=_positive, default=4096)
        p.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
        p.set_defaults(fn=fn)
        return p

    command("eval", cmd_eval, "evaluate an expression").add_argument("expr")
    for name, fn, side in (("divl", cmd_divl, "d*q = w"), ("divr", cmd_divr, "q*d = w")):
        p = command(name, fn, f"exact division solving {side}", budget=True)
        p.add_argument("w")
        p.add_argument("d")
    command("unit", cmd_unit, "trivial-unit test").add_argument("expr")
    command("irred", cmd_irred, "irreducibility certificate for 1 - h").add_argument("expr")
    command("rigid", cmd_rigid, "rigidity certificate for a product of 1 - g_i").add_argument("words", nargs="*")
    command("centralizer", cmd_centralizer, "primitive root of a word").add_argument("word")
    p = command("order-cmp", cmd_order_cmp, "compare two words in the Bergman order")
    p.add_argument("u")
    p.add_argument("v")
    command("encode-word", cmd_encode_word, "encode a letter tuple given as a JSON array").add_argument("tuple")
    command("decode-word", cmd_decode_word, "decode a word code", budget=True).add_argument("--in", dest="infile")
    command("pack-fq", cmd_pack_fq, "element code of an expression").add_argument("expr")
    p = command("check-fq", cmd_check_fq, "check an element code against an expression", budget=True)
    p.add_argument("--in", dest="infile")
    p.add_argument("expr")
    p = command("am-chain", cmd_am_chain, "the (a_m, m) chain", budget=True)
    p.add_argument("m", type=int)
    p.add_argument("--verify", type=int, metavar="M", help="also verify the chain against M")
    p = command("tuple-encode", cmd_tuple_encode, "tuple code over a base polynomial in x1", rank=False)
    p.add_argument("alphas", help="JSON array of integers or 'p/q' strings")
    p.add_argument("base")
    command("tuple-decode", cmd_tuple_decode, "decode a tuple code", rank=False).add_argument("--in", dest="infile")
    p = command("nu", cmd_nu, "transport a tuple code to another base", rank=False)
    p.add_argument("--in", dest="infile")
    p.add_argument("target")
    p = command("psi-check", cmd_psi_check, "sampled psi(Q, P) check", rank=False)
    p.add_argument("q")
    p.add_argument("p")
    p.add_argument("--samples", type=_positive, default=20)
    p.add_argument("--seed", type=int)
    p = command("in-kp", cmd_in_kp, "membership of Q in K[P]", rank=False)
    p.add_argument("q")
    p.add_argument("p")
    for name, fn in (("metric", cmd_metric), ("geodesic", cmd_geodesic)):
        p = command(name, fn, f"word {name}")
        p.add_argument("g")
        p.add_argument("h")
    command("fold", cmd_fold, "Stallings core graph").add_argument("words", nargs="*")
    p = command("member", cmd_member, "subgroup membership")
    p.add_argument("h")
    p.add_argument("words", nargs="*")
    command("is-basis", cmd_is_basis, "free basis test").add_argument("words", nargs="*")
    p = command("qc-probe", cmd_qc_probe, "bounded quasiconvexity probe")
    p.add_argument("--k", type=_nonnegative, required=True)
    p.add_argument("--radius", type=_nonnegative, required=True)
    p.add_argument("words", nargs="*")
    p = command("mal-probe", cmd_mal_probe, "bounded malnormality probe")
    p.add_argument("--radius", type=_nonnegative, required=True)
    p.add_argument("words", nargs="*")
    return parser


_SHIELD = " "


def _shield_negatives(argv: Sequence[str]) -> list[str]:
    """Keep expressions such as "-2*x1" from being read as options."""
    return [_SHIELD + s if len(s) > 1 and s[0] == "-" and s[1] not in "-h" else s for s in argv]


def _unshield(args: argparse.Namespace) -> None:
    def strip(v):
        if isinstance(v, str) and v.startswith(_SHIELD):
            return v[len(_SHIELD):]
        if isinstance(v, list):
            return [strip(x) for x in v]
        return v

    for key, value in vars(args).items():
        setattr(args, key, strip(value))



def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = _shield_negatives(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _emit(_error_doc("UsageError", str(e)), stdout)
        return 2
    _unshield(args)
    try:
        doc = args.fn(args)
    except FreeRingError as e:
        _emit(_error_doc(e.kind, str(e)), stdout)
        return 1
    except ZeroDivisionError as e:
        _emit(_error_doc("DivisionByZero", str(e)), stdout)
        return 1
    except json.JSONDecodeError as e:
        _emit(_error_doc("InvalidJSON", str(e)), stdout)
        return 1
    except OSError as e:
        _emit(_error_doc("IOError", str(e)), stdout)
        return 1
    except (KeyError, TypeError, ValueError) as e:
        _emit(_error_doc("InvalidInput", f"{type(e).__name__}: {e}"), stdout)
        return 1
    _emit(doc, stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
