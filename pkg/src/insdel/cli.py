"""Command-line entry point: ``insdel <group> <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 computation failure, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import bounds
from .bounds import EditWitness, wz_u_value
from .channel_oracle import OracleCapExceeded, corrupt, max_code_search, max_list_size
from .concat_codec import (
    DEFAULT_BRUTE_FORCE_CAP,
    INSDEL,
    INSERTIONS,
    DecodingError,
    ParameterError,
    concat_encode,
    derive_insertion_params,
    derive_params,
    list_decode_insdel,
    list_decode_insertions,
)
from .formats import (
    FormatError,
    format_codebook,
    format_inner_code,
    read_codebook,
    read_inner_code,
    read_params,
    read_word_file,
)
from .inner_code import InnerCodeSearchError, search_inner_code
from .metric import Word, levenshtein_distance, min_code_distance

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def rational(text: str) -> Fraction:
    """Exact rational from ``num/den`` or a decimal string (no float round-trip)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def fmt_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator} ({float(x):.10f})"


def json_rational(x):
    if x is None:
        return None
    x = Fraction(x)
    return {"exact": f"{x.numerator}/{x.denominator}", "approx": float(x)}


def _emit(args, human: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _bound_text(res: bounds.BoundResult) -> str:
    if not res.feasible:
        return "infeasible"
    return f"feasible, bound {fmt_rational(res.list_bound)}"


def _bound_payload(res: bounds.BoundResult) -> dict:
    return {"feasible": res.feasible, "bound": json_rational(res.list_bound), "floor": res.list_bound_floor}


# ---------- bounds ----------

def cmd_bounds_pair(args) -> int:
    fn = bounds.johnson_bound if args.command == "johnson" else bounds.lemma1_bound
    res = fn(args.n, args.d, args.tins, args.tdel)
    _emit(args, _bound_text(res), _bound_payload(res))
    return EXIT_OK


def cmd_bounds_equal(args) -> int:
    eq = bounds.equal_radius_bound(args.n, args.d)
    ts = [args.t] if args.t is not None else [t for t in range(args.n) if eq.admits(t)]
    lines = [f"t_equal {eq.t_equal:.10f}"]
    rows = []
    for t in ts:
        if not eq.admits(t):
            lines.append(f"t={t}: infeasible")
            rows.append({"t": t, "feasible": False, "bound": None})
            continue
        value = eq.bound_at(t)
        lines.append(f"t={t}: feasible, bound {fmt_rational(value)}")
        rows.append({"t": t, "feasible": True, "bound": json_rational(value)})
    _emit(args, "\n".join(lines), {"t_equal": eq.t_equal, "rows": rows})
    return EXIT_OK


def cmd_bounds_summary(args) -> int:
    res = bounds.summary_bound(args.tins, args.tdel, args.delta)
    thr = bounds.delta_insdel(args.tins, args.tdel)
    _emit(args, f"delta_ID {fmt_rational(thr)}\n{_bound_text(res)}",
          {"delta_ID": json_rational(thr), **_bound_payload(res)})
    return EXIT_OK


def cmd_bounds_plotkin(args) -> int:
    N = args.N if args.N is not None else args.q * args.n
    res = bounds.plotkin_bound(args.n, args.d, N)
    _emit(args, _bound_text(res), {"N": N, **_bound_payload(res)})
    return EXIT_OK


def cmd_bounds_curves(args) -> int:
    extra = () if args.no_landmarks or args.figure != 2 else (bounds.binary_landmark_delta(),)
    text = bounds.curves_csv(args.figure, step=args.step, extra_deltas=extra)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------- code ----------

def cmd_code_search_inner(args) -> int:
    code = search_inner_code(args.q, args.m, args.p, args.delta, seed=args.seed, budget=args.budget)
    text = format_inner_code(code)
    if args.out:
        Path(args.out).write_text(text)
        _emit(args, f"inner code with {len(code.codewords)} words, delta_in {fmt_rational(code.delta_in)}",
              {"size": len(code.codewords), "delta_in": json_rational(code.delta_in)})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_code_min_distance(args) -> int:
    code = read_codebook(args.input)
    d = min_code_distance(code)
    _emit(args, f"min distance {d}", {"min_distance": d, "size": len(code), "n": code.n, "q": code.q})
    return EXIT_OK


# ---------- channel ----------

def cmd_channel_corrupt(args) -> int:
    x = read_word_file(args.input, args.q)
    v, ledger = corrupt(x, args.tins, args.tdel, args.seed, block_length=args.block)
    payload = {"word": str(v), "ledger": ledger.to_json()}
    if args.ledger:
        Path(args.ledger).write_text(json.dumps(ledger.to_json(), sort_keys=True) + "\n")
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(v)
        if not args.ledger:
            print(json.dumps(ledger.to_json(), sort_keys=True))
    return EXIT_OK


# ---------- codec ----------

def parse_message(text: str, p: int) -> list[int]:
    text = text.strip()
    if "," in text:
        syms = [int(t) for t in text.split(",")]
    else:
        syms = [int(c, 16) for c in text]
    if any(not 0 <= s < p for s in syms):
        raise UsageError(f"message symbols must lie in [0, {p})")
    return syms


def format_message(s: Sequence[int], p: int) -> str:
    if p <= 16:
        return "".join(format(x, "x") for x in s)
    return ",".join(str(x) for x in s)


def cmd_codec_params(args) -> int:
    if args.mode == INSDEL:
        params = derive_params(args.tins, args.tdel, args.ell_prime, args.n, args.m, args.p, args.override_rate)
    else:
        if args.k is None or args.gamma is None:
            raise UsageError("insertion mode needs --k and --gamma")
        params = derive_insertion_params(args.tins, args.gamma, args.k, args.ell_prime, args.n, args.m, args.p,
                                         args.override_rate)
    text = params.to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if params.rate_overridden:
        print("note: rate overridden; the list-size guarantee does not apply", file=sys.stderr)
    return EXIT_OK


def cmd_codec_encode(args) -> int:
    params, inner = read_params(args.params), read_inner_code(args.inner)
    x = concat_encode(params, inner, parse_message(args.msg, params.p))
    _emit(args, str(x), {"word": str(x)})
    return EXIT_OK


def cmd_codec_decode(args) -> int:
    params, inner = read_params(args.params), read_inner_code(args.inner)
    if args.mode is not None and args.mode != params.mode:
        raise UsageError(f"--mode {args.mode} does not match params mode {params.mode}")
    v = read_word_file(args.input, inner.q)
    decode = list_decode_insdel if params.mode == INSDEL else list_decode_insertions
    out = decode(params, inner, v, brute_force_cap=args.brute_force_cap, threads=args.threads)
    msgs = [format_message(s, params.p) for s in out.messages]
    diag = vars(out.diagnostics)
    human = "\n".join(msgs) if msgs else "(empty list)"
    human += "\n# " + " ".join(f"{k}={v}" for k, v in sorted(diag.items()))
    _emit(args, human, {"messages": msgs, "diagnostics": diag})
    return EXIT_OK


# ---------- oracle ----------

def cmd_oracle_max_list(args) -> int:
    code = read_codebook(args.code)
    size, witness = max_list_size(code, args.tins, args.tdel, cap=args.cap)
    _emit(args, f"max list size {size} at v={witness}", {"max_list_size": size, "witness": str(witness)})
    return EXIT_OK


def cmd_oracle_max_code(args) -> int:
    size, code = max_code_search(args.q, args.n, args.d, cap=args.cap)
    human = f"max code size {size}"
    if args.out:
        Path(args.out).write_text(format_codebook(code))
    _emit(args, human, {"size": size, "words": [str(w) for w in code]})
    return EXIT_OK


# ---------- verify ----------

def appendix_values() -> dict:
    """Recompute the u(i, j) / d_L table for the two counterexample families."""
    r1 = Word.parse("01100", 2)
    w1 = EditWitness(Word.parse("000000", 2), r1, {4, 5, 6}, {2, 3})
    w2 = EditWitness(Word.parse("011100", 2), r1, {4}, set())
    w3 = EditWitness(Word.parse("100011", 2), r1, {4, 5, 6}, {1, 2})
    r2 = Word.parse("000", 3)
    w4 = EditWitness(Word.parse("000111222", 3), r2, range(4, 10), set())
    w5 = EditWitness(Word.parse("222111000", 3), r2, range(1, 7), set())
    pairs = {"1,2": (w1, w2), "1,3": (w1, w3), "2,3": (w2, w3), "4,5": (w4, w5)}
    return {
        key: {"u": wz_u_value(a, b), "d_L": levenshtein_distance(a.word, b.word)}
        for key, (a, b) in pairs.items()
    }


APPENDIX_EXPECTED = {
    "1,2": {"u": 5, "d_L": 6},
    "1,3": {"u": 4, "d_L": 6},
    "2,3": {"u": 5, "d_L": 6},
    "4,5": {"u": 6, "d_L": 12},
}


def cmd_verify_appendix(args) -> int:
    values = appendix_values()
    lines = [f"u({k})={v['u']} d_L={v['d_L']}" for k, v in values.items()]
    ok = values == APPENDIX_EXPECTED and all(v["d_L"] > v["u"] for v in values.values())
    lines.append("OK" if ok else "MISMATCH")
    _emit(args, "\n".join(lines), {"values": values, "ok": ok})
    if not ok:
        raise VerificationFailed("appendix values differ from the expected table")
    return EXIT_OK


# ---------- parser ----------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="insdel", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker threads for window decoding")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, func, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("bounds", help="list-size and code-size bounds").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    for name in ("johnson", "lemma1"):
        p = sub(g, name, cmd_bounds_pair)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--tins", type=int, required=True)
        p.add_argument("--tdel", type=int, required=True)
    p = sub(g, "equal", cmd_bounds_equal)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int)
    p = sub(g, "summary", cmd_bounds_summary)
    p.add_argument("--tins", type=rational, required=True, help="normalized insertion fraction")
    p.add_argument("--tdel", type=rational, required=True, help="normalized deletion fraction")
    p.add_argument("--delta", type=rational, required=True)
    p = sub(g, "plotkin", cmd_bounds_plotkin)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, help="supersequence length (default q*n)")
    p.add_argument("--q", type=int, default=2)
    p = sub(g, "curves", cmd_bounds_curves)
    p.add_argument("--figure", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--step", type=rational, default=Fraction(1, 100))
    p.add_argument("--out")
    p.add_argument("--no-landmarks", action="store_true", help="omit the extra delta = 1 - 2/(2 + sqrt 2) row")

    g = groups.add_parser("code", help="code construction").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    p = sub(g, "search-inner", cmd_code_search_inner)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--delta", type=rational, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--out")
    p = sub(g, "min-distance", cmd_code_min_distance)
    p.add_argument("--in", dest="input", required=True)

    g = groups.add_parser("channel", help="adversarial channel simulator").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    p = sub(g, "corrupt", cmd_channel_corrupt)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--tins", type=int, required=True)
    p.add_argument("--tdel", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--block", type=int)
    p.add_argument("--ledger", help="write the ledger JSON here instead of stdout")

    g = groups.add_parser("codec", help="concatenated code").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    p = sub(g, "params", cmd_codec_params)
    p.add_argument("--mode", choices=(INSDEL, INSERTIONS), default=INSDEL)
    p.add_argument("--tins", type=rational, required=True)
    p.add_argument("--tdel", type=rational, default=Fraction(0))
    p.add_argument("--ell-prime", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--gamma", type=rational)
    p.add_argument("--override-rate", type=rational)
    p.add_argument("--out")
    p = sub(g, "encode", cmd_codec_encode)
    p.add_argument("--params", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--msg", required=True, help="hex digits (p <= 16) or comma-separated residues")
    p = sub(g, "decode", cmd_codec_decode)
    p.add_argument("--mode", choices=(INSDEL, INSERTIONS))
    p.add_argument("--params", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--brute-force-cap", type=int, default=DEFAULT_BRUTE_FORCE_CAP)

    g = groups.add_parser("oracle", help="exhaustive oracles").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    p = sub(g, "max-list", cmd_oracle_max_list)
    p.add_argument("--code", required=True)
    p.add_argument("--tins", type=int, required=True)
    p.add_argument("--tdel", type=int, required=True)
    p.add_argument("--cap", type=int, default=2_000_000)
    p = sub(g, "max-code", cmd_oracle_max_code)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cap", type=int, default=243)
    p.add_argument("--out")

    g = groups.add_parser("verify", help="reproduce published tables").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sub(g, "appendix", cmd_verify_appendix)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParameterError, DecodingError, OracleCapExceeded, InnerCodeSearchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
