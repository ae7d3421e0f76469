"""``urt`` command line.

Exit status: 0 clean or pass, 1 violation or failed verdict, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import certify, pansiot, patterns, search
from . import constructions as C
from .morphic import MorphicWord, load_morphism, saturated_max_reversible
from .repetitions import find_undirected_power
from .words import ExtExponent, format_word, max_reversible_factor_length, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """The validated, flag-independent view of one invocation."""

    subcommand: str
    k: list[int] = field(default_factory=list)
    threshold: ExtExponent | None = None
    pattern: list[str] = field(default_factory=list)
    input: str | None = None
    output: str | None = None
    fmt: str | None = None
    jobs: int = 1
    cap: int | None = None
    length: int | None = None
    prefix_len: int | None = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        get = lambda name: getattr(args, name, None)  # noqa: E731
        k = get("k")
        pats = get("pattern")
        cfg = cls(
            subcommand=args.subcommand,
            k=[] if k is None else (k if isinstance(k, list) else [k]),
            threshold=_threshold(args) if get("threshold") else None,
            pattern=[] if pats is None else (pats if isinstance(pats, list) else [pats]),
            input=get("input"),
            output=get("output"),
            fmt=get("fmt"),
            jobs=get("jobs") or 1,
            cap=get("cap"),
            length=get("length"),
            prefix_len=get("prefix"),
        )
        cfg.validate()
        return cfg

    def validate(self):
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if self.cap is not None and self.cap < 1:
            raise UsageError("--cap must be positive")
        if self.length is not None and self.length < 0:
            raise UsageError("--length must be nonnegative")
        if self.prefix_len is not None and self.prefix_len < 1:
            raise UsageError("--prefix must be positive")
        for p in self.pattern:
            patterns.Pattern(p)


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("URT_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("digits", "ints"),
                        help="word syntax; required when the alphabet has 10 or more letters")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes")

    words_in = argparse.ArgumentParser(add_help=False)
    words_in.add_argument("word", nargs="?", help="the word; omit to read --input or stdin")
    words_in.add_argument("--input", "-i", help="file holding the word ('-' for stdin)")

    p = argparse.ArgumentParser(prog="urt", description=__doc__.splitlines()[0])
    p.add_argument("--paper-tables", action="store_true", help="same as the paper-tables subcommand")
    sub = p.add_subparsers(dest="subcommand")

    g = sub.add_parser("gen", parents=[common], help="print a prefix of a constructed word")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--k", type=int, help="w_k for 4 <= k <= 21")
    src.add_argument("--pattern", help="w_p for a constructed pattern")
    src.add_argument("--urt3", action="store_true", help="the fixed point for URT(3)")
    src.add_argument("--morphism", help="morphism file; prints its fixed point")
    g.add_argument("--outer", help="morphism file applied to the fixed point of --morphism")
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--length", "-n", type=int, required=True)

    c = sub.add_parser("check-free", parents=[common, words_in],
                       help="look for an undirected power at or above a threshold")
    c.add_argument("--threshold", "-t", required=True, help="p/q, or p/q+ for the strict version")
    c.add_argument("--strict", action="store_true", help="forbid only ratios above the threshold")

    s = sub.add_parser("scan-pattern", parents=[common, words_in],
                       help="first instance of a pattern up to reversal")
    s.add_argument("--pattern", required=True)

    e = sub.add_parser("encode", parents=[common, words_in], help="prefix and ternary tape")
    e.add_argument("--k", type=int, required=True)
    d = sub.add_parser("decode", parents=[common],
                       help="inverse of encode: reads the prefix and tape lines")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--input", "-i", help="file with the two lines ('-' for stdin)")

    bp = sub.add_parser("backtrack-power", parents=[common], help="longest threshold-free word")
    bp.add_argument("--k", type=int, required=True)
    bp.add_argument("--threshold", "-t", required=True)
    bp.add_argument("--strict", action="store_true")
    bp.add_argument("--cap", type=int, default=1000)
    bp.add_argument("--no-symmetry", action="store_true")
    bp.add_argument("--split-depth", type=int, default=6)

    bt = sub.add_parser("backtrack-pattern", parents=[common], help="longest pattern-avoiding word")
    bt.add_argument("--pattern", action="append", required=True, help="repeat for a table")
    bt.add_argument("--alphabet", type=int, default=2)
    bt.add_argument("--cap", type=int, default=1000)
    bt.add_argument("--no-symmetry", action="store_true")
    bt.add_argument("--split-depth", type=int, default=8)

    sub.add_parser("verify-urt3", parents=[common], help="certificate for URT(3) = 7/4")
    vu = sub.add_parser("verify-urt", parents=[common], help="certificate for URT(k), 4 <= k <= 21")
    which = vu.add_mutually_exclusive_group(required=True)
    which.add_argument("--k", type=int, action="append")
    which.add_argument("--all", action="store_true")
    vu.add_argument("--search-power", type=int, help="power of f_k searched for candidates")
    vu.add_argument("--eta-in-repetition", action="store_true",
                    help="let eta be a prefix of pi.eta rather than of pi")

    vp = sub.add_parser("verify-pattern", parents=[common],
                        help="bounded avoidance check for a constructed word w_p")
    vp.add_argument("--pattern", action="append", help="default: all constructed patterns")
    vp.add_argument("--prefix", type=int, default=500)

    cl = sub.add_parser("classify", parents=[common], help="undirected avoidability index")
    cl.add_argument("--pattern", action="append")
    cl.add_argument("--all-up-to", type=int, help="every binary pattern up to this length")

    rv = sub.add_parser("reversible", parents=[common, words_in],
                        help="longest factor whose reversal is also a factor")
    rsrc = rv.add_mutually_exclusive_group()
    rsrc.add_argument("--k", type=int, help="the tape word g_k(f_k^omega(1))")
    rsrc.add_argument("--pattern", help="the constructed word w_p")
    rv.add_argument("--cap", type=int, default=200)

    pt = sub.add_parser("paper-tables", parents=[common], help="run every published value")
    pt.add_argument("--quick", action="store_true", help="skip the slow rows")
    return p


# ---- helpers ------------------------------------------------------------------

def _read_text(args) -> str:
    if getattr(args, "word", None) is not None:
        return args.word
    path = getattr(args, "input", None)
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _read_word(args) -> bytes:
    text = _read_text(args).strip()
    return parse_word(text, args.fmt or "digits")


def _threshold(args) -> ExtExponent:
    t = ExtExponent.parse(args.threshold, True if args.strict else None)
    if t.value > 2:
        raise UsageError("thresholds above 2 are not meaningful for undirected powers")
    return t


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_for(args, letters: bytes) -> str:
    size = max(letters, default=0)
    if args.fmt:
        return args.fmt
    if size >= 10:
        raise UsageError("the word uses letters >= 10; pass --format ints")
    return "digits"


# ---- subcommands --------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.length < 0:
        raise UsageError("--length must be nonnegative")
    if args.k is not None:
        if args.k not in C.K_RANGE:
            raise UsageError("--k must lie in 4..21")
        out = certify.build_wk_prefix(args.k, args.length)[:args.length]
        size = args.k
    elif args.pattern:
        try:
            mw = patterns.build_wp(args.pattern)
        except ValueError as e:
            raise UsageError(str(e)) from None
        out, size = mw.prefix(args.length), mw.alphabet_size
    elif args.urt3:
        mw = MorphicWord(C.urt3_morphism(), 1)
        out, size = mw.prefix(args.length), 3
    else:
        try:
            h = load_morphism(args.morphism)
            outer = load_morphism(args.outer) if args.outer else None
        except OSError as e:
            raise UsageError(f"cannot read morphism file: {e.strerror}") from None
        mw = MorphicWord(h, args.seed, outer)
        out, size = mw.prefix(args.length), mw.alphabet_size
    fmt = args.fmt or ("digits" if size < 10 else None)
    if fmt is None:
        raise UsageError(f"alphabet of size {size} needs --format ints")
    _emit(args, format_word(out, fmt))
    return EXIT_OK


def cmd_check_free(args) -> int:
    t = _threshold(args)
    w = _read_word(args)
    occ = find_undirected_power(w, t)
    report = {"length": len(w), "threshold": str(t), "free": occ is None}
    if occ is not None:
        report["occurrence"] = occ.to_dict()
        report["factor"] = format_word(occ.factor(w), _fmt_for(args, w))
    _emit(args, json.dumps(report, indent=2))
    return EXIT_OK if occ is None else EXIT_FAIL


def cmd_scan_pattern(args) -> int:
    w = _read_word(args)
    inst = patterns.find_instance_undirected(w, args.pattern)
    report = {"length": len(w), "pattern": args.pattern, "avoids": inst is None}
    if inst is not None:
        fmt = _fmt_for(args, w)
        report["instance"] = inst.to_dict()
        report["blocks"] = [format_word(x, fmt) for x in inst.blocks(w)]
    _emit(args, json.dumps(report, indent=2))
    return EXIT_OK if inst is None else EXIT_FAIL


def cmd_encode(args) -> int:
    w = _read_word(args)
    fmt = args.fmt or ("digits" if args.k < 10 else None)
    if fmt is None:
        raise UsageError(f"k = {args.k} needs --format ints")
    enc = pansiot.encode(w, args.k)
    _emit(args, format_word(enc.prefix, fmt) + "\n" + format_word(enc.tape, "digits"))
    return EXIT_OK


def cmd_decode(args) -> int:
    lines = _read_text(args).splitlines()
    if len(lines) < 1:
        raise UsageError("decode expects a prefix line and a tape line")
    fmt = args.fmt or ("digits" if args.k < 10 else None)
    if fmt is None:
        raise UsageError(f"k = {args.k} needs --format ints")
    prefix = parse_word(lines[0], fmt)
    tape = parse_word(lines[1] if len(lines) > 1 else "", "digits")
    _emit(args, format_word(pansiot.decode(prefix, tape, args.k), fmt))
    return EXIT_OK


def _search_report(name: str, res: search.SearchResult, fmt: str) -> str:
    head = "cap exceeded" if res.cap_exceeded else str(res.max_length)
    return (f"{head}\nwitness: {format_word(res.witness.letters, fmt)}\n"
            f"nodes: {res.nodes_expanded}\n")


def cmd_backtrack_power(args) -> int:
    t = _threshold(args)
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    res = search.longest_power_free(args.k, t, cap=args.cap, symmetry=not args.no_symmetry,
                                    jobs=args.jobs, split_depth=args.split_depth)
    fmt = args.fmt or ("digits" if args.k < 10 else None)
    if fmt is None:
        raise UsageError(f"k = {args.k} needs --format ints")
    _emit(args, _search_report(f"k={args.k}", res, fmt))
    return EXIT_OK


def cmd_backtrack_pattern(args) -> int:
    fmt = args.fmt or ("digits" if args.alphabet < 10 else None)
    if fmt is None:
        raise UsageError(f"alphabet of size {args.alphabet} needs --format ints")
    results = []
    for p in args.pattern:
        try:
            patterns.Pattern(p)
        except ValueError as e:
            raise UsageError(str(e)) from None
        results.append((p, search.longest_pattern_free(
            p, args.alphabet, cap=args.cap, symmetry=not args.no_symmetry,
            jobs=args.jobs, split_depth=args.split_depth)))
    if len(results) == 1:
        _emit(args, _search_report(*results[0], fmt))
        return EXIT_OK
    width = max(len(p) for p, _ in results)
    lines = [f"{'pattern':<{width}}  longest  nodes"]
    for p, r in results:
        n = "cap" if r.cap_exceeded else str(r.max_length)
        lines.append(f"{p:<{width}}  {n:>7}  {r.nodes_expanded}")
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_verify_urt3(args) -> int:
    cert = certify.verify_urt3()
    _emit(args, cert.to_json())
    return EXIT_OK if cert.verdict == "pass" else EXIT_FAIL


def _certify_one(k: int, config: certify.CertifyConfig) -> dict:
    return certify.verify_threshold(k, config).to_dict()


def cmd_verify_urt(args) -> int:
    ks = list(C.K_RANGE) if args.all else args.k
    bad = [k for k in ks if k not in C.K_RANGE]
    if bad:
        raise UsageError(f"k must lie in 4..21, got {bad}")
    config = certify.CertifyConfig(args.search_power, args.eta_in_repetition)
    if args.jobs > 1 and len(ks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            certs = list(pool.map(_certify_one, ks, [config] * len(ks)))
    else:
        certs = [_certify_one(k, config) for k in ks]
    body = certs[0] if len(certs) == 1 else certs
    _emit(args, json.dumps(body, indent=2))
    return EXIT_OK if all(c["verdict"] == "pass" for c in certs) else EXIT_FAIL


def cmd_verify_pattern(args) -> int:
    ps = args.pattern or list(C.CONSTRUCTED_PATTERNS)
    reports = []
    for p in ps:
        if p not in C.CONSTRUCTED_PATTERNS:
            raise UsageError(f"no construction for {p!r}")
        reports.append(patterns.verify_lemma3_bounded(p, args.prefix).to_dict())
    _emit(args, json.dumps(reports[0] if len(reports) == 1 else reports, indent=2))
    return EXIT_OK if all(r["avoids"] for r in reports) else EXIT_FAIL


def cmd_classify(args) -> int:
    ps = list(args.pattern or [])
    if args.all_up_to:
        ps += list(patterns.binary_patterns(args.all_up_to))
    if not ps:
        raise UsageError("give --pattern or --all-up-to")
    lines = []
    for p in ps:
        try:
            v = patterns.classify_binary_pattern(p)
        except ValueError as e:
            raise UsageError(str(e)) from None
        lines.append(f"{p}\t{'inf' if v == float('inf') else v}")
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_reversible(args) -> int:
    if args.k is not None or args.pattern:
        if args.k is not None:
            if args.k not in C.K_RANGE:
                raise UsageError("--k must lie in 4..21")
            mw = C.tape_word(args.k)
        else:
            try:
                mw = patterns.build_wp(args.pattern)
            except ValueError as e:
                raise UsageError(str(e)) from None
        n = saturated_max_reversible(mw, cap=args.cap)
        _emit(args, json.dumps({"max_reversible": n if n is not None else f"> {args.cap}",
                                "source": "saturated factor sets"}))
        return EXIT_OK
    w = _read_word(args)
    _emit(args, json.dumps({"max_reversible": max_reversible_factor_length(w), "length": len(w)}))
    return EXIT_OK


def cmd_paper_tables(args) -> int:
    from .expectations import run_all

    rows = run_all(include_slow=not getattr(args, "quick", False))
    width = max(len(r.name) for r in rows)
    lines = []
    for r in rows:
        mark = "PASS" if r.ok else "FAIL"
        lines.append(f"{mark}  {r.name:<{width}}  expected {r.expected}  got {r.got}")
    passed = sum(r.ok for r in rows)
    lines.append(f"{passed}/{len(rows)} values reproduced")
    _emit(args, "\n".join(lines))
    return EXIT_OK if passed == len(rows) else EXIT_FAIL


COMMANDS = {
    "gen": cmd_gen,
    "check-free": cmd_check_free,
    "scan-pattern": cmd_scan_pattern,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "backtrack-power": cmd_backtrack_power,
    "backtrack-pattern": cmd_backtrack_pattern,
    "verify-urt3": cmd_verify_urt3,
    "verify-urt": cmd_verify_urt,
    "verify-pattern": cmd_verify_pattern,
    "classify": cmd_classify,
    "reversible": cmd_reversible,
    "paper-tables": cmd_paper_tables,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.paper_tables and args.subcommand is None:
        args.subcommand, args.output, args.quick = "paper-tables", None, False
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        RunConfig.from_args(args)
        return COMMANDS[args.subcommand](args)
    except (UsageError, ValueError) as e:
        # malformed words, bad exponents, unknown patterns and encoding errors
        print(f"urt {args.subcommand}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
