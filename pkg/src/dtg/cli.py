"""Command-line front door.

Subcommands: recognize (verdict + certificate or witness), verify (check a
stored certificate against a graph), gen (seeded random certificate plus its
graph), corpus (classify a graph6 file line by line), oracle (brute-force
equivalence sweep), forbidden (induced-pattern scan).

Exit codes: 0 accept/success, 1 reject, 2 usage or parse error, 3 internal
contradiction.  For `recognize`, exit 0 happens exactly when a certificate
was printed that re-verified against the input graph.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import core, oracles
from .errors import ContractViolation, GraphParseError, InternalContradiction
from .graph import (bipartition, encode_graph6, is_threshold, parse_edge_list,
                    parse_graph6)
from .perm import permutation_orderings

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_CONTRADICTION = 3

FLAG_NAMES = ("threshold", "bipartite-permutation", "permutation",
              "double-threshold")


def _load_graph(path, fmt):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "auto":
        # edge lists open with a vertex count; graph6 bytes are >= chr(63)
        fmt = "edges" if text.lstrip()[:1].isdigit() else "graph6"
    return parse_edge_list(text) if fmt == "edges" else parse_graph6(text)


def _witness_dict(witness):
    if witness is None:
        return None
    return {"pattern": witness[0], "vertices": [int(v) for v in witness[1]]}


def _cmd_recognize(args):
    g = _load_graph(args.path, args.format)
    res = core.recognize(g)
    if res.accepted:
        check = core.verify_certificate(g, res.certificate)
        if not check:
            raise InternalContradiction(
                "certificate failed re-verification at pair %r"
                % (check.failing_pair,))
        if args.json:
            print(json.dumps({"verdict": "accept",
                              "certificate": res.certificate.to_json_dict()}))
        else:
            print("verdict: accept")
            print(res.certificate.to_json())
        return EXIT_ACCEPT
    if args.json:
        print(json.dumps({"verdict": "reject",
                          "witness": _witness_dict(res.witness)}))
    else:
        print("verdict: reject")
        if res.witness is not None:
            print("witness: %s %s" % (
                res.witness[0], " ".join(str(v) for v in res.witness[1])))
    return EXIT_REJECT


def _cmd_verify(args):
    g = _load_graph(args.graph, args.format)
    with open(args.certificate, encoding="utf-8") as fh:
        cert = core.WeightCertificate.from_json(fh.read())
    check = core.verify_certificate(g, cert)
    if args.json:
        print(json.dumps({"verified": bool(check),
                          "failing_pair": None if check else
                          [int(x) for x in check.failing_pair]}))
    elif check:
        print("verified")
    else:
        print("mismatch at pair %d %d" % check.failing_pair)
    return EXIT_ACCEPT if check else EXIT_REJECT


def _cmd_gen(args):
    cert = oracles.random_certificate(args.n, args.seed)
    g = core.graph_from_weights(cert)
    if args.json:
        print(json.dumps({"n": g.n, "m": int(g.m),
                          "graph6": encode_graph6(g),
                          "certificate": cert.to_json_dict()}))
        return EXIT_ACCEPT
    if args.out == "edges":
        eu, ev = g.edges()
        print(g.n)
        for u, v in zip(eu.tolist(), ev.tolist()):
            print(u, v)
    else:
        print(encode_graph6(g))
    print(cert.to_json())
    return EXIT_ACCEPT


def _classify_graph6_line(line):
    g = parse_graph6(line)
    bip = bipartition(g)
    perm = permutation_orderings(g) is not None
    res = core.recognize(g)
    rec = {"n": g.n, "m": int(g.m),
           "flags": {"threshold": is_threshold(g),
                     "bipartite-permutation": bip is not None and perm,
                     "permutation": perm,
                     "double-threshold": res.accepted}}
    if not res.accepted and res.witness is not None:
        rec["witness"] = _witness_dict(res.witness)
    return rec


def _corpus_worker(item):
    lineno, line = item
    try:
        return lineno, _classify_graph6_line(line), None
    except (GraphParseError, ContractViolation) as exc:
        return lineno, None, str(exc)


def _cmd_corpus(args):
    with open(args.path, encoding="utf-8") as fh:
        items = [(k, ln.strip()) for k, ln in enumerate(fh, 1) if ln.strip()]
    workers = max(1, int(os.environ.get("DTG_THREADS", "1")))
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_corpus_worker, items, chunksize=8))
    else:
        results = [_corpus_worker(it) for it in items]

    records, errors = [], []
    totals = dict.fromkeys(FLAG_NAMES, 0)
    for lineno, rec, err in results:
        if err is not None:
            errors.append((lineno, err))
            continue
        rec["index"] = lineno
        records.append(rec)
        for name in FLAG_NAMES:
            totals[name] += rec["flags"][name]

    if args.json:
        print(json.dumps({
            "records": [{"index": r["index"], "n": r["n"], "m": r["m"],
                         "flags": r["flags"],
                         "witness": r.get("witness")} for r in records],
            "summary": {"total": len(records), **totals},
            "errors": [{"line": ln, "error": msg} for ln, msg in errors]}))
    else:
        for r in records:
            flags = ",".join(nm for nm in FLAG_NAMES if r["flags"][nm]) or "-"
            line = "#%d n=%d m=%d flags=%s" % (r["index"], r["n"], r["m"], flags)
            if "witness" in r:
                w = r["witness"]
                line += " witness=%s:%s" % (
                    w["pattern"], ",".join(str(v) for v in w["vertices"]))
            print(line)
        print("summary: total=%d %s" % (
            len(records),
            " ".join("%s=%d" % (nm, totals[nm]) for nm in FLAG_NAMES)))
    for lineno, msg in errors:
        print("line %d: %s" % (lineno, msg), file=sys.stderr)
    return EXIT_USAGE if errors else EXIT_ACCEPT


def _cmd_oracle(args):
    if not 1 <= args.max_n <= 6:
        raise ContractViolation("--max-n must be between 1 and 6")
    levels = []
    for n in range(1, args.max_n + 1):
        classes = 0
        for g in oracles.enumerate_small_graphs(n):
            classes += 1
            got = core.recognize(g).accepted
            want = oracles.brute_force_dtg(g)
            if got != want:
                raise InternalContradiction(
                    "pipeline and oracle disagree on %s (pipeline %s, oracle %s)"
                    % (encode_graph6(g), got, want))
        levels.append((n, classes))
        if not args.json:
            print("n=%d classes=%d agree=%d" % (n, classes, classes))
    if args.json:
        print(json.dumps({"levels": [{"n": n, "classes": c} for n, c in levels],
                          "agree": True}))
    return EXIT_ACCEPT


def _cmd_forbidden(args):
    g = _load_graph(args.path, args.format)
    hits = oracles.forbidden_scan(g)
    if args.json:
        print(json.dumps({"hits": [
            {"pattern": nm, "vertices": [int(v) for v in emb]}
            for nm, emb in hits]}))
    elif hits:
        for nm, emb in hits:
            print("%s: %s" % (nm, " ".join(str(v) for v in emb)))
    else:
        print("no forbidden patterns found")
    return EXIT_ACCEPT


def _add_format(sub):
    sub.add_argument("--format", choices=("auto", "edges", "graph6"),
                     default="auto", help="input graph format")


def build_parser():
    p = argparse.ArgumentParser(
        prog="dtg",
        description="Recognition and certification of double-threshold graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", help="decide a graph, print certificate or witness")
    s.add_argument("path")
    _add_format(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_recognize)

    s = sub.add_parser("verify", help="check a stored certificate against a graph")
    s.add_argument("graph")
    s.add_argument("certificate")
    _add_format(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("gen", help="seeded random certificate and its graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", choices=("graph6", "edges"), default="graph6")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_gen)

    s = sub.add_parser("corpus", help="classify each graph6 line of a file")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_corpus)

    s = sub.add_parser("oracle", help="brute-force equivalence sweep")
    s.add_argument("--max-n", type=int, default=5)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_oracle)

    s = sub.add_parser("forbidden", help="scan for forbidden induced patterns")
    s.add_argument("path")
    _add_format(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_forbidden)
    return p


def run_command(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GraphParseError, ContractViolation, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except InternalContradiction as exc:
        print("internal contradiction: %s" % exc, file=sys.stderr)
        return EXIT_CONTRADICTION


def main(argv=None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
