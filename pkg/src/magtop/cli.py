"""Command-line front end.

Subcommands parse space documents, run the exact computations, and print
deterministic tables or JSON.  Exit codes are part of the contract:
0 pass, 1 check mismatch, 2 parse problem, 3 metric-axiom violation,
4 unresolvable label, 5 hypothesis unmet.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .causal import InvalidLength, achievable_lengths, pair_achievable_lengths
from .docs import (
    DocumentError,
    facets_from_doc,
    format_rational,
    gluing_from_doc,
    load_doc,
    load_fixture,
    parse_rational,
    space_from_doc,
    twist_from_doc,
)
from .frames import (
    EmptyComplex,
    FourCutObstruction,
    framed_betti_prediction,
    hasse_graph,
    singular_sequences,
    thin_frames,
)
from .homology import (
    HomologySummary,
    homology,
    magnitude_chain_complex,
    verify_chain_iso,
    verify_kunneth,
    verify_suspension_shift,
)
from .metric import LabelError, MetricError, random_metric_space
from .morse import NotASycamoreTwist, critical_cells, verify_sycamore
from .mv import NotGated, verify_mv, verify_union
from .series import euler_check, format_series, magnitude, weighting

CHECKS = (
    "chain-iso",
    "suspension",
    "kunneth",
    "euler",
    "union",
    "mv",
    "sycamore",
    "frames",
)

PASS_CODE = 0
MISMATCH_CODE = 1
PARSE_CODE = 2
METRIC_CODE = 3
LABEL_CODE = 4
REFUSED_CODE = 5


def _load_document(ref):
    """JSON document from a file path or a fixture:<name> reference."""
    if ref.startswith("fixture:"):
        name = ref.split(":", 1)[1]
        try:
            return load_fixture(name)
        except (OSError, json.JSONDecodeError) as exc:
            raise DocumentError("unknown fixture %r" % (name,)) from exc
    return load_doc(ref)


def _load_space(ref, seed):
    """Metric space from a path, fixture:<name>, or random:<n>."""
    if ref.startswith("random:"):
        tail = ref.split(":", 1)[1]
        if not tail.isdigit() or int(tail) == 0:
            raise DocumentError(
                "random space wants a positive point count: %r" % (ref,)
            )
        return random_metric_space(int(tail), seed)
    return space_from_doc(_load_document(ref))


def _length_arg(text):
    value = parse_rational(text)
    if value < 0:
        raise DocumentError("lengths must be nonnegative: %s" % (text,))
    return value


def _emit_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _torsion_text(factors):
    return ",".join(str(f) for f in factors) if factors else "-"


def _stamped_text(space, stamped):
    return " ".join(
        "%s:%s" % (space.labels[p], format_rational(t)) for t, p in stamped
    )


def _selected_pairs(space, from_label, to_label):
    sources = range(space.n) if from_label is None else [space.index(from_label)]
    targets = range(space.n) if to_label is None else [space.index(to_label)]
    return [(a, b) for a in sources for b in targets]


def _finish(ok, detail=""):
    line = "PASS" if ok else "FAIL"
    if detail:
        line += ": " + detail
    print(line)
    return PASS_CODE if ok else MISMATCH_CODE


def _run_tasks(worker, tasks, jobs):
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks))
    return [worker(task) for task in tasks]


def _pair_homology(task):
    space, a, b, l = task
    return a, b, homology(magnitude_chain_complex(space, a, b, l))


def _pair_check(task):
    kind, space, a, b, l = task
    if kind == "chain-iso":
        rep = verify_chain_iso(space, a, b, l)
        return a, b, l, rep.ok, rep.detail
    if kind == "suspension":
        rep = verify_suspension_shift(space, a, b, l)
        return a, b, l, rep.ok, rep.detail
    prediction = framed_betti_prediction(space, a, b, l)
    got = homology(magnitude_chain_complex(space, a, b, l)).betti_map()
    ok = prediction == got
    detail = "" if ok else "predicted %s, homology gives %s" % (prediction, got)
    return a, b, l, ok, detail


def cmd_magnitude(args):
    space = _load_space(args.input, args.seed)
    lmax = _length_arg(args.lmax)
    series = magnitude(space, lmax)
    weights = weighting(space, lmax)
    if args.format == "json":
        _emit_json(
            {
                "lmax": format_rational(lmax),
                "magnitude": format_series(series),
                "weighting": {
                    space.labels[i]: format_series(w)
                    for i, w in enumerate(weights)
                },
            }
        )
        return PASS_CODE
    print("Mag = %s" % format_series(series))
    for i, w in enumerate(weights):
        print("w(%s) = %s" % (space.labels[i], format_series(w)))
    return PASS_CODE


def cmd_homology(args):
    space = _load_space(args.input, args.seed)
    l = _length_arg(args.l)
    pairs = _selected_pairs(space, args.from_label, args.to_label)
    reachable = set()
    for a, b in pairs:
        reachable.update(pair_achievable_lengths(space, a, b, l))
    if l not in reachable:
        if args.format == "json":
            _emit_json({"l": format_rational(l), "rows": [], "total": []})
        else:
            print(
                "# no rows: length %s is not achievable for the selected pairs"
                " (try: magtop lengths)" % format_rational(l)
            )
        return PASS_CODE
    tasks = [(space, a, b, l) for a, b in pairs]
    results = _run_tasks(_pair_homology, tasks, args.jobs)
    results.sort(key=lambda r: (r[0], r[1]))
    rows = []
    total = HomologySummary()
    for a, b, summary in results:
        total = total.plus(summary)
        degrees = sorted(set(summary.betti_map()) | set(summary.torsion_map()))
        for k in degrees:
            rows.append(
                (
                    space.labels[a],
                    space.labels[b],
                    k,
                    summary.betti_at(k),
                    summary.torsion_at(k),
                )
            )
    total_rows = [
        (k, total.betti_at(k), total.torsion_at(k))
        for k in sorted(set(total.betti_map()) | set(total.torsion_map()))
    ]
    if args.format == "json":
        _emit_json(
            {
                "l": format_rational(l),
                "rows": [
                    {
                        "from": a,
                        "to": b,
                        "k": k,
                        "betti": r,
                        "torsion": [str(f) for f in f_list],
                    }
                    for a, b, k, r, f_list in rows
                ],
                "total": [
                    {"k": k, "betti": r, "torsion": [str(f) for f in f_list]}
                    for k, r, f_list in total_rows
                ],
            }
        )
        return PASS_CODE
    print("# homology at length %s" % format_rational(l))
    if not rows:
        print("# all groups vanish for the selected pairs")
        return PASS_CODE
    print("# from to k betti torsion")
    for a, b, k, r, f_list in rows:
        print("%s %s %d %d %s" % (a, b, k, r, _torsion_text(f_list)))
    for k, r, f_list in total_rows:
        print("* * %d %d %s" % (k, r, _torsion_text(f_list)))
    return PASS_CODE


def cmd_lengths(args):
    space = _load_space(args.input, args.seed)
    lmax = _length_arg(args.lmax)
    values = achievable_lengths(space, lmax)
    if args.format == "json":
        _emit_json({"lengths": [format_rational(v) for v in values]})
        return PASS_CODE
    for v in values:
        print(format_rational(v))
    return PASS_CODE


def cmd_critical_cells(args):
    gspec = gluing_from_doc(_load_document(args.input))
    l = _length_arg(args.l)
    cells = critical_cells(gspec, l)
    space = gspec.space
    by_dim = {}
    for stamped in cells:
        by_dim.setdefault(len(stamped) - 1, []).append(stamped)
    if args.format == "json":
        _emit_json(
            {
                "l": format_rational(l),
                "total": len(cells),
                "cells": {
                    str(k): [_stamped_text(space, s) for s in v]
                    for k, v in sorted(by_dim.items())
                },
            }
        )
        return PASS_CODE
    print(
        "# critical cells at length %s: %d" % (format_rational(l), len(cells))
    )
    for k in sorted(by_dim):
        print("dim %d: %d" % (k, len(by_dim[k])))
        for stamped in by_dim[k]:
            print("  %s" % _stamped_text(space, stamped))
    return PASS_CODE


def cmd_frames(args):
    space = _load_space(args.input, args.seed)
    l = _length_arg(args.l)
    if (args.from_label is None) != (args.to_label is None):
        raise DocumentError("give both --from and --to, or neither")
    if args.from_label is not None:
        a = space.index(args.from_label)
        b = space.index(args.to_label)
        found = sorted(f.points for f in singular_sequences(space, a, b, l))
        prediction = framed_betti_prediction(space, a, b, l)
        if args.format == "json":
            _emit_json(
                {
                    "l": format_rational(l),
                    "frames": [
                        list(space.labels[p] for p in pts) for pts in found
                    ],
                    "prediction": {str(k): r for k, r in prediction.items()},
                }
            )
            return PASS_CODE
        print(
            "# %d frames from %s to %s at length %s"
            % (len(found), args.from_label, args.to_label, format_rational(l))
        )
        for pts in found:
            print(" ".join(space.labels[p] for p in pts))
        print("# predicted betti")
        if not prediction:
            print("none")
        for k, r in prediction.items():
            print("k=%d: %d" % (k, r))
        return PASS_CODE
    found = sorted(f.points for f in thin_frames(space, l))
    by_degree = {}
    for pts in found:
        by_degree[len(pts) - 1] = by_degree.get(len(pts) - 1, 0) + 1
    if args.format == "json":
        _emit_json(
            {
                "l": format_rational(l),
                "thin": [list(space.labels[p] for p in pts) for pts in found],
                "degrees": {str(k): c for k, c in sorted(by_degree.items())},
            }
        )
        return PASS_CODE
    print("# %d thin frames at length %s" % (len(found), format_rational(l)))
    for k in sorted(by_degree):
        print("degree %d: %d" % (k, by_degree[k]))
    for pts in found:
        print(" ".join(space.labels[p] for p in pts))
    return PASS_CODE


def _encode_weight(value):
    if value.denominator == 1:
        return value.numerator
    return format_rational(value)


def cmd_hasse(args):
    facets = facets_from_doc(_load_document(args.input))
    try:
        hg = hasse_graph(facets)
    except (MetricError, EmptyComplex) as exc:
        raise DocumentError("bad facet list: %s" % (exc,)) from exc
    _emit_json(
        {
            "type": "graph",
            "vertices": list(hg.space.labels),
            "edges": [[u, v, _encode_weight(w)] for u, v, w in hg.edges],
            "suggested": {
                "from": hg.zero,
                "to": hg.one,
                "l": _encode_weight(hg.l),
            },
        }
    )
    return PASS_CODE


def _verify_pairwise(kind, space, lmax, jobs, fmt):
    tasks = []
    for a in range(space.n):
        for b in range(space.n):
            for l in pair_achievable_lengths(space, a, b, lmax):
                if kind == "suspension" and l == 0:
                    continue  # the stripped model needs distinct cone points
                tasks.append((kind, space, a, b, l))
    results = _run_tasks(_pair_check, tasks, jobs)
    by_length = {}
    failures = []
    for a, b, l, ok, detail in results:
        by_length[l] = by_length.get(l, 0) + 1
        if not ok:
            failures.append(
                "(%s,%s) length %s: %s"
                % (space.labels[a], space.labels[b], format_rational(l), detail)
            )
    if fmt == "json":
        _emit_json(
            {
                "check": kind,
                "ok": not failures,
                "cases": len(results),
                "failures": failures,
            }
        )
        return PASS_CODE if not failures else MISMATCH_CODE
    print("# %s up to length %s" % (kind, format_rational(lmax)))
    for l in sorted(by_length):
        print("length %s: %d cases" % (format_rational(l), by_length[l]))
    for line in failures:
        print("FAIL at %s" % line)
    return _finish(not failures, "%d cases" % len(results) if not failures else "")


def _additivity_exit(report, fmt, tag):
    if isinstance(report, NotGated):
        if fmt == "json":
            _emit_json(
                {
                    "check": tag,
                    "refused": True,
                    "witness": report.witness,
                    "detail": report.detail,
                }
            )
        else:
            print(
                "refused: gluing is not gated (%s)" % (report.detail or report.witness)
            )
        return REFUSED_CODE
    rows = [
        {
            "l": format_rational(l),
            "k": k,
            "left": left,
            "right": right,
            "ok": ok,
        }
        for l, k, left, right, ok in report.rows
    ]
    if fmt == "json":
        _emit_json(
            {"check": tag, "ok": report.ok, "rows": rows, "detail": report.detail}
        )
        return PASS_CODE if report.ok else MISMATCH_CODE
    print("# %s additivity" % tag)
    for row in rows:
        print(
            "l=%s k=%d: %d vs %d %s"
            % (
                row["l"],
                row["k"],
                row["left"],
                row["right"],
                "ok" if row["ok"] else "MISMATCH",
            )
        )
    return _finish(report.ok, report.detail)


def cmd_verify(args):
    lmax = _length_arg(args.lmax)
    wanted = 2 if args.check == "kunneth" else 1
    if len(args.inputs) != wanted:
        raise DocumentError(
            "%s wants %d input document(s), got %d"
            % (args.check, wanted, len(args.inputs))
        )
    if args.check in ("chain-iso", "suspension", "frames"):
        space = _load_space(args.inputs[0], args.seed)
        return _verify_pairwise(args.check, space, lmax, args.jobs, args.format)
    if args.check == "kunneth":
        x = _load_space(args.inputs[0], args.seed)
        y = _load_space(args.inputs[1], args.seed + 1)
        report = verify_kunneth(x, y, lmax)
        if args.format == "json":
            _emit_json(
                {"check": "kunneth", "ok": report.ok, "detail": report.detail}
            )
            return PASS_CODE if report.ok else MISMATCH_CODE
        print("# kunneth up to length %s" % format_rational(lmax))
        return _finish(report.ok, report.detail)
    if args.check == "euler":
        space = _load_space(args.inputs[0], args.seed)
        report = euler_check(space, lmax)
        if args.format == "json":
            _emit_json(
                {
                    "check": "euler",
                    "ok": report.ok,
                    "checked": report.checked,
                    "mismatches": [
                        [format_rational(l), a, b, str(coeff), chi]
                        for l, a, b, coeff, chi in report.mismatches
                    ],
                }
            )
            return PASS_CODE if report.ok else MISMATCH_CODE
        print("# euler: %d coefficients checked" % report.checked)
        for l, a, b, coeff, chi in report.mismatches:
            print(
                "FAIL at (%s,%s) length %s: coefficient %s vs euler %d"
                % (a, b, format_rational(l), coeff, chi)
            )
        return _finish(report.ok)
    if args.check in ("union", "mv"):
        gspec = gluing_from_doc(_load_document(args.inputs[0]))
        verifier = verify_union if args.check == "union" else verify_mv
        return _additivity_exit(verifier(gspec, lmax), args.format, args.check)
    twist = twist_from_doc(_load_document(args.inputs[0]))
    report = verify_sycamore(twist, lmax)
    if args.format == "json":
        _emit_json(
            {
                "check": "sycamore",
                "ok": report.ok,
                "rows": [
                    {
                        "l": format_rational(l),
                        "k": k,
                        "x": cx,
                        "y": cy,
                        "ok": ok,
                    }
                    for l, k, cx, cy, ok in report.rows
                ],
                "detail": report.detail,
            }
        )
        return PASS_CODE if report.ok else MISMATCH_CODE
    print("# sycamore up to length %s" % format_rational(lmax))
    for l, k, cx, cy, ok in report.rows:
        print(
            "l=%s dim=%d: %d vs %d %s"
            % (format_rational(l), k, cx, cy, "ok" if ok else "MISMATCH")
        )
    return _finish(report.ok, report.detail)


def _add_common(sub, jobs=False):
    sub.add_argument(
        "--format", choices=("table", "json"), default="table",
        help="output style",
    )
    sub.add_argument(
        "--seed", type=int, default=0,
        help="seed for random:<n> inputs",
    )
    if jobs:
        sub.add_argument(
            "--jobs", type=int, default=1,
            help="worker processes for per-pair work",
        )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magtop",
        description=(
            "Exact magnitude, sequence homology, and combinatorial models "
            "for finite metric spaces."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("magnitude", help="magnitude and weighting series")
    p.add_argument("input")
    p.add_argument("--lmax", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_magnitude)

    p = sub.add_parser("homology", help="Betti and torsion table at one length")
    p.add_argument("input")
    p.add_argument("--l", required=True)
    p.add_argument("--from", dest="from_label")
    p.add_argument("--to", dest="to_label")
    _add_common(p, jobs=True)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("lengths", help="achievable sequence lengths")
    p.add_argument("input")
    p.add_argument("--lmax", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_lengths)

    p = sub.add_parser(
        "critical-cells", help="unmatched cells of a gluing's matching"
    )
    p.add_argument("input")
    p.add_argument("--l", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_critical_cells)

    p = sub.add_parser("frames", help="singular subsequences and predictions")
    p.add_argument("input")
    p.add_argument("--l", required=True)
    p.add_argument("--from", dest="from_label")
    p.add_argument("--to", dest="to_label")
    _add_common(p)
    p.set_defaults(func=cmd_frames)

    p = sub.add_parser("hasse", help="weighted graph of an extended face poset")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("verify", help="machine-check a structural identity")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lmax", required=True)
    _add_common(p, jobs=True)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return PARSE_CODE
    except LabelError as exc:
        label = exc.args[0] if exc.args else exc
        print("error: unknown label %r" % (label,), file=sys.stderr)
        return LABEL_CODE
    except (FourCutObstruction, NotASycamoreTwist, InvalidLength) as exc:
        print("refused: %s" % (exc,), file=sys.stderr)
        return REFUSED_CODE
    except MetricError as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return METRIC_CODE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
