"""Command-line front end: ``hkq <command> [options]``.

Every command wraps one library operation and prints JSON (default) or,
for flat tables, CSV.  Exit codes: 0 success, 1 domain error (an error
object is printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import charring, cp1rep, genseries, specfun
from .errors import HKQError
from .models import adhm, atiyah_hitchin, flat, taubnut


class InputError(HKQError):
    kind = "input"


class _Usage(Exception):
    pass


def _seed() -> int:
    raw = os.environ.get("HKQ_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"HKQ_SEED must be an integer, got {raw!r}") from None


def _load_json(text: Optional[str], path: Optional[str], what: str):
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if text is None:
        raise _Usage(f"{what} required (inline or via --file)")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON for {what}: {exc}") from None


def _weight_key(w) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def _ranks_table(series: genseries.TruncatedSeries):
    ranks = series.ranks()
    return [{"d": d, "rank": ranks.get(d, 0)} for d in range(0, series.order + 1)]


# -- command implementations ------------------------------------------------
# Each returns (json_payload, csv_rows or None).

def cmd_series(ns):
    if ns.model == "flat":
        if ns.n is None:
            raise _Usage("--n is required for --model flat")
        pts = flat.flat_fixed_points(flat.FlatModel(ns.n))
        s = genseries.localize(pts, ns.order)
    else:
        s = taubnut.taubnut_series(ns.order)
    table = _ranks_table(s)
    payload = {"model": ns.model, "order": ns.order, "ranks": table}
    if ns.characters:
        payload["series"] = s.to_json()
    return payload, table


def cmd_localize(ns):
    obj = _load_json(ns.points, ns.file, "--points")
    pts = genseries.points_from_json(obj)
    s = genseries.localize(pts, ns.order, rank=ns.rank)
    return s.to_json(), _ranks_table(s)


def cmd_decompose(ns):
    g = charring.GroupDescriptor.parse(ns.group)
    obj = _load_json(ns.char, ns.file, "--char")
    h = charring.Character.from_json(obj, g.rank)
    mults = charring.decompose_character(g, h)
    payload = {_weight_key(w): m for w, m in sorted(mults.items(), reverse=True)}
    rows = [{"lambda": _weight_key(w), "m": m} for w, m in sorted(mults.items(), reverse=True)]
    return payload, rows


def cmd_substitute(ns):
    g = charring.GroupDescriptor.parse(ns.group)
    obj = _load_json(ns.series, ns.file, "--series")
    s = genseries.TruncatedSeries.from_json(obj, g.rank)
    if ns.inverse:
        return charring.extract_multiplicities(g, s).to_json(), None
    return charring.substitute_characters(g, s).to_json(), None


def cmd_ledger(ns):
    if ns.file is not None or ns.ledger is not None:
        if ns.group is None:
            raise _Usage("--group is required with an explicit ledger")
        g = charring.GroupDescriptor.parse(ns.group)
        led = cp1rep.QuantumLedger.from_json(_load_json(ns.ledger, ns.file, "--ledger"))
        dims = cp1rep.super_hilbert_dims(led, g)
        rows = [{"d": d, "even": sd.even, "odd": sd.odd} for d, sd in sorted(dims.items())]
        return {"group": g.name, "dims": rows}, rows
    if ns.n is None:
        raise _Usage("either --n (flat model) or a ledger via --ledger/--file is required")
    m = flat.FlatModel(ns.n)
    led = flat.flat_multiplicity_ledger(m, ns.dmax)
    rows = flat.flat_dimension_report(m, ns.dmax)
    return {"model": "flat", "n": ns.n, "ledger": led.to_json(), "report": rows}, rows


def cmd_cohomology(ns):
    lo = ns.d if ns.dmin is None else ns.dmin
    hi = ns.d if ns.dmax is None else ns.dmax
    if lo is None or hi is None:
        raise _Usage("give --d or both --dmin and --dmax")
    rows = []
    for d in range(lo, hi + 1):
        sd = cp1rep.cohomology_dims(d)
        rows.append({"d": d, "h0": sd.even, "h1": sd.odd, "euler": sd.euler})
    payload = rows[0] if ns.dmin is None and ns.dmax is None else rows
    return payload, rows


def cmd_tn_l2(ns):
    model = taubnut.TaubNUTModel(ns.a, ns.hbar)
    res = taubnut.taubnut_l2(model, ns.n, ns.m, tol=ns.tol, cap=ns.cap, w2_uses=ns.w2_uses)
    out = {"a": ns.a, "hbar": ns.hbar, "n": ns.n, "m": ns.m, **res.to_json()}
    return out, [out]


def cmd_tn_series(ns):
    s = taubnut.taubnut_series(ns.order)
    rows = [{"d": d, "weight": w[0], "m": c}
            for d, ch in s.items() for w, c in ch.sorted_items()]
    return s.to_json(), rows


def cmd_ah_params(ns):
    if (ns.k is None) == (ns.m1 is None):
        raise _Usage("give exactly one of --k and --m1")
    p = specfun.ah_params(ns.k) if ns.k is not None else specfun.ah_params_from_m1(ns.m1)
    out = p.to_json()
    return out, [out]


def cmd_ah_integrate(ns):
    res = atiyah_hitchin.ah_integral(ns.alpha, tol=ns.tol, doublings=ns.doublings)
    return res.to_json(), None


def cmd_ah_wbound(ns):
    seed = _seed() if ns.seed is None else ns.seed
    out = atiyah_hitchin.ah_wbound_check(ns.k, samples=ns.samples, seed=seed)
    return out, [out]


def cmd_adhm_check(ns):
    if ns.example is not None:
        if ns.example == "zero":
            d = adhm.zero_datum(ns.k or 1, ns.r or 2)
        elif ns.example == "hand":
            d = adhm.hand_datum()
        elif ns.example == "hand-k2":
            d = adhm.hand_datum_k2()
        else:
            d = adhm.random_datum(ns.k or 2, ns.r or 2, np.random.default_rng(_seed()))
    else:
        d = adhm.ADHMDatum.from_json(_load_json(ns.datum, ns.file, "--datum"))
    rep = adhm.adhm_check(d, tol=ns.tol)
    out = {"k": d.k, "r": d.r, **rep.to_json()}
    return out, [out]


def cmd_elliptic(ns):
    out = {"K": specfun.elliptic_K(ns.k), "E": specfun.elliptic_E(ns.k)}
    return out, [out]


# -- parser -----------------------------------------------------------------

def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _pos_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hkq", description="Hyper-Kaehler quantisation toolkit.")
    sub = p.add_subparsers(dest="command", metavar="command", required=True)

    def add(name, fn: Callable, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (csv only for tabular results)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("series", cmd_series, "rank series of a model via localisation")
    sp.add_argument("--model", choices=("flat", "taubnut"), required=True)
    sp.add_argument("--n", type=_pos_int, help="quaternionic dimension (flat model)")
    sp.add_argument("--order", type=_nonneg_int, required=True, help="truncation order")
    sp.add_argument("--characters", action="store_true", help="include the full character series")

    sp = add("localize", cmd_localize, "sum fixed-point contributions to a truncated series")
    sp.add_argument("--points", help='fixed-point JSON {"points": [...]}')
    sp.add_argument("--file", help="read the fixed-point JSON from a file")
    sp.add_argument("--order", type=_nonneg_int, required=True, help="truncation order")
    sp.add_argument("--rank", type=_nonneg_int, help="torus rank (needed for an empty list)")

    sp = add("decompose", cmd_decompose, "decompose a character into irreducibles")
    sp.add_argument("--group", required=True, help="group descriptor, e.g. sp1, sp2")
    sp.add_argument("--char", help='character JSON {"terms": [{"w": [...], "m": ...}]}')
    sp.add_argument("--file", help="read the character JSON from a file")

    sp = add("substitute", cmd_substitute, "replace weight symbols by Weyl characters per degree")
    sp.add_argument("--group", required=True, help="group descriptor, e.g. sp1, sp2")
    sp.add_argument("--series", help="series JSON with multiplicity coefficients")
    sp.add_argument("--file", help="read the series JSON from a file")
    sp.add_argument("--inverse", action="store_true", help="extract multiplicities instead")

    sp = add("ledger", cmd_ledger, "multiplicity ledger and super dimensions")
    sp.add_argument("--n", type=_pos_int, help="flat model of quaternionic dimension n")
    sp.add_argument("--dmax", type=_nonneg_int, default=8, help="largest degree (flat model)")
    sp.add_argument("--group", help="group descriptor for an explicit ledger")
    sp.add_argument("--ledger", help='ledger JSON {"entries": [{"d", "lambda", "m"}]}')
    sp.add_argument("--file", help="read the ledger JSON from a file")

    sp = add("cohomology", cmd_cohomology, "sheaf cohomology dimensions of O(d) on CP^1")
    sp.add_argument("--d", type=int, help="single degree")
    sp.add_argument("--dmin", type=int, help="first degree of a range")
    sp.add_argument("--dmax", type=int, help="last degree of a range")

    sp = add("tn-l2", cmd_tn_l2, "squared L2 norm of w1^n w2^m on Taub-NUT")
    sp.add_argument("--a", type=float, required=True, help="Taub-NUT parameter a >= 0")
    sp.add_argument("--n", type=_nonneg_int, required=True, help="power of w1")
    sp.add_argument("--m", type=_nonneg_int, required=True, help="power of w2")
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--tol", type=float, default=1e-6, help="relative tolerance")
    sp.add_argument("--cap", type=_nonneg_int, default=4, help="largest allowed n + m")
    sp.add_argument("--w2-uses", choices=("x2", "x1"), default="x2",
                    help="coordinate in the exponent of w2")

    sp = add("tn-series", cmd_tn_series, "Taub-NUT character series")
    sp.add_argument("--order", type=_nonneg_int, required=True, help="truncation order")

    sp = add("ah-params", cmd_ah_params, "Atiyah-Hitchin metric coefficients at modulus k")
    sp.add_argument("--k", type=float, help="modulus in (0, 1)")
    sp.add_argument("--m1", type=float, help="complementary parameter 1 - k^2 in (0, 1)")

    sp = add("ah-integrate", cmd_ah_integrate, "integral of exp(-alpha Omega) on Atiyah-Hitchin")
    sp.add_argument("--alpha", type=float, required=True, help="positive weight")
    sp.add_argument("--tol", type=float, default=1e-6, help="refinement tolerance")
    sp.add_argument("--doublings", type=_nonneg_int, default=3, help="mesh doublings")

    sp = add("ah-wbound", cmd_ah_wbound, "sample the |w|^2 bound on the unit 3-sphere")
    sp.add_argument("--k", type=float, required=True, help="modulus in (0, 1)")
    sp.add_argument("--samples", type=_pos_int, default=100_000)
    sp.add_argument("--seed", type=int, help="RNG seed (default: $HKQ_SEED or 0)")

    sp = add("adhm-check", cmd_adhm_check, "moment-map residuals and stability of ADHM data")
    sp.add_argument("--datum", help="ADHM datum JSON")
    sp.add_argument("--file", help="read the datum JSON from a file")
    sp.add_argument("--example", choices=("zero", "hand", "hand-k2", "random"),
                    help="use a built-in datum instead")
    sp.add_argument("--k", type=_pos_int, help="k for the zero/random examples")
    sp.add_argument("--r", type=_pos_int, help="r for the zero/random examples")
    sp.add_argument("--tol", type=float, default=1e-9, help="rank and residual tolerance")

    sp = add("elliptic", cmd_elliptic, "complete elliptic integrals K(k), E(k)")
    sp.add_argument("--k", type=float, required=True, help="modulus")
    return p


def _write_csv(rows: List[dict], out) -> None:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict, bool)) else v for k, v in r.items()})
    out.write(buf.getvalue())


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, rows = ns.func(ns)
        if ns.format == "csv":
            if rows is None:
                raise _Usage(f"command {ns.command} has no tabular output; use --format json")
            _write_csv(rows, sys.stdout)
        else:
            sys.stdout.write(json.dumps(payload) + "\n")
        return 0
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"hkq {ns.command}: error: {exc}\n")
        return 2
    except HKQError as exc:
        sys.stdout.write(json.dumps(exc.to_json()) + "\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
