"""Command line pipeline: ingest knot lists, compute invariants into a store,
and emit the comparison tables, root images and ball mapper graphs.

    python -m qknots ingest   --knots list.txt --store run/
    python -m qknots compute  --invariant J --engine skein --workers 4 --store run/
    python -m qknots report   unique --store run/
    python -m qknots roots    --invariant J --grid 256 --store run/
    python -m qknots ballmapper --invariant B1 --epsilon 40 --color-by K --store run/
    python -m qknots bench    --invariant J --max-crossings 8

The store directory holds ``records.jsonl`` (a header line naming the
conventions, then one record per knot, invariant and engine),
``timings.jsonl`` (wall times, kept apart so that records do not depend on
the machine or the worker count) and optionally ``knots.txt``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import signal
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import ballmapper as _bm
from . import roots as _roots
from . import stats as _stats
from .alexander import alexander
from .bracket import JONES_CONVENTION, colored_jones_cabled, jones
from .khovanov import EULER_CONVENTION, khovanov
from .rmatrix import a2, b1, jones_rmatrix, morse_encode
from .knotdata import KnotTable, PDError, ingest_list, load_census, parse_pd, read_text
from .laurent import BiLaurentPoly, LaurentPoly, coeff_stats

__all__ = [
    "INVARIANTS",
    "ENGINES",
    "CONVENTIONS",
    "Store",
    "evaluate_invariant",
    "compute",
    "report",
    "MissingRecordsError",
    "main",
]

log = logging.getLogger("qknots")

INVARIANTS = ("A2", "A", "B1", "J", "K", "KT1")
# first engine listed is the default
ENGINES = {
    "A2": ("rmatrix",),
    "A": ("fox", "seifert"),
    "B1": ("rmatrix", "cable"),
    "J": ("skein", "rmatrix"),
    "K": ("cube",),
    "KT1": ("cube",),
}
CONVENTIONS = {
    "A2": "A2/1 sl3 vector rep, unreduced (unknot q^-2+1+q^2), census chirality",
    "A": "A/1 symmetric under q->1/q, value 1 at q=1",
    "B1": "B1/1 sl2 3-dim rep, unreduced (unknot q^-2+1+q^2), census chirality",
    "J": "J/1 " + JONES_CONVENTION + ", unknot 1",
    "K": "K/1 rational Poincare polynomial [[q,t,c]], " + EULER_CONVENTION,
    "KT1": "KT1/1 K at t=1",
}
STORE_FORMAT = "qknots-store/1"
COST_WEIGHT = {"A2": 1.0, "A": 0.2, "B1": 3.0, "J": 0.5, "K": 4.0, "KT1": 4.0}


class MissingRecordsError(LookupError):
    def __init__(self, missing: list[tuple[str, str]]):
        self.missing = missing
        head = ", ".join(f"{k}:{i}" for k, i in missing[:10])
        more = f" (+{len(missing) - 10} more)" if len(missing) > 10 else ""
        super().__init__(f"{len(missing)} missing records: {head}{more}")


class InvocationError(ValueError):
    """Bad command line input; exit status 2."""


# evaluation ---------------------------------------------------------------

def evaluate_invariant(d, invariant: str, engine: str | None = None):
    engine = engine or ENGINES[invariant][0]
    if engine not in ENGINES.get(invariant, ()):
        raise InvocationError(f"engine {engine!r} is not available for {invariant}")
    if invariant == "J":
        return jones(d) if engine == "skein" else jones_rmatrix(d)
    if invariant == "A":
        return alexander(d, engine=engine)
    if invariant == "A2":
        return a2(d)
    if invariant == "B1":
        return b1(d) if engine == "rmatrix" else colored_jones_cabled(d)
    if invariant == "K":
        return khovanov(d)
    if invariant == "KT1":
        return khovanov(d).substitute(t=1)
    raise InvocationError(f"unknown invariant {invariant!r}")


def poly_to_json(p):
    return p.to_json()


def poly_from_json(invariant: str, obj):
    if invariant == "K":
        return BiLaurentPoly.from_json(obj)
    return LaurentPoly.from_json(obj)


# store --------------------------------------------------------------------

def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class Store:
    """Append-only record store in a directory."""

    def __init__(self, path):
        self.path = Path(path)
        self.records_file = self.path / "records.jsonl"
        self.timings_file = self.path / "timings.jsonl"
        self.knots_file = self.path / "knots.txt"
        self._records: list[dict] | None = None

    def ensure(self) -> None:
        self.path.mkdir(parents=True, exist_ok=True)
        if not self.records_file.exists():
            header = {"format": STORE_FORMAT, "conventions": CONVENTIONS}
            self.records_file.write_text(_dumps(header) + "\n", encoding="utf-8")

    def records(self) -> list[dict]:
        if self._records is None:
            out = []
            if self.records_file.exists():
                with open(self.records_file, encoding="utf-8") as f:
                    lines = f.read().splitlines()
                for line in lines[1:]:
                    if line.strip():
                        out.append(json.loads(line))
            self._records = out
        return self._records

    def keys(self) -> set[tuple[str, str, str, str]]:
        return {(r["knot"], r["invariant"], r["engine"], r["convention"]) for r in self.records()}

    def append(self, recs: Iterable[dict]) -> None:
        self.ensure()
        recs = list(recs)
        if not recs:
            return
        with open(self.records_file, "a", encoding="utf-8") as f:
            for r in recs:
                f.write(_dumps(r) + "\n")
            f.flush()
            os.fsync(f.fileno())
        if self._records is not None:
            self._records.extend(recs)

    def append_timings(self, rows: Iterable[dict]) -> None:
        self.ensure()
        with open(self.timings_file, "a", encoding="utf-8") as f:
            for r in rows:
                f.write(_dumps(r) + "\n")

    def timings(self) -> list[dict]:
        if not self.timings_file.exists():
            return []
        with open(self.timings_file, encoding="utf-8") as f:
            return [json.loads(x) for x in f if x.strip()]

    def values(self, invariant: str, knots: Sequence[str]) -> list:
        """One value per knot (census order), checking that engines agree."""
        conv = CONVENTIONS[invariant]
        found: dict[str, object] = {}
        for r in self.records():
            if r["invariant"] != invariant or r["convention"] != conv or r["status"] != "ok":
                continue
            v = poly_from_json(invariant, r["poly"])
            prev = found.get(r["knot"])
            if prev is not None and prev != v:
                raise ValueError(f"engines disagree on {invariant} of {r['knot']}")
            found[r["knot"]] = v
        missing = [(k, invariant) for k in knots if k not in found]
        if missing:
            raise MissingRecordsError(missing)
        return [found[k] for k in knots]

    def verify_kt1(self) -> list[str]:
        """Knots whose stored KT1 differs from their stored K at t = 1."""
        k = {r["knot"]: r for r in self.records() if r["invariant"] == "K" and r["status"] == "ok"}
        bad = []
        for r in self.records():
            if r["invariant"] == "KT1" and r["status"] == "ok" and r["knot"] in k:
                kt1 = BiLaurentPoly.from_json(k[r["knot"]]["poly"]).substitute(t=1)
                if kt1 != LaurentPoly.from_json(r["poly"]):
                    bad.append(r["knot"])
        return bad


# compute ------------------------------------------------------------------

class _Timeout(Exception):
    pass


@contextmanager
def _deadline(seconds: float | None):
    if not seconds or not hasattr(signal, "setitimer"):
        yield
        return

    def handler(signum, frame):
        raise _Timeout()

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _run_job(job):
    idx, name, pd, invariant, engine, timeout = job
    t0 = time.perf_counter()
    try:
        d = parse_pd(pd, id=name)
        with _deadline(timeout):
            val = evaluate_invariant(d, invariant, engine)
    except _Timeout:
        return idx, "timeout", None, time.perf_counter() - t0, f"timeout after {timeout}s"
    except Exception as exc:  # reported per knot, the batch continues
        return idx, "error", None, time.perf_counter() - t0, f"{type(exc).__name__}: {exc}"
    return idx, "ok", poly_to_json(val), time.perf_counter() - t0, ""


def compute(table: KnotTable, invariants: Sequence[str], engines: Sequence[str] | None,
            store: Store, workers: int = 1, timeout: float | None = None) -> tuple[list[dict], list[str]]:
    """Compute every missing record; returns ``(new records, failure messages)``.

    Jobs are handed out longest-first, but records are committed in census
    order, so the store content does not depend on ``workers``.
    """
    store.ensure()
    have = store.keys()
    jobs = []
    for name, d in table:
        for inv in invariants:
            for eng in (engines or (ENGINES[inv][0],)):
                if eng not in ENGINES[inv]:
                    raise InvocationError(f"engine {eng!r} is not available for {inv}")
                if (name, inv, eng, CONVENTIONS[inv]) in have:
                    continue
                jobs.append((len(jobs), name, d.to_pd(), inv, eng, timeout))
    if not jobs:
        return [], []
    crossings = {name: d.n for name, d in table}
    by_cost = sorted(jobs, key=lambda j: (-COST_WEIGHT[j[3]] * 2.0 ** crossings[j[1]], j[0]))

    done: dict[int, tuple] = {}
    new: list[dict] = []
    failures: list[str] = []
    next_commit = 0

    def commit():
        nonlocal next_commit
        batch, times = [], []
        while next_commit in done:
            idx, status, poly, secs, msg = done.pop(next_commit)
            _, name, _, inv, eng, _ = jobs[idx]
            if status == "error":
                failures.append(f"{name} {inv}/{eng}: {msg}")
                log.error("%s %s/%s failed: %s", name, inv, eng, msg)
            else:
                rec = {"knot": name, "n": crossings[name], "invariant": inv, "engine": eng,
                       "convention": CONVENTIONS[inv], "status": status, "poly": poly}
                batch.append(rec)
                if status == "timeout":
                    failures.append(f"{name} {inv}/{eng}: {msg}")
                    log.warning("%s %s/%s timed out", name, inv, eng)
            times.append({"knot": name, "n": crossings[name], "invariant": inv,
                          "engine": eng, "seconds": round(secs, 6), "status": status})
            next_commit += 1
        store.append(batch)
        store.append_timings(times)
        new.extend(batch)

    if workers <= 1:
        for job in by_cost:
            res = _run_job(job)
            done[res[0]] = res
            commit()
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_job, job) for job in by_cost]
            for fut in as_completed(futures):
                res = fut.result()
                done[res[0]] = res
                commit()
    return new, failures


# reports ------------------------------------------------------------------

COLS_ALL = ("A2", "A", "B1", "J", "K", "KT1")
COLS_ONE_VAR = ("A2", "A", "B1", "J", "KT1")
HEAD6 = ["n", "A2", "Alexander", "B1", "Jones", "Khovanov", "KhovanovT1"]
HEAD5 = ["n", "A2", "Alexander", "B1", "Jones", "Khovanovt1"]
HEAD_UNIQUE = ["n", "A2", "A", "B1", "J", "K", "KT1", "J+KT1", "All"]

COEFF_TABLES = {
    "max_coefficient": ("coeff", 0, COLS_ALL, HEAD6),
    "max_coefficient_sum": ("ev", 0, COLS_ALL, HEAD6),
    "average_coefficient_sum": ("ev_av", 4, COLS_ALL, HEAD6[:6] + ["Khovanovt1"]),
    "max_average_coefficient": ("coeff_av", 4, COLS_ONE_VAR, HEAD5),
}
SPAN_TABLES = {
    "max_span": ("span", 0, COLS_ONE_VAR, HEAD5),
    "average_span": ("span_av", 4, COLS_ONE_VAR, HEAD5),
}
ROOT_TABLES = {
    "max_abs_root": "max_abs",
    "pure_roots": "pure_pct",
    "annulus_roots": "annulus_pct",
}
REPORTS = ("unique", "pairs", "coeffs", "spans", "roots", "timing")


def _write_csv(path: Path, header, rows) -> Path:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def _columns(store: Store, table: KnotTable, invs) -> dict[str, list]:
    names = table.ids()
    out, missing = {}, []
    for inv in invs:
        try:
            out[inv] = store.values(inv, names)
        except MissingRecordsError as e:
            missing.extend(e.missing)
    if missing:
        raise MissingRecordsError(missing)
    return out


def _combined(cols: dict, key: str) -> list:
    if key == "J+KT1":
        return list(zip(cols["J"], cols["KT1"]))
    if key == "All":
        return list(zip(cols["A2"], cols["A"], cols["B1"], cols["J"], cols["K"]))
    return cols[key]


def _rows(table: KnotTable):
    ns = [d.n for _, d in table]
    return ns, sorted(set(ns))


def report(store: Store, table: KnotTable, which: str, out_dir, trials: int = 0,
           seed: int = 0, cap: int = 10_000_000) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ns, rows = _rows(table)
    written = []
    if which == "unique":
        cols = _columns(store, table, COLS_ALL)
        body = []
        for n in rows:
            line = [n]
            for key in HEAD_UNIQUE[1:]:
                vals = [v for v, m in zip(_combined(cols, key), ns) if m <= n]
                pct = _stats.distinct_percentage(_stats.ClassPartition.from_values(vals))
                line.append(_stats.format_truncated(pct, 1))
            body.append(line)
        written.append(_write_csv(out / "unique_percent.csv", HEAD_UNIQUE, body))
    elif which == "pairs":
        cols = _columns(store, table, COLS_ALL)
        exact = {proto: [] for proto in _stats.PAIR_PROTOCOLS}
        sampled = []
        for n in rows:
            if sum(1 for m in ns if m <= n) < 2:
                continue
            parts = {}
            for key in HEAD_UNIQUE[1:]:
                vals = [v for v, m in zip(_combined(cols, key), ns) if m <= n]
                parts[key] = _stats.ClassPartition.from_values(vals)
            for proto in _stats.PAIR_PROTOCOLS:
                line = [n]
                for key, part in parts.items():
                    e = _stats.pair_expectation_exact(part, proto)
                    line.append(_stats.format_truncated(e, 1))
                    if trials:
                        est = _stats.pair_expectation_sampled(part, trials=trials, cap=cap,
                                                              seed=seed, protocol=proto)
                        sampled.append([n, key, proto, _stats.format_truncated(est.mean, 1),
                                        f"{est.stderr:.4f}", f"{est.cap_rate:.4f}",
                                        _stats.format_truncated(e, 1), trials, seed])
                exact[proto].append(line)
        written.append(_write_csv(out / "pair_expectation.csv", HEAD_UNIQUE, exact["distinct"]))
        written.append(_write_csv(out / "pair_expectation_replacement.csv", HEAD_UNIQUE,
                                  exact["replacement"]))
        if trials:
            written.append(_write_csv(out / "pair_expectation_sampled.csv",
                                      ["n", "invariant", "protocol", "mean", "stderr", "cap_rate",
                                       "exact", "trials", "seed"], sampled))
    elif which in ("coeffs", "spans"):
        tables = COEFF_TABLES if which == "coeffs" else SPAN_TABLES
        cols = _columns(store, table, COLS_ALL if which == "coeffs" else COLS_ONE_VAR)
        cache = {}
        for fname, (stat, digits, invs, head) in tables.items():
            body = []
            for n in rows:
                line = [n]
                for inv in invs:
                    key = (inv, n)
                    if key not in cache:
                        vals = [v for v, m in zip(cols[inv], ns) if m <= n]
                        cache[key] = _stats.aggregates(vals, want_span=inv != "K")
                    line.append(_stats.format_truncated(cache[key][stat], digits))
                body.append(line)
            written.append(_write_csv(out / f"{fname}.csv", head, body))
    elif which == "roots":
        cols = _columns(store, table, COLS_ONE_VAR)
        per_knot = {}
        failures = 0
        for inv in COLS_ONE_VAR:
            rs = []
            for v in cols[inv]:
                try:
                    rs.append(_roots.poly_roots(v).roots)
                except _roots.RootFindingError:
                    failures += 1
                    rs.append(None)
            per_knot[inv] = rs
        if failures:
            log.warning("%d polynomials excluded: root finding did not converge", failures)
        stats_cache = {}
        for inv in COLS_ONE_VAR:
            for n in rows:
                sel = [r for r, m in zip(per_knot[inv], ns) if m <= n and r is not None]
                stats_cache[(inv, n)] = _roots.classify(np.concatenate(sel) if sel else [])
        for fname, attr in ROOT_TABLES.items():
            body = [[n] + [_stats.format_truncated(getattr(stats_cache[(inv, n)], attr), 4)
                           for inv in COLS_ONE_VAR] for n in rows]
            written.append(_write_csv(out / f"{fname}.csv", HEAD5, body))
    elif which == "timing":
        written.append(_timing_csv(store.timings(), out / "timing.csv"))
    else:
        raise InvocationError(f"unknown report {which!r}")
    return written


def _timing_csv(rows: list[dict], path: Path) -> Path:
    groups: dict[tuple, list[float]] = {}
    for r in rows:
        if r.get("status", "ok") != "ok":
            continue
        groups.setdefault((r["invariant"], r["engine"], r["n"]), []).append(r["seconds"])
    body = []
    for (inv, eng, n), xs in sorted(groups.items(), key=lambda kv: (kv[0][2], INVARIANTS.index(kv[0][0]), kv[0][1])):
        xs = sorted(xs)
        q = np.quantile(xs, [0.0, 0.25, 0.5, 0.75, 1.0])
        body.append([n, inv, eng, len(xs), f"{statistics.fmean(xs):.6f}"] + [f"{v:.6f}" for v in q])
    return _write_csv(path, ["n", "invariant", "engine", "count", "mean", "min", "q1", "median", "q3", "max"], body)


# command line -------------------------------------------------------------

def _load_table(args, store: Store | None, stored_only: bool = False) -> KnotTable:
    """Knots to work on: ``--knots``, else the store's list, else the census.

    With ``stored_only`` the census is cut down to the knots that already
    have records in the store.
    """
    if getattr(args, "knots", None):
        with read_text(args.knots) as f:
            table = ingest_list(f)
    elif store is not None and store.knots_file.exists():
        with open(store.knots_file, encoding="utf-8") as f:
            table = ingest_list(f)
    elif stored_only and store is not None and store.records():
        have = {r["knot"] for r in store.records()}
        top = max(r["n"] for r in store.records())
        if args.max_crossings is not None:
            top = min(top, args.max_crossings)
        census = load_census(top)
        table = KnotTable([(k, d) for k, d in census if k in have])
    else:
        table = load_census(args.max_crossings)
    if args.max_crossings is not None:
        table = table.up_to(args.max_crossings)
    return table


def _invariant_list(text: str) -> list[str]:
    if text == "all":
        return list(INVARIANTS)
    invs = [s.strip() for s in text.split(",") if s.strip()]
    for inv in invs:
        if inv not in INVARIANTS:
            raise InvocationError(f"unknown invariant {inv!r}; choose from {', '.join(INVARIANTS)}")
    return invs


def _cmd_ingest(args) -> int:
    store = Store(args.store)
    table = _load_table(args, None)
    store.ensure()
    with open(store.knots_file, "w", encoding="utf-8") as f:
        for name, d in table:
            f.write(f"{name};{d.to_pd()}\n")
    print(table.summary())
    for err in table.errors:
        print(f"rejected: {err}", file=sys.stderr)
    return 1 if table.errors else 0


def _cmd_compute(args) -> int:
    store = Store(args.store)
    table = _load_table(args, store)
    invs = _invariant_list(args.invariant)
    engines = None
    if args.engine:
        engines = ENGINES[invs[0]] if args.engine == "all" else [e.strip() for e in args.engine.split(",")]
        if len(invs) != 1 and args.engine != "all":
            raise InvocationError("--engine needs a single --invariant")
    for inv in invs:
        for eng in engines or (ENGINES[inv][0],):
            if eng not in ENGINES[inv] and args.engine != "all":
                raise InvocationError(f"engine {eng!r} is not available for {inv}")
    if args.engine == "all":
        new, fails = [], []
        for inv in invs:
            a, b = compute(table, [inv], ENGINES[inv], store, args.workers, args.timeout_secs)
            new += a
            fails += b
    else:
        new, fails = compute(table, invs, engines, store, args.workers, args.timeout_secs)
    if args.report_width:
        print(_write_widths(table, store.path / "widths.csv"))
    print(f"{len(new)} new records, {len(fails)} failures")
    for f in fails:
        print(f"failed: {f}", file=sys.stderr)
    return 1 if fails else 0


def _cmd_report(args) -> int:
    store = Store(args.store)
    table = _load_table(args, store, stored_only=True)
    out = Path(args.out) if args.out else store.path / "reports"
    whats = REPORTS if args.which == "all" else [args.which]
    status = 0
    for w in whats:
        try:
            for p in report(store, table, w, out, trials=args.trials, seed=args.seed, cap=args.cap):
                print(p)
        except MissingRecordsError as e:
            print(f"{w}: {e}", file=sys.stderr)
            status = 1
    bad = store.verify_kt1()
    if bad:
        print(f"KT1 differs from K at t=1 for: {', '.join(bad)}", file=sys.stderr)
        status = 1
    return status


def _cmd_roots(args) -> int:
    store = Store(args.store)
    table = _load_table(args, store, stored_only=True)
    inv = args.invariant
    if inv == "K":
        raise InvocationError("roots need a one-variable invariant")
    vals = store.values(inv, table.ids())
    rs = []
    failed = 0
    for v in vals:
        try:
            rs.append(_roots.poly_roots(v).roots)
        except _roots.RootFindingError:
            failed += 1
    z = np.concatenate(rs) if rs else np.zeros(0, dtype=complex)
    bounds = "auto" if args.bounds == "auto" else float(args.bounds)
    grid, box = _roots.density_grid(z, bounds, args.grid)
    out = Path(args.out) if args.out else store.path / "roots"
    out.mkdir(parents=True, exist_ok=True)
    stem = f"roots_{inv}_n{max((d.n for _, d in table), default=0)}"
    _roots.write_pgm(grid, out / f"{stem}.pgm")
    _roots.write_grid_csv(grid, out / f"{stem}.csv")
    st = _roots.classify(z)
    print(f"{inv}: {st.count} roots, max |z| {_stats.format_truncated(st.max_abs, 4)}, "
          f"pure {_stats.format_truncated(st.pure_pct, 4)}%, "
          f"annulus {_stats.format_truncated(st.annulus_pct, 4)}%, box {box}")
    if failed:
        print(f"{failed} polynomials excluded (no convergence)", file=sys.stderr)
    return 1 if failed else 0


def _cmd_ballmapper(args) -> int:
    store = Store(args.store)
    table = _load_table(args, store, stored_only=True)
    names = table.ids()
    vals = store.values(args.invariant, names)
    pts = _bm.points_from_polys(vals)
    out = Path(args.out) if args.out else store.path / "ballmapper"
    out.mkdir(parents=True, exist_ok=True)
    if args.sweep:
        eps = [float(x) for x in args.sweep.split(",")]
        rows = _bm.eps_sweep(pts, eps)
        p = _write_csv(out / f"sweep_{args.invariant}.csv", ["eps", "vertices", "edges"], rows)
        print(p)
        return 0
    if args.epsilon is None:
        raise InvocationError("--epsilon (or --sweep) is required")
    g = _bm.build(pts, args.epsilon)
    if args.color_by:
        cvals = store.values(args.color_by, names)
        _bm.color_by(g, [coeff_stats(v, want_span=False).abs_sum for v in cvals])
    stem = f"ballmapper_{args.invariant}_eps{args.epsilon:g}"
    (out / f"{stem}.json").write_text(_bm.to_json(g, names), encoding="utf-8")
    (out / f"{stem}.svg").write_text(_bm.to_svg(g), encoding="utf-8")
    print(f"{g.n_vertices} vertices, {g.n_edges} edges -> {out / stem}.json/.svg")
    return 0


def _write_widths(table: KnotTable, path: Path) -> Path:
    """Peak strand count of the Morse word used by the R-matrix engine, per knot."""
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [[name, d.n, morse_encode(d).peak_width] for name, d in table]
    return _write_csv(path, ["knot", "n", "peak_width"], rows)


def _cmd_bench(args) -> int:
    table = _load_table(args, None)
    invs = _invariant_list(args.invariant)
    rows = []
    for inv in invs:
        engines = ENGINES[inv] if args.engine in (None, "all") else [args.engine]
        for eng in engines:
            for name, d in table:
                t0 = time.perf_counter()
                for _ in range(args.repeat):
                    evaluate_invariant(d, inv, eng)
                secs = (time.perf_counter() - t0) / args.repeat
                rows.append({"knot": name, "n": d.n, "invariant": inv, "engine": eng, "seconds": secs})
    out = Path(args.out) if args.out else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    p = _timing_csv(rows, out / "bench_timing.csv")
    if args.report_width:
        print(_write_widths(table, out / "widths.csv"))
    print(p.read_text(encoding="utf-8"), end="")
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--knots", help="knot list (name;PD per line, or bare PD codes); default: bundled census")
    common.add_argument("--max-crossings", type=int, default=None)
    common.add_argument("--store", default="qknots-store", help="store directory")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timeout-secs", type=float, default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="qknots", description="Quantum knot invariants and their statistics.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("ingest", parents=[common], help="check a knot list and copy it into the store")

    c = sub.add_parser("compute", parents=[common], help="compute missing invariant records")
    c.add_argument("--invariant", default="all", help="comma list of A2,A,B1,J,K,KT1 or 'all'")
    c.add_argument("--engine", default=None, help="engine name(s) or 'all'")
    c.add_argument("--report-width", action="store_true", help="write peak Morse widths per knot")

    r = sub.add_parser("report", parents=[common], help="write the comparison tables as CSV")
    r.add_argument("which", choices=REPORTS + ("all",))
    r.add_argument("--out", default=None)
    r.add_argument("--trials", type=int, default=0, help="also sample pair expectations")
    r.add_argument("--cap", type=int, default=10_000_000)

    o = sub.add_parser("roots", parents=[common], help="root density image of one invariant")
    o.add_argument("--invariant", required=True, choices=COLS_ONE_VAR)
    o.add_argument("--grid", type=int, default=256)
    o.add_argument("--bounds", default="auto", help="'auto' or a half-width c")
    o.add_argument("--out", default=None)

    b = sub.add_parser("ballmapper", parents=[common], help="ball mapper graph of coefficient vectors")
    b.add_argument("--invariant", required=True, choices=INVARIANTS)
    b.add_argument("--epsilon", type=float, default=None)
    b.add_argument("--color-by", default=None, choices=INVARIANTS)
    b.add_argument("--sweep", default=None, help="comma list of eps values")
    b.add_argument("--out", default=None)

    t = sub.add_parser("bench", parents=[common], help="time the engines per knot")
    t.add_argument("--invariant", default="J")
    t.add_argument("--engine", default=None)
    t.add_argument("--repeat", type=int, default=1)
    t.add_argument("--report-width", action="store_true", help="write peak Morse widths per knot")
    t.add_argument("--out", default=None)
    return p


COMMANDS = {
    "ingest": _cmd_ingest,
    "compute": _cmd_compute,
    "report": _cmd_report,
    "roots": _cmd_roots,
    "ballmapper": _cmd_ballmapper,
    "bench": _cmd_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    try:
        return COMMANDS[args.command](args)
    except (InvocationError, PDError, FileNotFoundError) as e:
        print(f"qknots: {e}", file=sys.stderr)
        return 2
    except MissingRecordsError as e:
        print(f"qknots: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
