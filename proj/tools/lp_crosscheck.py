#!/usr/bin/env python3
"""Solve exported LP files with scipy's MILP solver and compare objectives
against `mmd2d milp solve` on the paper-6ue fixture.

usage: lp_crosscheck.py MMD2D_BINARY WORKDIR
"""

import json
import re
import subprocess
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

SECTIONS = {
    "minimize": "obj", "minimum": "obj", "min": "obj",
    "maximize": "obj", "maximum": "obj", "max": "obj",
    "subject to": "rows", "such that": "rows", "st": "rows", "s.t.": "rows",
    "bounds": "bounds", "binaries": "bin", "binary": "bin", "bin": "bin",
    "generals": "int", "general": "int", "gen": "int", "end": "end",
}


def parse_expr(tokens, index):
    """Linear expression from tokens; returns {var: coef}."""
    terms = {}
    sign, coef = 1.0, None
    for tok in tokens:
        if tok in "+-":
            sign = -1.0 if tok == "-" else 1.0
            continue
        try:
            coef = float(tok)
            continue
        except ValueError:
            pass
        index.setdefault(tok, len(index))
        terms[tok] = terms.get(tok, 0.0) + sign * (1.0 if coef is None else coef)
        sign, coef = 1.0, None
    return terms


def parse_lp(text):
    index, rows, bounds, integer = {}, [], {}, set()
    section, minimize, objective, pending = None, True, {}, []

    def flush():
        nonlocal objective
        if not pending:
            return
        body = " ".join(pending)
        pending.clear()
        body = body.split(":", 1)[1] if ":" in body else body
        toks = re.findall(r"[<>=]=?|[+-]|[^\s+\-<>=]+", body)
        if section == "obj":
            objective = parse_expr(toks, index)
            return
        op = next(i for i, t in enumerate(toks) if t[0] in "<>=")
        rhs = float("".join(toks[op + 1:]))
        rows.append((parse_expr(toks[:op], index), toks[op][0], rhs))

    for raw in text.splitlines():
        line = raw.split("\\", 1)[0].strip()
        if not line:
            continue
        key = line.lower()
        if key in SECTIONS:
            flush()
            section = SECTIONS[key]
            if section == "obj":
                minimize = key.startswith("min")
            continue
        if section in ("obj", "rows"):
            if re.match(r"^[A-Za-z_][\w.]*\s*:", line):
                flush()
            pending.append(line)
        elif section == "bounds":
            toks = line.split()
            if len(toks) == 5:
                bounds[toks[2]] = (float(toks[0]), float(toks[4]))
            elif len(toks) == 2 and toks[1] == "free":
                bounds[toks[0]] = (-np.inf, np.inf)
            elif len(toks) == 3 and toks[1] == ">=":
                bounds[toks[0]] = (float(toks[2]), bounds.get(toks[0], (0, np.inf))[1])
            elif len(toks) == 3 and toks[1] == "<=":
                bounds[toks[0]] = (bounds.get(toks[0], (0, np.inf))[0], float(toks[2]))
            else:
                raise ValueError("bad bound: " + line)
            index.setdefault(toks[2] if len(toks) == 5 else toks[0], len(index))
        elif section in ("bin", "int"):
            for name in line.split():
                index.setdefault(name, len(index))
                integer.add(name)
                if section == "bin":
                    bounds[name] = (0.0, 1.0)
    flush()
    return index, rows, bounds, integer, objective, minimize


def solve(text):
    index, rows, bounds, integer, objective, minimize = parse_lp(text)
    n = len(index)
    c = np.zeros(n)
    for name, coef in objective.items():
        c[index[name]] = coef if minimize else -coef
    a = np.zeros((len(rows), n))
    lo = np.full(len(rows), -np.inf)
    hi = np.full(len(rows), np.inf)
    for r, (terms, sense, rhs) in enumerate(rows):
        for name, coef in terms.items():
            a[r, index[name]] = coef
        if sense in "<=":
            hi[r] = rhs
        if sense in ">=":
            lo[r] = rhs
    lb = np.zeros(n)
    ub = np.full(n, np.inf)
    for name, (l, u) in bounds.items():
        lb[index[name]], ub[index[name]] = l, u
    kinds = np.zeros(n)
    for name in integer:
        kinds[index[name]] = 1
    res = milp(c, constraints=LinearConstraint(a, lo, hi), integrality=kinds,
               bounds=Bounds(lb, ub))
    if not res.success:
        raise RuntimeError("solver failed: " + res.message)
    return res.fun if minimize else -res.fun


def main():
    binary, work = sys.argv[1], Path(sys.argv[2])
    work.mkdir(parents=True, exist_ok=True)
    run = lambda *args: subprocess.run([binary, *args], check=True, capture_output=True,
                                       text=True).stdout
    run("fixture", "paper-6ue", "--out", str(work))
    rates, paths = str(work / "rates.txt"), str(work / "paths.json")
    failed = 0
    for d in range(1, 9):
        lp = run("milp", "export", "--rates", rates, "--paths", paths, "-d", str(d))
        exact = json.loads(run("milp", "solve", "--rates", rates, "--paths", paths, "-d", str(d)))
        got = solve(lp)
        ok = abs(got - exact["objective"]) < 1e-6
        failed += 0 if ok else 1
        print(f"d={d}: scipy {got:g}, branch and bound {exact['objective']}",
              "ok" if ok else "MISMATCH")
    k3 = solve(run("milp", "export", "--rates", rates, "--paths", paths, "-d", "6", "-K", "3"))
    print(f"d=6 K=3: scipy {k3:g}")
    if abs(k3 - 8) > 1e-6:
        failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
