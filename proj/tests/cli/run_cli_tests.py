#!/usr/bin/env python3
"""Golden-output tests for the mlsparse command line.

usage: run_cli_tests.py MLSPARSE_BINARY [--update]
"""

import filecmp
import os
import subprocess
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")
GOLDEN = os.path.join(HERE, "golden")


def d(name):
    return os.path.join(DATA, name)


# name, argv, expected exit code
CASES = [
    ("gen", ["gen", "--n", "8", "--seed", "7"], 0),
    ("gen_levels", ["gen", "--n", "9", "--seed", "3", "--ell", "2", "--levels-out", "{tmp}/lv.txt"], 0),
    ("closure", ["closure", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"), "--level", "1"], 0),
    ("closure_json", ["--json", "closure", "--graph", d("cycle4.txt"), "--terminals", "1,3"], 0),
    ("spanner", ["spanner", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"), "--level", "1", "--f", "x2"], 0),
    ("spanner_greedy", ["spanner", "--graph", d("cycle4.txt"), "--greedy", "3"], 0),
    ("steiner", ["steiner", "--graph", d("er9.txt"), "--terminals", "0,1,4,5"], 0),
    ("steiner_exact", ["steiner", "--graph", d("er9.txt"), "--terminals", "0,1,4,5", "--exact"], 0),
    ("exact", ["exact", "--graph", d("tri.txt"), "--pairs", "1,3", "--f", "id"], 0),
    ("exact_json", ["exact", "--graph", d("cycle4.txt"), "--all-pairs", "1,2,3,4", "--f", "x3", "--json"], 0),
    ("multilevel_round", ["multilevel", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"),
                          "--f", "x2", "--algorithm", "round", "--q-preset", "bu", "--subroutine", "oracle"], 0),
    ("multilevel_custom", ["multilevel", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"),
                           "--f", "x2", "--algorithm", "round", "--q-preset", "custom", "--q", "1",
                           "--subroutine", "metric-closure"], 0),
    ("multilevel_composite", ["multilevel", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"),
                              "--f", "mult:1.4", "--algorithm", "composite", "--json"], 0),
    ("multilevel_closure", ["multilevel", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"),
                            "--f", "x2", "--algorithm", "closure"], 0),
    ("multilevel_exact", ["multilevel", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"),
                          "--f", "x2", "--algorithm", "exact"], 0),
    ("multilevel_steiner", ["multilevel", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"),
                            "--kind", "steiner", "--algorithm", "composite"], 0),
    ("ratio", ["ratio", "--ell", "2", "--g", "linear"], 0),
    ("ratio_table", ["ratio", "--ell", "6", "--table"], 0),
    ("ratio_json", ["--json", "ratio", "--ell", "3"], 0),
    ("experiment", ["experiment", "--n", "8", "--ell", "2", "--t", "2", "--trials", "2", "--seed", "3"], 0),
    ("plot", ["plot", "--csv", d(os.path.join("golden", "three_rows.csv")), "--kind", "line", "--group-by", "t"], 0),
    ("export_ilp", ["export-ilp", "--graph", d("tri.txt"), "--pairs", "1,3", "--f", "id"], 0),
    ("err_unknown_subcommand", ["frobnicate"], 2),
    ("err_missing_pairs", ["exact", "--graph", d("tri.txt")], 2),
    ("err_bad_q", ["multilevel", "--graph", d("er9.txt"), "--levels", d("er9_levels.txt"), "--q-preset", "custom"], 2),
    ("err_missing_file", ["exact", "--graph", d("no_such_file.txt"), "--pairs", "1,2"], 1),
    ("err_exact_guard", ["exact", "--graph", d("er9.txt"), "--all-pairs", "0,1,4", "--max-edges", "5"], 1),
]

SUBCOMMANDS = ["gen", "closure", "spanner", "steiner", "exact", "multilevel", "ratio", "experiment", "plot",
               "export-ilp"]


def run(binary, argv, tmp, env=None):
    argv = [a.replace("{tmp}", tmp) for a in argv]
    return subprocess.run([binary] + argv, capture_output=True, text=True, env=env)


def main():
    binary = os.path.abspath(sys.argv[1])
    update = "--update" in sys.argv
    failures = []
    with tempfile.TemporaryDirectory() as tmp:
        for name, argv, code in CASES:
            p = run(binary, argv, tmp)
            if p.returncode != code:
                failures.append(f"{name}: exit {p.returncode}, expected {code}\n{p.stderr}")
                continue
            if code != 0:
                if not p.stderr.strip():
                    failures.append(f"{name}: no error message")
                continue
            path = os.path.join(GOLDEN, name + ".out")
            if update:
                with open(path, "w") as f:
                    f.write(p.stdout)
            elif not os.path.exists(path):
                failures.append(f"{name}: missing golden file")
            else:
                with open(path) as f:
                    if f.read() != p.stdout:
                        failures.append(f"{name}: output differs from {path}")

        for sub in SUBCOMMANDS:
            p = run(binary, [sub, "--help"], tmp)
            if p.returncode != 0 or "Usage" not in p.stdout:
                failures.append(f"{sub} --help failed")

        # Files written with --out are identical across runs and to stdout.
        a, b = os.path.join(tmp, "a.txt"), os.path.join(tmp, "b.txt")
        run(binary, ["gen", "--n", "8", "--seed", "7", "--out", a], tmp)
        run(binary, ["gen", "--n", "8", "--seed", "7", "--out", b], tmp)
        if not filecmp.cmp(a, b, shallow=False):
            failures.append("gen --out not deterministic")
        if os.path.exists(a + ".tmp"):
            failures.append("temporary file left behind")
        with open(a) as f:
            if f.read() != run(binary, ["gen", "--n", "8", "--seed", "7"], tmp).stdout:
                failures.append("gen --out differs from stdout")

        # The seed falls back to MLSPARSE_SEED.
        env = dict(os.environ, MLSPARSE_SEED="7")
        if run(binary, ["gen", "--n", "8"], tmp, env).stdout != run(binary, ["gen", "--n", "8", "--seed", "7"],
                                                                     tmp).stdout:
            failures.append("MLSPARSE_SEED not honoured")

        # Experiment CSV does not depend on the worker count.
        grid = ["experiment", "--n", "8,10", "--ell", "2,3", "--t", "1.4,2", "--trials", "2", "--seed", "5"]
        one = run(binary, grid, tmp).stdout
        three = run(binary, grid + ["--jobs", "3"], tmp).stdout
        if one != three:
            failures.append("experiment output depends on --jobs")
        with open(os.path.join(DATA, "golden", "desk_small.csv")) as f:
            if f.read() != one:
                failures.append("experiment output differs from desk_small.csv")

    for f in failures:
        print("FAIL", f)
    print(f"{len(CASES)} golden cases, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
