#!/usr/bin/env python3
"""Rewrites corpus/golden/<name>.out and .err from the current sde binary.

usage: tools/regen_golden.py [path/to/sde]
Review the diff before committing: the files are the expected outputs.
"""
import pathlib
import shlex
import subprocess
import sys

root = pathlib.Path(__file__).resolve().parent.parent
corpus = root / "corpus"
golden = corpus / "golden"
binary = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else root / "build" / "sde").resolve()

for line in (golden / "cases.txt").read_text().splitlines():
    if not line.strip() or line.startswith("#"):
        continue
    name, args, code = (part.strip() for part in line.split("|"))
    run = subprocess.run([str(binary), *shlex.split(args)], cwd=corpus, capture_output=True, text=True)
    if run.returncode != int(code):
        print(f"{name}: exit {run.returncode}, expected {code}", file=sys.stderr)
    (golden / f"{name}.out").write_text(run.stdout)
    err = golden / f"{name}.err"
    if run.stderr:
        err.write_text(run.stderr)
    elif err.exists():
        err.unlink()
