#!/usr/bin/env python3
"""Run the CLI on a fixed set of commands and validate each document against its schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

CASES = [
    ("verify_report", 0, ["verify", "all"]),
    ("verify_report", 0, ["verify", "structure", "kz_scalar", "--m", "2", "--n", "1"]),
    ("module", 0, ["module", "build", "--m", "1", "--n", "1", "--partition", "2,1"]),
    ("module", 0, ["module", "build", "--kind", "natural", "--m", "2", "--n", "1", "--central", "--p", "1"]),
    ("hamiltonian", 0, ["hamiltonian", "--m", "1", "--n", "1", "--natural", "3", "--mu", "2,1", "--z", "0,1,5/2"]),
    ("spectrum", 0, ["spectrum", "--m", "1", "--n", "1", "--natural", "2", "--mu", "1,1", "--z", "0,1"]),
    ("duality", 0, ["duality", "check", "--partitions", "1;1;1", "--m", "1", "--n", "1", "--points", "2"]),
    ("duality", 0, ["duality", "cubic", "--partitions", "1;1", "--mu", "1,1", "--z", "0,1"]),
    ("kz_solution", 0, ["kz", "solve", "--m", "1", "--n", "1", "--natural", "2", "--mu", "1,1",
                        "--path", "[[0,1],[0,2],[[0,0],[3,1]]]"]),
    ("error", 2, ["verify", "all", "--ell", "9"]),
    ("error", 2, ["module", "build", "--m", "1", "--n", "1"]),
]


def registry(schema_dir):
    resources = []
    for p in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(p.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


def main():
    cli, schema_dir = sys.argv[1], Path(sys.argv[2])
    reg = registry(schema_dir)
    failures = 0
    with tempfile.TemporaryDirectory() as cache:
        env = {"GAUDIN_CACHE_DIR": cache, "PATH": "/usr/bin:/bin"}
        for name, want_exit, args in CASES:
            schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
            proc = subprocess.run([cli] + args, capture_output=True, text=True, env=env)
            problems = []
            if proc.returncode != want_exit:
                problems.append(f"exit {proc.returncode}, expected {want_exit}")
            try:
                doc = json.loads(proc.stdout)
                validator = Draft202012Validator(schema, registry=reg)
                problems += [f"{'/'.join(map(str, e.path))}: {e.message}" for e in validator.iter_errors(doc)][:5]
            except json.JSONDecodeError as e:
                problems.append(f"not JSON: {e}")
            status = "ok" if not problems else "FAIL"
            print(f"{status:4} {name:14} {' '.join(args)}")
            for p in problems:
                print(f"     {p}")
            failures += bool(problems)

        proc = subprocess.run([cli, "verify", "all", "--no-such-flag"], capture_output=True, text=True, env=env)
        ok = proc.returncode == 2
        print(f"{'ok' if ok else 'FAIL':4} {'usage':14} unknown flag exits 2 (got {proc.returncode})")
        failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
