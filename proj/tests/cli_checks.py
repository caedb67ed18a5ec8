"""CLI behaviour checks: exit codes, report shapes, schemas, determinism.

Usage: cli_checks.py <randers-iso> <docs-dir> <check-name>
"""

import csv
import io
import json
import math
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
import referencing

EXE, DOCS, CHECK = sys.argv[1], pathlib.Path(sys.argv[2]), sys.argv[3]


def run(*args):
    return subprocess.run([EXE, *args], capture_output=True, text=True)


def expect(cond, msg):
    if not cond:
        raise SystemExit("FAILED: " + msg)


def split_csv(text):
    comments = [l for l in text.splitlines() if l.startswith("#")]
    body = "\n".join(l for l in text.splitlines() if not l.startswith("#"))
    return comments, list(csv.DictReader(io.StringIO(body)))


def validate(doc, schema_name):
    registry = referencing.Registry().with_resource(
        "config.schema.json",
        referencing.Resource.from_contents(json.loads((DOCS / "config.schema.json").read_text())),
    )
    schema = json.loads((DOCS / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)


def certificate():
    p = run("certificate", "--a", "0.5", "--b", "0.3", "--form", "bh")
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    doc = json.loads(p.stdout)
    validate(doc, "certificate.schema.json")
    expect(doc["pass"] is True, "certificate did not pass")
    expect(doc["config"]["command"] == "certificate", "config echo missing")


def certificate_lambda():
    p = run("certificate", "--a", "0.5", "--b", "0", "--form", "ht")
    expect(p.returncode == 0, f"exit {p.returncode}")
    expect(abs(json.loads(p.stdout)["lambda"] + 0.8) <= 1e-12, "lambda != -0.8")


def bad_b():
    p = run("certificate", "--b", "1.2")
    expect(p.returncode == 2, f"exit {p.returncode}")
    expect("b < 1" in p.stderr, "message does not name b < 1: " + p.stderr)


def usage_errors():
    for args in ([], ["certificate", "--bogus"], ["perturb", "--form", "xyz"],
                 ["perturb", "--n", "1000"], ["conjugate", "--a", "1.5"], ["frobnicate"]):
        p = run(*args)
        expect(p.returncode == 2, f"{args}: exit {p.returncode}")
    expect(run("--help").returncode == 0, "--help should exit 0")


def perturb():
    p = run("perturb", "--a", "0.5", "--b", "0.3", "--form", "bh")
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    comments, rows = split_csv(p.stdout)
    expect(len(rows) == 200, f"{len(rows)} rows")
    expect(list(rows[0].keys()) == ["index", "a0_matched", "length", "area", "delta_area", "deficit"],
           "columns")
    expect(all(float(r["delta_area"]) < -1e-12 for r in rows), "area did not drop")
    config = json.loads(comments[0].split(":", 1)[1])
    expect(config["seed"] == 42 and config["trials"] == 200, "config echo")


def perturb_zero():
    p = run("perturb", "--epsilon", "0", "--trials", "5")
    expect(p.returncode == 0, f"exit {p.returncode}")
    _, rows = split_csv(p.stdout)
    expect(all(abs(float(r["delta_area"])) <= 1e-12 for r in rows), "nonzero delta_area")


def perturb_deterministic():
    with tempfile.TemporaryDirectory() as d:
        out = [pathlib.Path(d) / f"run{i}.csv" for i in range(2)]
        for o in out:
            expect(run("perturb", "--trials", "40", "--seed", "7", "--output", str(o)).returncode == 0,
                   "perturb failed")
        expect(out[0].read_bytes() == out[1].read_bytes(), "reruns differ")
        expect(not any(p.suffix == ".tmp" for p in pathlib.Path(d).iterdir()), "temporary file left")


def conjugate():
    p = run("conjugate", "--a", "0.8", "--b", "0.7", "--form", "min")
    expect(p.returncode == 0, f"exit {p.returncode}")
    doc = json.loads(p.stdout)
    expect(doc["zero_crossing"] is False, "zero crossing")
    expect(len(doc["c_values"]) == len(doc["D_values"]) == 511, "series length")


def check_metric():
    p = run("check-metric", "--b", "0.5")
    expect(p.returncode == 0, f"exit {p.returncode}")
    doc = json.loads(p.stdout)
    validate(doc, "check_metric.schema.json")
    expect(doc["norm_deviation"] <= 1e-12, "norm deviation")
    expect(doc["yasuda_shimada"]["residual_max"] > 0.1, "residual")

    p = run("check-metric", "--b", "0")
    expect(p.returncode == 0, f"exit {p.returncode}")
    doc = json.loads(p.stdout)
    validate(doc, "check_metric.schema.json")
    expect(doc["yasuda_shimada"]["status"] == "skipped (Riemannian case)", "skip note")


def deficit_sweep():
    p = run("deficit-sweep", "--b", "0.3")
    expect(p.returncode == 0, f"exit {p.returncode}")
    comments, rows = split_csv(p.stdout)
    expect(comments and comments[0].startswith("# config:"), "config echo")
    expect(len(rows) == 9 and len(rows[0]) == 7, "shape")
    for r in rows:
        a = float(r["a"])
        expect(abs(float(r["deficit"])) <= 1e-8, "deficit")
        closed = 4 * math.pi * a / (1 - a * a)
        expect(abs(float(r["length"]) - closed) <= 1e-10 * closed, "length column")


CHECKS = {f.__name__: f for f in (certificate, certificate_lambda, bad_b, usage_errors, perturb,
                                  perturb_zero, perturb_deterministic, conjugate, check_metric,
                                  deficit_sweep)}

if __name__ == "__main__":
    CHECKS[CHECK]()
    print("ok:", CHECK)
