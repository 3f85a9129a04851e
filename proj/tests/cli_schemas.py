#!/usr/bin/env python3
"""Runs the twistlab CLI, checks exit codes and validates JSON output against schemas/.

usage: cli_schemas.py <twistlab binary> <schema dir>
"""
import json
import os
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

BINARY = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])

resources = []
for path in SCHEMAS.glob("*.schema.json"):
    doc = json.loads(path.read_text())
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)

failures = []


def run(args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True, env=full_env, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


def check(name, condition, detail=""):
    print(("ok   " if condition else "FAIL ") + name + (f": {detail}" if detail and not condition else ""))
    if not condition:
        failures.append(name)


def validated(name, schema, args, expect_code=0, env=None):
    code, out, err = run(args, env)
    check(f"{name} exit {expect_code}", code == expect_code, f"got {code}, stderr {err.strip()}")
    if code != 0:
        return None
    doc = json.loads(out)
    validator = jsonschema.Draft202012Validator(
        json.loads((SCHEMAS / f"{schema}.schema.json").read_text()), registry=registry)
    errors = list(validator.iter_errors(doc))
    check(f"{name} schema", not errors, "; ".join(e.message for e in errors[:3]))
    return doc


def exit_code(name, args, expect_code):
    code, _, err = run(args)
    check(f"{name} exit {expect_code}", code == expect_code, f"got {code}, stderr {err.strip()}")


# analyze
doc = validated("analyze x^4+1", "analyze", ["analyze", "--f", "x^4+1"])
if doc:
    check("analyze x^4+1 values", doc["genus"] == 1 and doc["disc"] == "256" and doc["bad_odd_primes"] == [])
doc = validated("analyze x^4+x+1", "analyze", ["analyze", "--f", "1,1,0,0,1"])
if doc:
    check("analyze x^4+x+1 values", doc["disc"] == "229" and doc["irreducible"] == "CERTIFIED"
          and doc["bad_odd_primes"] == ["229"])
exit_code("analyze singular", ["analyze", "--f", "x^4+2x^2+1"], 2)
exit_code("analyze non-integer", ["analyze", "--f", "1.5x^2+1"], 2)
exit_code("analyze genus 0", ["analyze", "--f", "x^2+1"], 2)
exit_code("no subcommand", [], 2)

# fiber
doc = validated("fiber x^4+1 p=3 d=3", "fiber", ["fiber", "--f", "x^4+1", "--p", "3", "--d", "3"])
if doc:
    check("fiber I0* without rational smooth locus",
          doc["type"] == "I0*" and doc["rational_smooth_locus"] is False and doc["arithmetic_genus"] == 1)
doc = validated("fiber x^4+1 p=5 d=1", "fiber", ["fiber", "--f", "x^4+1", "--p", "5"])
if doc:
    check("fiber good", doc["type"] == "good")
doc = validated("fiber genus 2", "fiber", ["fiber", "--f", "x^6+x+1", "--p", "5", "--d", "5"])
if doc:
    check("fiber genus 2 label", doc["type"] == "[I*_{0-0-0}]" and len(doc["fiber"]["components"]) == 7)
exit_code("fiber bad prime", ["fiber", "--f", "x^4+x+1", "--p", "229", "--d", "229"], 3)
exit_code("fiber p=2", ["fiber", "--f", "x^4+1", "--p", "2"], 3)
code, out, _ = run(["fiber", "--f", "x^4+1", "--p", "3", "--d", "3", "--format", "dot"])
check("fiber dot", code == 0 and out.startswith("graph") and out.count("--") == 4)

# solubility
doc = validated("solubility 3y^2=x^4+1 p=3", "solubility",
                ["solubility", "--f", "x^4+1", "--d", "3", "--p", "3"])
if doc:
    check("solubility insoluble", doc["status"] == "INSOLUBLE" and doc["witness"] is None)
doc = validated("solubility asserted", "solubility",
                ["solubility", "--f", "x^4+1", "--d", "3", "--p", "3", "--assume-irreducible"])
if doc:
    check("solubility prediction", doc["prediction"] == "PREDICTED_INSOLUBLE")
doc = validated("solubility 5y^2=x^4-1 p=5", "solubility",
                ["solubility", "--f", "x^4-1", "--d", "5", "--p", "5"])
if doc:
    check("solubility witness (1,0)", doc["status"] == "SOLUBLE" and doc["witness"]["base"] == "1"
          and doc["witness"]["kind"] == "hensel_root" and doc["witness_verified"] is True)
exit_code("solubility p=2", ["solubility", "--f", "x^4+1", "--p", "2"], 3)
exit_code("solubility depth 0", ["solubility", "--f", "x^4+1", "--p", "3", "--max-depth", "0"], 3)
exit_code("solubility d=0", ["solubility", "--f", "x^4+1", "--p", "3", "--d", "0"], 2)

# sieve
doc = validated("sieve x^4+1 N=1e5", "sieve", ["sieve", "--f", "x^4+1", "--bound", "100000"])
if doc:
    check("sieve density", abs(doc["density_estimate"] - 0.75) < 0.02)
one = run(["sieve", "--f", "x^4+x+1", "--bound", "20000"], {"TWISTLAB_THREADS": "1"})
many = run(["sieve", "--f", "x^4+x+1", "--bound", "20000"], {"TWISTLAB_THREADS": "4"})
check("sieve deterministic across worker caps", one == many)
code, out, _ = run(["sieve", "--f", "x^2+1", "--bound", "30", "--format", "csv"])
check("sieve csv", code == 0 and out.splitlines()[0] == "p,shape,in_S_f" and "3,2,1" in out.splitlines())
exit_code("sieve bound 2", ["sieve", "--f", "x^4+1", "--bound", "2"], 3)

# search-twists
doc = validated("search-twists x^4+1 N=200", "search_twists",
                ["search-twists", "--f", "x^4+1", "--bound", "200", "--assume-irreducible"])
if doc:
    primes = [int(e["p"]) for e in doc["entries"]]
    check("search-twists agreement", doc["falsifications"] == 0 and doc["confirmed"] == len(primes)
          and all(p % 8 != 1 for p in primes) and 17 not in primes and 3 in primes)
doc = validated("search-twists x^4-1", "search_twists", ["search-twists", "--f", "x^4-1", "--bound", "200"])
if doc:
    check("search-twists x^4-1 empty", doc["entries"] == [])
exit_code("search-twists odd degree", ["search-twists", "--f", "x^3+1", "--bound", "100"], 3)

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
