import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

exe, docs, data = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])

schemas = {p.name: json.loads(p.read_text()) for p in docs.glob("*.schema.json")}
registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())


def check(name, doc):
    schema = schemas[name]
    jsonschema.Draft202012Validator.check_schema(schema)
    jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)


def run(*args, rc=0):
    p = subprocess.run([exe, *args], capture_output=True, text=True)
    if p.returncode != rc:
        sys.exit(f"{args}: exit {p.returncode}, wanted {rc}\n{p.stderr}")
    return p.stdout


failures = 0
cases = [
    ("corkscrew.schema.json", ["corkscrew", "1..20", "--json"], 0),
    ("intersect.schema.json", ["intersect", "abAB"], 0),
    ("intersect.schema.json", ["intersect", "aab", "--surface", "pants:0.5,0.3,0.8", "--method", "numeric"], 0),
    ("intersect.schema.json", ["--numeric", "exact", "intersect", "abbaB"], 0),
    ("decompose.schema.json", ["decompose", "ab^3"], 0),
    ("decompose.schema.json", ["decompose", "abAB", "--surface", "pants:0.2,0.2,0.2"], 0),
    ("bound.schema.json", ["bound", "--L", "14"], 0),
    ("certify.schema.json", ["certify", str(data / "claims.txt")], 0),
    ("certify.schema.json", ["certify", str(data / "mutants.txt"), "--no-timing"], 1),
    ("certify.schema.json", ["certify", str(data / "findings.txt")], 1),
    ("certify.schema.json", ["certify", str(data / "claims.txt"), "--max-leaves", "1", "--max-depth", "1"], 1),
    ("ledger.schema.json", ["ledger-list", str(data / "claims.txt"), "--json"], 0),
    ("search.schema.json", ["search", "--Lmax", "6.9"], 0),
]
for name, args, rc in cases:
    try:
        check(name, json.loads(run(*args, rc=rc)))
        print("ok  ", name, " ".join(args))
    except jsonschema.ValidationError as e:
        failures += 1
        print("FAIL", name, " ".join(args), e.message)

with tempfile.TemporaryDirectory() as tmp:
    jsonl = Path(tmp) / "r.jsonl"
    run("search", "--Lmax", "6.9", "--jsonl", str(jsonl))
    lines = jsonl.read_text().splitlines()
    try:
        for line in lines:
            check("record.schema.json", json.loads(line))
        print("ok   record.schema.json", len(lines), "records")
    except jsonschema.ValidationError as e:
        failures += 1
        print("FAIL record.schema.json", e.message)

sys.exit(1 if failures else 0)
