"""Validates golden JSON inputs and outputs against docs/schemas."""

import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource

root = pathlib.Path(sys.argv[1])
schemas = {p.name: json.loads(p.read_text()) for p in (root / "docs" / "schemas").glob("*.schema.json")}
registry = Registry().with_resources(
    (name, Resource.from_contents(schema)) for name, schema in schemas.items()
)
golden = root / "tests" / "golden"

checks = [
    ("ring_input.schema.json", sorted((golden / "inputs").glob("*.json"))),
    ("sweep_spec.schema.json", sorted((golden / "specs").glob("*.json"))),
    ("analysis_report.schema.json", sorted((golden / "cases").glob("analyze_*json.out"))),
    ("semigroup_report.schema.json", sorted((golden / "cases").glob("semigroup_json.out"))),
    ("sweep_report.schema.json", sorted((golden / "cases").glob("sweep_*json.out"))),
]

failures = 0
count = 0
for name, files in checks:
    validator = jsonschema.Draft202012Validator(schemas[name], registry=registry)
    if not files:
        print(f"no documents for {name}")
        failures += 1
    for path in files:
        count += 1
        for error in validator.iter_errors(json.loads(path.read_text())):
            failures += 1
            print(f"{path.name}: {'/'.join(map(str, error.absolute_path))}: {error.message}")

print(f"{count} documents checked, {failures} problems")
sys.exit(1 if failures else 0)
