"""Validates every golden report against the published report schema."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
schema = json.loads((root / "docs" / "report.schema.json").read_text())
validator = jsonschema.Draft202012Validator(schema)
files = sorted((root / "tests" / "golden").glob("*.json"))
if not files:
    sys.exit("no golden reports found")
bad = 0
for f in files:
    errors = list(validator.iter_errors(json.loads(f.read_text())))
    for e in errors:
        print(f"{f.name}: {'/'.join(map(str, e.path))}: {e.message}")
    bad += bool(errors)
print(f"{len(files) - bad}/{len(files)} reports valid")
sys.exit(1 if bad else 0)
