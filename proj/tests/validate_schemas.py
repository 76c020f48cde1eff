"""Runs the CLI and validates its JSON outputs against docs/schemas."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

tool, schema_dir, data_dir = (pathlib.Path(a) for a in sys.argv[1:4])

resources = []
for path in schema_dir.glob("*.schema.json"):
    resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
registry = Registry().with_resources(resources)


def check(name, instance):
    schema = json.loads((schema_dir / name).read_text())
    jsonschema.Draft202012Validator(schema, registry=registry).validate(instance)


def run(*args, expect=0):
    proc = subprocess.run([str(tool), *args], capture_output=True, text=True)
    if proc.returncode != expect:
        sys.exit(f"{' '.join(args)}: exit {proc.returncode}\n{proc.stderr}")
    return proc


failures = 0
with tempfile.TemporaryDirectory() as tmp:
    cert = pathlib.Path(tmp) / "cert.json"
    cases = [
        ("homology", lambda: json.loads(run("homology", "--construct", "orthant", "--n", "2").stdout)["homology"]),
        ("complex", lambda: json.loads(run("construct", "--construct", "ordinary-koszul", "--eps", "1,pi").stdout)["complex"]),
        ("provenance", lambda: json.loads(run("tor", "--n", "2").stdout)["provenance"]),
        ("presolve", lambda: json.loads(run("presolve", "--fixture", "R/I'", "--n", "2", "--depth", "4").stdout)),
        ("certificate", lambda: (run("ext-cert", "--n", "2", "--kmax", "4", "-o", str(cert)), json.loads(cert.read_text()))[1]),
        ("error", lambda: json.loads(run("tor", "--eps", "0", expect=2).stderr)),
        ("group", lambda: json.loads((data_dir / "groups" / "dense.json").read_text())),
        ("job", lambda: json.loads((data_dir / "jobs" / "open_koszul_2.json").read_text())),
    ]
    for name, produce in cases:
        try:
            check(f"{name}.schema.json", produce())
            print(f"ok    {name}")
        except jsonschema.ValidationError as e:
            failures += 1
            print(f"FAIL  {name}: {e.message}")
    box = json.loads(run("construct", "--construct", "open-koszul", "--n", "1").stdout)["complex"]["boxes"][0]
    check("box.schema.json", box)
    print("ok    box")

sys.exit(1 if failures else 0)
