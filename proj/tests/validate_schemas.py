"""Runs each JSON-emitting command and validates its output against the
schema shipped in schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])


def schema(name):
    return json.loads((schema_dir / f"{name}.schema.json").read_text())


def run(*args, ok=(0,)):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode not in ok:
        sys.exit(f"{args}: exit {proc.returncode}\n{proc.stderr}")
    return proc.stdout


failures = 0


def check(name, document):
    global failures
    try:
        jsonschema.validate(document, schema(name))
        print(f"ok   {name}")
    except jsonschema.ValidationError as e:
        failures += 1
        print(f"FAIL {name}: {e.message} at {list(e.absolute_path)}")


with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    for d in ("3", "19", "100"):
        check("thresholds", json.loads(run("thresholds", "--d", d)))
    table = tmp / "t.csv"
    table.write_text("d,alpha\n40,0.09\n")
    check("thresholds", json.loads(run("thresholds", "--d", "40", "--alpha-table", str(table))))

    report = tmp / "sweep.json"
    run("certify", "--d-min", "18", "--d-max", "19", "--out", str(report))
    check("certify", json.loads(report.read_text()))
    run("certify", "--d-min", "90", "--d-max", "100", "--out", str(report))
    check("certify", json.loads(report.read_text()))
    run("certify", "--d-min", "30", "--d-max", "29", "--out", str(report))
    check("certify", json.loads(report.read_text()))

    graph = tmp / "g.txt"
    check("sample", json.loads(run("sample", "--n", "120", "--d", "6", "--simple", "--max-retries",
                                   "1000000", "--seed", "3", "--out", str(graph))))
    check("sample", json.loads(run("sample", "--n", "50", "--d", "4", "--out", str(tmp / "multi.txt"))))
    check("decompose", json.loads(run("decompose", "--graph", str(graph), "--k", "4",
                                      "--out", str(tmp / "s.txt"))))
    petersen = tmp / "p.txt"
    petersen.write_text("10 3\n" + "".join(
        f"{i} {(i + 1) % 5}\n{i} {i + 5}\n{5 + i} {5 + (i + 2) % 5}\n" for i in range(5)))
    check("decompose", json.loads(run("decompose", "--graph", str(petersen), "--k", "3", ok=(1,))))

sys.exit(1 if failures else 0)
