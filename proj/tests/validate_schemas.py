"""Validate CLI JSON output against the published schemas.

usage: validate_schemas.py ENTROPY_BINARY SCHEMA_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def run(binary, *args):
    done = subprocess.run([binary, *args], capture_output=True, text=True)
    if done.returncode != 0:
        sys.exit(f"{' '.join(args)} exited {done.returncode}: {done.stderr}")
    return done.stdout


def main():
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    witness = json.loads((schema_dir / "witness.schema.json").read_text())
    certificate = json.loads((schema_dir / "certificate.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(witness)
    jsonschema.Draft202012Validator.check_schema(certificate)

    builds = [
        ["net", "--self", "--n", "2", "--p", "inf", "--k", "3"],
        ["net", "--cube", "--n", "2", "--p", "1", "--cells", "3"],
        ["net", "--sparse", "--n", "6", "--m", "1", "--p", "1", "--samples", "2000"],
        ["net", "--interp", "--n", "2", "--p", "1", "--q", "2", "--k1", "3", "--k2", "3", "--samples", "2000"],
        ["packing", "--code", "--n", "8", "--m", "2", "--p", "1", "--q", "inf"],
        ["packing", "--canonical", "--n", "4", "--p", "0.5", "--q", "2"],
        ["packing", "--greedy", "--n", "2", "--p", "1", "--q", "2", "--tau", "0.5"],
        ["packing", "--greedy", "--random", "--n", "3", "--p", "2", "--q", "inf", "--tau", "0.5",
         "--samples", "1000"],
    ]
    checked = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, args in enumerate(builds):
            path = pathlib.Path(tmp) / f"w{i}.json"
            run(binary, *args, "--out", str(path))
            jsonschema.validate(json.loads(path.read_text()), witness)
            checked += 1

    certificates = [
        ["--k", "4", "--n", "1", "--p", "1", "--q", "inf"],
        ["--k", "1", "--n", "8", "--p", "1", "--q", "2"],
        ["--k", "9", "--n", "4", "--p", "2", "--q", "1/2"],
        ["--k", "6", "--n", "2", "--p", "1", "--q", "inf", "--effort", "constructive", "--samples", "2000"],
        ["--k", "20", "--n", "16", "--p", "1", "--q", "2", "--effort", "constructive", "--samples", "2000"],
    ]
    for args in certificates:
        jsonschema.validate(json.loads(run(binary, "bounds", *args, "--json")), certificate)
        checked += 1

    bad = json.loads(run(binary, "bounds", "--k", "2", "--n", "2", "--p", "1", "--q", "2", "--json"))
    bad["q"] = "infinity"
    try:
        jsonschema.validate(bad, certificate)
    except jsonschema.ValidationError:
        pass
    else:
        sys.exit("schema accepted an invalid exponent")
    print(f"{checked} documents valid")


if __name__ == "__main__":
    main()
