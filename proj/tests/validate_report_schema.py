# Copyright 2026 The mvgini Authors
# SPDX-License-Identifier: Apache-2.0
"""Runs `mvgini report --format json` on a small grouped panel and validates
the output against docs/report-schema.json."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    rows = [
        "name,country,cap,staff,sales",
        "a,DE,10,3,7", "b,DE,40,9,12", "c,DE,25,4,30", "d,DE,5,8,2",
        "e,FR,7,7,7", "f,FR,9,7,1", "g,FR,3,7,4",
        "h,IT,12,5,6",
        "i,US,100,50,80", "j,US,300,20,90", "k,US,50,80,10", "l,US,30,35,,",
    ]
    with tempfile.TemporaryDirectory() as tmp:
        csv = pathlib.Path(tmp) / "panel.csv"
        csv.write_text("\n".join(rows) + "\n")
        for p in ("1", "2", "inf"):
            out = subprocess.run(
                [binary, "report", "--input", str(csv), "--columns", "cap,staff,sales",
                 "--group", "country", "--name", "name", "--format", "json", "--p", p],
                check=True, capture_output=True, text=True).stdout
            doc = json.loads(out)
            jsonschema.validate(doc, schema)
            groups = [r["group"] for r in doc["rows"]]
            assert groups == ["DE", "FR", "US", "All"], groups
            assert doc["excluded_groups"] == [{"group": "IT", "n": 1}]
            assert doc["dropped_rows"] == 1
            fr = doc["rows"][1]
            assert fr["G"] is None and "variance" in fr["note"], fr
    return 0


if __name__ == "__main__":
    sys.exit(main())
