"""Drive the command line interface end to end.

Builds an algebra to a JSON file, runs the property checks with
expectations, prints the module decomposition, and finishes with the
classification table.  Every command here is also available as
`lieforge <verb> ...` once the package is installed.
"""

import tempfile
from pathlib import Path

from lieforge import cli


def run(*argv):
    print(f"$ lieforge {' '.join(argv)}")
    code = cli.main(list(argv))
    print(f"(exit {code})\n")
    return code


def main():
    work = Path(tempfile.mkdtemp())
    out = work / "extension.json"
    expect = work / "expect.json"
    expect.write_text('{"center": 1, "perfect": true}')
    run("build", "gn", "--n", "5", "--a", "1", "--b", "1", "--out", str(out))
    run(
        "check",
        str(out),
        "--jacobi",
        "--center",
        "--perfect",
        "--expect",
        str(expect),
    )
    run("cohomology", str(out), "--degree", "2", "--method", "invariant")
    run("decompose", str(out))
    run("report-table1")


if __name__ == "__main__":
    main()
