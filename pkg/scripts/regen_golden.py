"""Rewrite tests/golden/*.json from the current implementation (timing stripped).

Run only after checking the diff by hand: these files pin CLI output.
"""

from pathlib import Path

from ghzq.cli import build_parser, config_from_args, execute

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"

CASES = {
    "check_N4_D6": ["check", "--parties", "4", "--dim", "6"],
    "certify_N4_D3": ["certify", "--parties", "4", "--dim", "3"],
    "sweep_N3-5_D2-6": ["sweep", "--parties", "3..5", "--dim", "2..6"],
}


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        doc, code = execute(config_from_args(build_parser().parse_args(argv)))
        (GOLDEN / f"{name}.json").write_text(doc.to_json(include_timing=False), encoding="utf-8")
        print(f"{name}: exit {code}")


if __name__ == "__main__":
    main()
