"""Write the named fixtures as JSON files under instances/ (CLI examples)."""

import json
from pathlib import Path

from stablerot.fixtures import DOCS, SMODEL_DOCS

OUT = Path(__file__).resolve().parents[1] / "instances"


def main():
    OUT.mkdir(exist_ok=True)
    for name, doc in DOCS.items():
        (OUT / f"inst_{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
    for name, doc in SMODEL_DOCS.items():
        (OUT / f"smodel_{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
    (OUT / "costs_A.json").write_text(json.dumps(
        [{"edge": ["w1", "f2"], "cost": "5"}, {"edge": ["w2", "f1"], "cost": "-10"}], indent=1) + "\n")
    print("fixtures written to", OUT)


if __name__ == "__main__":
    main()
